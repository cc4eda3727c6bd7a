use std::sync::Arc;

use crate::bar::comma::{comma_category_labeled, CommaCategory};
use crate::bar::diagram::{Diagram, TabulatedValues, Weight};
use crate::error::{invalid, Result};
use crate::poset::ex::{enumerate_functors, functor_degeneracy, functor_face, functor_label, last_vertex_functor};
use crate::poset::sd::SdTower;
use crate::poset::{nerve_tabulated, CategoryFunctor, CategoryNerve, FiniteCategory};
use crate::simplicial::bisimplicial::Diagonal;
use crate::simplicial::{BisimplicialModel, DegeneracyWord, GenId, SimplexRef, SimplicialMap, SimplicialModel, SimplicialSet, Tabulated};

/// A cell of `B_{m,k}(F, I, E)`: an `m`-string of `I` (or `[object]`), a `k`-simplex of `E` at
/// its source and a `k`-simplex of `F` at its target, both as tabulated ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarKey {
    pub string: Box<[u32]>,
    pub e: u32,
    pub f: u32,
}

/// One bar cell in readable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCell {
    /// `i_0, …, i_n`.
    pub objects: Vec<usize>,
    /// `u_1, …, u_n` with `u_j: i_{j-1} → i_j`.
    pub morphisms: Vec<usize>,
    /// A simplex of `E(i_0)`.
    pub e: SimplexRef,
    /// A simplex of `F(i_n)`.
    pub f: SimplexRef,
}

fn show_ref(tab: &Tabulated<SimplexRef>, k: usize, id: u32) -> String {
    let r = tab.assembled.cell(k, id as usize);
    if r.word.is_empty() {
        tab.set.label(r.gen).to_string()
    } else {
        format!("{}·{}", r.word, tab.set.label(r.gen))
    }
}

/// The bisimplicial set `(m, k) ↦ B_m(F_k, I, E_k)`; horizontal is the bar direction.
pub struct BarModel {
    shape: Arc<FiniteCategory>,
    pub(crate) e: TabulatedValues,
    pub(crate) f: TabulatedValues,
    strings: Vec<Vec<Box<[u32]>>>,
    e_point: bool,
    f_point: bool,
}

impl BarModel {
    pub fn new(weight: &Weight, diagram: &Diagram, trunc: usize) -> Result<Self> {
        if weight.shape() != diagram.shape() {
            return Err(invalid("weight and diagram live on different shapes"));
        }
        let shape = diagram.shape().clone();
        let nerve = CategoryNerve(&shape);
        let strings = (0..=trunc).map(|m| nerve.cells(m)).collect::<Result<Vec<_>>>()?;
        let e_point = diagram.values().iter().all(|x| x.as_ref() == &SimplicialSet::point());
        let f_point = weight.values().iter().all(|x| x.as_ref() == &SimplicialSet::point());
        Ok(BarModel {
            e: diagram.tabulate(trunc),
            f: weight.tabulate(trunc),
            shape,
            strings,
            e_point,
            f_point,
        })
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        &self.shape
    }

    fn ends(&self, m: usize, string: &[u32]) -> (usize, usize) {
        if m == 0 {
            (string[0] as usize, string[0] as usize)
        } else {
            (self.shape.morphism(string[0] as usize).source, self.shape.morphism(string[m - 1] as usize).target)
        }
    }

    /// Level `k` of the values as set functors and `I_{E_k⫽F_k}` with readable object names.
    fn comma(&self, k: usize) -> Result<CommaCategory> {
        comma_category_labeled(
            &self.shape,
            &self.e.level(k),
            &self.f.level(k),
            |i, y| show_ref(&self.e.tabs[i], k, y as u32),
            |i, x| show_ref(&self.f.tabs[i], k, x as u32),
        )
    }

    /// The string of `I_{E_k⫽F_k}` corresponding to a bar cell.
    fn comma_string(&self, comma: &CommaCategory, m: usize, k: usize, cell: &BarKey) -> Box<[u32]> {
        let s = &cell.string;
        if m == 0 {
            let o = comma.object_of(s[0] as usize, cell.e as usize, cell.f as usize).expect("object exists");
            return vec![o as u32].into_boxed_slice();
        }
        // f_j pulled back from the target
        let mut fs = vec![cell.f; m + 1];
        for j in (0..m).rev() {
            fs[j] = self.f.maps[s[j] as usize].images[k][fs[j + 1] as usize];
        }
        let mut e = cell.e;
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let u = s[j] as usize;
            let mu = self.shape.morphism(u);
            let src = comma.object_of(mu.source, e as usize, fs[j] as usize).expect("object exists");
            e = self.e.maps[u].images[k][e as usize];
            let tgt = comma.object_of(mu.target, e as usize, fs[j + 1] as usize).expect("object exists");
            out.push(comma.morphism_over(u, src, tgt).expect("morphism exists") as u32);
        }
        out.into_boxed_slice()
    }

    fn longest_string(&self) -> Option<usize> {
        self.shape.max_nondegenerate_length()
    }
}

impl BisimplicialModel for BarModel {
    type Cell = BarKey;

    fn cells(&self, m: usize, k: usize) -> Result<Vec<BarKey>> {
        let mut out = Vec::new();
        for s in &self.strings[m] {
            let (a, b) = self.ends(m, s);
            for e in 0..self.e.tabs[a].table().count(k) as u32 {
                for f in 0..self.f.tabs[b].table().count(k) as u32 {
                    out.push(BarKey { string: s.clone(), e, f });
                }
            }
        }
        Ok(out)
    }

    fn h_face(&self, m: usize, k: usize, cell: &BarKey, i: usize) -> BarKey {
        let (mut e, mut f) = (cell.e, cell.f);
        if i == 0 {
            e = self.e.maps[cell.string[0] as usize].images[k][e as usize];
        }
        if i == m {
            f = self.f.maps[cell.string[m - 1] as usize].images[k][f as usize];
        }
        BarKey { string: CategoryNerve(&self.shape).face(m, &cell.string, i), e, f }
    }

    fn v_face(&self, m: usize, k: usize, cell: &BarKey, i: usize) -> BarKey {
        let (a, b) = self.ends(m, &cell.string);
        BarKey {
            string: cell.string.clone(),
            e: self.e.tabs[a].table().face(k, cell.e as usize, i) as u32,
            f: self.f.tabs[b].table().face(k, cell.f as usize, i) as u32,
        }
    }

    fn h_degeneracy(&self, m: usize, _k: usize, cell: &BarKey, i: usize) -> BarKey {
        BarKey { string: CategoryNerve(&self.shape).degeneracy(m, &cell.string, i), e: cell.e, f: cell.f }
    }

    fn v_degeneracy(&self, m: usize, k: usize, cell: &BarKey, i: usize) -> BarKey {
        let (a, b) = self.ends(m, &cell.string);
        BarKey {
            string: cell.string.clone(),
            e: self.e.tabs[a].table().degeneracy(k, cell.e as usize, i) as u32,
            f: self.f.tabs[b].table().degeneracy(k, cell.f as usize, i) as u32,
        }
    }

    fn label(&self, m: usize, k: usize, cell: &BarKey) -> String {
        let (a, b) = self.ends(m, &cell.string);
        let mut parts = Vec::with_capacity(3);
        if !self.e_point {
            parts.push(show_ref(&self.e.tabs[a], k, cell.e));
        }
        parts.push(CategoryNerve(&self.shape).label(m, &cell.string));
        if !self.f_point {
            parts.push(show_ref(&self.f.tabs[b], k, cell.f));
        }
        parts.join("⊗")
    }

    fn truncated_at(&self, trunc: usize) -> bool {
        let (pe, te) = self.e.top_dim();
        let (pf, tf) = self.f.top_dim();
        te || tf || self.longest_string().map_or(true, |l| l + pe + pf > trunc)
    }
}

/// `(m, k) ↦ (Ex N(I_{E_k⫽F_k}))_m`, cells are functors `s_<[m] → I_{E_k⫽F_k}`.
pub struct BarExModel {
    base: BarModel,
    commas: Vec<CommaCategory>,
    /// `v_faces[k][i]: I_{E_k⫽F_k} → I_{E_{k-1}⫽F_{k-1}}`.
    v_faces: Vec<Vec<CategoryFunctor>>,
    v_degens: Vec<Vec<CategoryFunctor>>,
    tower: SdTower,
    thin: bool,
    cap: usize,
}

impl BarExModel {
    pub fn new(weight: &Weight, diagram: &Diagram, trunc: usize, cap: usize) -> Result<Self> {
        let base = BarModel::new(weight, diagram, trunc)?;
        let commas = (0..=trunc).map(|k| base.comma(k)).collect::<Result<Vec<_>>>()?;
        let objects = base.shape.object_count();
        let table = |vals: &TabulatedValues, op: &dyn Fn(&crate::simplicial::TabularSimplicialSet, usize) -> usize, k: usize| {
            (0..objects)
                .map(|i| (0..vals.tabs[i].table().count(k)).map(|x| op(vals.tabs[i].table(), x) as u32).collect())
                .collect::<Vec<Vec<u32>>>()
        };
        let mut v_faces = vec![Vec::new()];
        let mut v_degens = Vec::new();
        for k in 0..=trunc {
            if k > 0 {
                let faces = (0..=k)
                    .map(|i| {
                        let op = move |t: &crate::simplicial::TabularSimplicialSet, x| t.face(k, x, i);
                        commas[k].induced(&commas[k - 1], &table(&base.e, &op, k), &table(&base.f, &op, k))
                    })
                    .collect::<Result<Vec<_>>>()?;
                v_faces.push(faces);
            }
            if k < trunc {
                let degens = (0..=k)
                    .map(|i| {
                        let op = move |t: &crate::simplicial::TabularSimplicialSet, x| t.degeneracy(k, x, i);
                        commas[k].induced(&commas[k + 1], &table(&base.e, &op, k), &table(&base.f, &op, k))
                    })
                    .collect::<Result<Vec<_>>>()?;
                v_degens.push(degens);
            }
        }
        let thin = base.shape.is_thin();
        Ok(BarExModel { base, commas, v_faces, v_degens, tower: SdTower::new(trunc), thin, cap })
    }

    /// `I_{E_k⫽F_k}`.
    pub fn comma(&self, k: usize) -> &CommaCategory {
        &self.commas[k]
    }

    pub fn base(&self) -> &BarModel {
        &self.base
    }

    pub(crate) fn tower(&self) -> &SdTower {
        &self.tower
    }

    fn apply(&self, m: usize, functor: &CategoryFunctor, cell: &[u32]) -> Box<[u32]> {
        let e_count = self.tower.levels[m].len();
        cell.iter()
            .enumerate()
            .map(|(p, &x)| if p < e_count { functor.object(x as usize) as u32 } else { functor.morphism(x as usize) as u32 })
            .collect()
    }

    /// The object of `I_{E_k⫽F_k}` over `i` whose values are the totally degenerate
    /// `k`-simplices on vertex `y` of `E(i)` and vertex `x` of `F(i)`.
    pub fn vertex_object(&self, k: usize, i: usize, y: usize, x: usize) -> Option<usize> {
        let word = DegeneracyWord::normalize(&vec![0; k]);
        let at = |vals: &TabulatedValues, v: usize| {
            vals.tabs[i].assembled.id(k, &SimplexRef::new(word.clone(), GenId { dim: 0, index: v }))
        };
        self.commas[k].object_of(i, at(&self.base.e, y)?, at(&self.base.f, x)?)
    }

    /// `(i, y, x)` with `y`, `x` the vertices under the values of an object of `I_{E_k⫽F_k}`.
    pub fn object_vertices(&self, k: usize, o: usize) -> (usize, usize, usize) {
        let (i, y, x) = self.commas[k].objects[o];
        let vertex = |vals: &TabulatedValues, id: u32| vals.tabs[i as usize].assembled.cell(k, id as usize).gen.index;
        (i as usize, vertex(&self.base.e, y), vertex(&self.base.f, x))
    }

    /// The last-vertex functor of a bar cell, as a cell of level `(n, n)`.
    pub fn last_vertex_cell(&self, n: usize, cell: &BarKey) -> Box<[u32]> {
        let comma = &self.commas[n];
        let string = self.base.comma_string(comma, n, n, cell);
        last_vertex_functor(&comma.category, &self.tower, self.thin, n, &string)
    }
}

impl BisimplicialModel for BarExModel {
    type Cell = Box<[u32]>;

    fn cells(&self, m: usize, k: usize) -> Result<Vec<Box<[u32]>>> {
        enumerate_functors(
            &self.commas[k].category,
            self.thin,
            &self.tower.levels[m],
            self.cap,
            &format!("B_Ex level ({m},{k})"),
        )
    }

    fn h_face(&self, m: usize, _k: usize, cell: &Box<[u32]>, i: usize) -> Box<[u32]> {
        functor_face(&self.tower, self.thin, m, cell, i)
    }

    fn v_face(&self, m: usize, k: usize, cell: &Box<[u32]>, i: usize) -> Box<[u32]> {
        self.apply(m, &self.v_faces[k][i], cell)
    }

    fn h_degeneracy(&self, m: usize, k: usize, cell: &Box<[u32]>, i: usize) -> Box<[u32]> {
        functor_degeneracy(&self.commas[k].category, &self.tower, self.thin, m, cell, i)
    }

    fn v_degeneracy(&self, m: usize, k: usize, cell: &Box<[u32]>, i: usize) -> Box<[u32]> {
        self.apply(m, &self.v_degens[k][i], cell)
    }

    fn label(&self, m: usize, k: usize, cell: &Box<[u32]>) -> String {
        functor_label(&self.commas[k].category, &self.tower, self.thin, m, cell)
    }

    fn truncated_at(&self, trunc: usize) -> bool {
        let nontrivial = (0..self.base.shape.morphism_count()).any(|u| !self.base.shape.is_identity(u));
        nontrivial || self.base.truncated_at(trunc)
    }
}

/// `B(F, I, E)` tabulated through `trunc`.
pub struct Bar {
    pub model: BarModel,
    pub tab: Tabulated<BarKey>,
}

impl Bar {
    pub fn new(weight: &Weight, diagram: &Diagram, trunc: usize) -> Result<Self> {
        let model = BarModel::new(weight, diagram, trunc)?;
        let tab = Tabulated::build(&Diagonal(&model), trunc)?;
        Ok(Bar { model, tab })
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.tab.set
    }
}

/// `B_Ex(F, I, E)` tabulated through `trunc`.
pub struct BarEx {
    pub model: BarExModel,
    pub tab: Tabulated<Box<[u32]>>,
}

impl BarEx {
    pub fn new(weight: &Weight, diagram: &Diagram, trunc: usize, cap: usize) -> Result<Self> {
        let model = BarExModel::new(weight, diagram, trunc, cap)?;
        let tab = Tabulated::build(&Diagonal(&model), trunc)?;
        Ok(BarEx { model, tab })
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.tab.set
    }

    /// `b: B(F, I, E) → B_Ex(F, I, E)`, the last-vertex map levelwise.
    pub fn comparison_from(&self, bar: &Bar) -> Result<SimplicialMap> {
        bar.tab.map_to(&self.tab, |n, cell| self.model.last_vertex_cell(n, cell))
    }
}

/// The two-sided bar construction, as the diagonal of `(m, k) ↦ B_m(F_k, I, E_k)`.
pub fn bar(weight: &Weight, diagram: &Diagram, trunc: usize) -> Result<SimplicialSet> {
    Ok(Bar::new(weight, diagram, trunc)?.tab.set.as_ref().clone())
}

/// The `Ex`-modified bar construction: the diagonal of `(m, k) ↦ Ex N(I_{E_k⫽F_k})_m`.
pub fn bar_ex(weight: &Weight, diagram: &Diagram, trunc: usize, cap: usize) -> Result<SimplicialSet> {
    Ok(BarEx::new(weight, diagram, trunc, cap)?.tab.set.as_ref().clone())
}

/// The comparison `B → B_Ex` induced by the last-vertex maps.
pub fn bar_comparison(weight: &Weight, diagram: &Diagram, trunc: usize, cap: usize) -> Result<SimplicialMap> {
    let b = Bar::new(weight, diagram, trunc)?;
    let bex = BarEx::new(weight, diagram, trunc, cap)?;
    bex.comparison_from(&b)
}

/// The cells of `B_n(F_k, I, E_k)`, ordered by string, then `E`-simplex, then `F`-simplex.
pub fn bar_level(weight: &Weight, diagram: &Diagram, n: usize, k: usize) -> Result<Vec<BarCell>> {
    let model = BarModel::new(weight, diagram, n.max(k))?;
    let shape = model.shape.clone();
    let cells = model.cells(n, k)?;
    Ok(cells
        .into_iter()
        .map(|c| {
            let (a, b) = model.ends(n, &c.string);
            let objects = crate::poset::ex::nerve_objects(&shape, n, &c.string).into_iter().map(|o| o as usize).collect();
            let morphisms = if n == 0 { Vec::new() } else { c.string.iter().map(|&u| u as usize).collect() };
            BarCell {
                objects,
                morphisms,
                e: model.e.tabs[a].assembled.cell(k, c.e as usize).clone(),
                f: model.f.tabs[b].assembled.cell(k, c.f as usize).clone(),
            }
        })
        .collect())
}

/// `hocolim E = B(*, I, E)`; every simplicial set is cofibrant, so no replacement is inserted.
pub fn hocolim(diagram: &Diagram, trunc: usize) -> Result<SimplicialSet> {
    bar(&Weight::point(diagram.shape().clone()), diagram, trunc)
}

/// `hocolim E → N(I)`, collapsing the values.
pub fn hocolim_projection(diagram: &Diagram, trunc: usize) -> Result<SimplicialMap> {
    let b = Bar::new(&Weight::point(diagram.shape().clone()), diagram, trunc)?;
    let nerve = nerve_tabulated(diagram.shape(), trunc);
    b.tab.map_to(&nerve, |_, cell| cell.string.clone())
}

/// The canonical map `hocolim_J (E ∘ φ) → hocolim_I E` for `φ: J → I`.
pub fn hocolim_restriction(diagram: &Diagram, phi: &CategoryFunctor, trunc: usize) -> Result<SimplicialMap> {
    let restricted = diagram.precompose(phi)?;
    let source = Bar::new(&Weight::point(phi.source().clone()), &restricted, trunc)?;
    let target = Bar::new(&Weight::point(diagram.shape().clone()), diagram, trunc)?;
    source.tab.map_to(&target.tab, |n, cell| BarKey { string: phi.on_nerve_cell(n, &cell.string), e: cell.e, f: cell.f })
}

/// Dugger's replacement at a probe object: `Q F (c) = B(F, C, C(c, −))`, with its augmentation
/// `q: Q F (c) → F(c)`, `(e: c → i_0, u_1, …, u_n, x) ↦ F(u_n ⋯ u_1 e)(x)`.
pub struct DuggerQ {
    pub bar: Bar,
    pub augmentation: SimplicialMap,
}

fn probe_diagram(weight: &Weight, c: usize) -> Result<Diagram> {
    if c >= weight.shape().object_count() {
        return Err(invalid(format!("probe object {c} out of range")));
    }
    Ok(Diagram::corepresentable(weight.shape().clone(), c))
}

pub fn dugger_q(weight: &Weight, c: usize, trunc: usize) -> Result<DuggerQ> {
    let diagram = probe_diagram(weight, c)?;
    let bar = Bar::new(weight, &diagram, trunc)?;
    let shape = weight.shape().clone();
    let target = Tabulated::of_set(weight.value(c), trunc);
    let hom_c: Vec<Vec<u32>> = (0..shape.object_count()).map(|i| shape.hom(c, i).to_vec()).collect();
    let augmentation = {
        let m = &bar.model;
        bar.tab.map_to(&target, |n, cell| {
            let (a, _) = m.ends(n, &cell.string);
            // the element of C(c, i_0) underlying the vertex-degenerate simplex cell.e
            let e_vertex = m.e.tabs[a].assembled.cell(n, cell.e as usize).gen.index;
            let mut w = hom_c[a][e_vertex] as usize;
            if n > 0 {
                for &u in cell.string.iter() {
                    w = shape.compose(u as usize, w).expect("composable");
                }
            }
            let img = m.f.maps[w].images[n][cell.f as usize] as usize;
            target.assembled.cell(n, img).clone()
        })?
    };
    Ok(DuggerQ { bar, augmentation })
}

/// The `Ex`-modified replacement `B_Ex(F, C, C(c, −))` with its augmentation; the value of a
/// functor cell is read off its first element, since `F(e)(x)` is constant along comma morphisms.
pub struct DuggerQEx {
    pub bar: BarEx,
    pub augmentation: SimplicialMap,
}

pub fn dugger_q_ex(weight: &Weight, c: usize, trunc: usize, cap: usize) -> Result<DuggerQEx> {
    let diagram = probe_diagram(weight, c)?;
    let bar = BarEx::new(weight, &diagram, trunc, cap)?;
    let shape = weight.shape().clone();
    let target = Tabulated::of_set(weight.value(c), trunc);
    let augmentation = {
        let m = &bar.model;
        bar.tab.map_to(&target, |n, cell| {
            let (i, y, x) = m.commas[n].objects[cell[0] as usize];
            let e_vertex = m.base.e.tabs[i as usize].assembled.cell(n, y as usize).gen.index;
            let w = shape.hom(c, i as usize)[e_vertex] as usize;
            let img = m.base.f.maps[w].images[n][x as usize] as usize;
            target.assembled.cell(n, img).clone()
        })?
    };
    Ok(DuggerQEx { bar, augmentation })
}
