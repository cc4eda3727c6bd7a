//! `Ex`: `n`-simplices are maps `Sd Δ^n → X`, with `Sd Δ^n = N(s_<[n])`.
//!
//! Two representations. For a general `X` a cell stores the images of the maximal chains of
//! `s_<[n]` (the top simplices of `Sd Δ^n`). For the nerve of a category `C` a cell is a functor
//! `s_<[n] → C`: the object of every element and, unless `C` is thin, the morphism of every
//! covering pair.

use rustc_hash::FxHashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::category::{nerve_tabulated, FiniteCategory};
use crate::poset::order::FinitePoset;
use crate::poset::sd::{max_vertex, SdLevel, SdTower};
use crate::simplicial::{
    OperatorSteps, SimplexRef, SimplicialMap, SimplicialModel, SimplicialSet, Tabulated, TabularSimplicialSet,
};
use crate::DEFAULT_CAP;

fn cap_error(what: String, cap: usize) -> Error {
    Error::CapExceeded { what, cap }
}

// ---------------------------------------------------------------------------------------------
// functors s_<[n] → C

/// Every functor `s_<[n] → C` in lexicographic order (elements by size then lexicographically,
/// objects and morphisms by index). Layout: objects per element, then (unless `thin`) morphisms
/// per covering pair.
pub(crate) fn enumerate_functors(
    c: &FiniteCategory,
    thin: bool,
    lvl: &SdLevel,
    cap: usize,
    what: &str,
) -> Result<Vec<Box<[u32]>>> {
    let e_count = lvl.len();
    let width = if thin { e_count } else { e_count + lvl.hasse.len() };
    let mut cell = vec![0u32; width];
    let mut out = Vec::new();
    struct Ctx<'a> {
        c: &'a FiniteCategory,
        thin: bool,
        lvl: &'a SdLevel,
        cap: usize,
        what: &'a str,
    }
    fn place_object(ctx: &Ctx, e: usize, cell: &mut [u32], out: &mut Vec<Box<[u32]>>) -> Result<()> {
        if e == ctx.lvl.len() {
            if out.len() >= ctx.cap {
                return Err(cap_error(ctx.what.to_string(), ctx.cap));
            }
            out.push(cell.to_vec().into_boxed_slice());
            return Ok(());
        }
        let preds = &ctx.lvl.preds[e];
        for o in 0..ctx.c.object_count() {
            if !preds.iter().all(|&(_, low)| ctx.c.reachable(cell[low as usize] as usize, o)) {
                continue;
            }
            cell[e] = o as u32;
            if ctx.thin {
                place_object(ctx, e + 1, cell, out)?;
            } else {
                place_morphism(ctx, e, 0, cell, out)?;
            }
        }
        Ok(())
    }
    fn place_morphism(ctx: &Ctx, e: usize, j: usize, cell: &mut [u32], out: &mut Vec<Box<[u32]>>) -> Result<()> {
        let preds = &ctx.lvl.preds[e];
        if j == preds.len() {
            return place_object(ctx, e + 1, cell, out);
        }
        let base = ctx.lvl.len();
        let (edge, low) = preds[j];
        let low_mask = ctx.lvl.masks[low as usize];
        for &f in ctx.c.hom(cell[low as usize] as usize, cell[e] as usize) {
            cell[base + edge as usize] = f;
            // squares q ⊂ low, q ⊂ other ⊂ e against earlier predecessors
            let commutes = preds[..j].iter().all(|&(edge2, low2)| {
                let q_mask = low_mask & ctx.lvl.masks[low2 as usize];
                if q_mask == 0 {
                    return true;
                }
                let q = ctx.lvl.elem(q_mask);
                let e_q_low = ctx.lvl.hasse_pos[&(q, low)];
                let e_q_low2 = ctx.lvl.hasse_pos[&(q, low2)];
                let a = ctx.c.compose(f as usize, cell[base + e_q_low as usize] as usize);
                let b = ctx.c.compose(cell[base + edge2 as usize] as usize, cell[base + e_q_low2 as usize] as usize);
                a == b
            });
            if commutes {
                place_morphism(ctx, e, j + 1, cell, out)?;
            }
        }
        Ok(())
    }
    let ctx = Ctx { c, thin, lvl, cap, what };
    place_object(&ctx, 0, &mut cell, &mut out)?;
    Ok(out)
}

/// Precomposition with `Sd(δ^i)`: level `n` to level `n - 1`.
pub(crate) fn functor_face(tower: &SdTower, thin: bool, n: usize, cell: &[u32], i: usize) -> Box<[u32]> {
    let lo = &tower.levels[n - 1];
    let base = tower.levels[n].len();
    let mut out = Vec::with_capacity(if thin { lo.len() } else { lo.len() + lo.hasse.len() });
    out.extend(tower.face_elem[n][i].iter().map(|&e| cell[e as usize]));
    if !thin {
        out.extend(tower.face_edge[n][i].iter().map(|&e| cell[base + e as usize]));
    }
    out.into_boxed_slice()
}

/// Precomposition with `Sd(σ^i)`: level `n` to level `n + 1`.
pub(crate) fn functor_degeneracy(
    c: &FiniteCategory,
    tower: &SdTower,
    thin: bool,
    n: usize,
    cell: &[u32],
    i: usize,
) -> Box<[u32]> {
    let hi = &tower.levels[n + 1];
    let base = tower.levels[n].len();
    let mut out = Vec::with_capacity(if thin { hi.len() } else { hi.len() + hi.hasse.len() });
    out.extend(tower.degen_elem[n][i].iter().map(|&e| cell[e as usize]));
    if !thin {
        for (k, img) in tower.degen_edge[n][i].iter().enumerate() {
            out.push(match img {
                Some(e) => cell[base + *e as usize],
                None => {
                    let low = hi.hasse[k].0 as usize;
                    c.identity(out[low] as usize) as u32
                }
            });
        }
    }
    out.into_boxed_slice()
}

pub(crate) fn functor_label(c: &FiniteCategory, tower: &SdTower, thin: bool, n: usize, cell: &[u32]) -> String {
    let e_count = tower.levels[n].len();
    let objs: Vec<&str> = cell[..e_count].iter().map(|&o| c.objects()[o as usize].as_str()).collect();
    if thin || n == 0 {
        format!("⟨{}⟩", objs.join(","))
    } else {
        let mors: Vec<&str> = cell[e_count..].iter().map(|&f| c.morphism(f as usize).name.as_str()).collect();
        format!("⟨{}|{}⟩", objs.join(","), mors.join(","))
    }
}

/// `Ex N(C)` with functor cells.
pub struct ExNerveModel<'a> {
    pub category: &'a FiniteCategory,
    pub(crate) tower: SdTower,
    pub thin: bool,
    pub cap: usize,
}

impl<'a> ExNerveModel<'a> {
    pub fn new(category: &'a FiniteCategory, trunc: usize, cap: usize) -> Self {
        ExNerveModel { category, tower: SdTower::new(trunc), thin: category.is_thin(), cap }
    }
}

impl SimplicialModel for ExNerveModel<'_> {
    type Cell = Box<[u32]>;

    fn cells(&self, n: usize) -> Result<Vec<Self::Cell>> {
        enumerate_functors(self.category, self.thin, &self.tower.levels[n], self.cap, &format!("Ex N(C) level {n}"))
    }

    fn face(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        functor_face(&self.tower, self.thin, n, cell, i)
    }

    fn degeneracy(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        functor_degeneracy(self.category, &self.tower, self.thin, n, cell, i)
    }

    fn label(&self, n: usize, cell: &Self::Cell) -> String {
        functor_label(self.category, &self.tower, self.thin, n, cell)
    }

    fn truncated_at(&self, _trunc: usize) -> bool {
        (0..self.category.morphism_count()).any(|f| !self.category.is_identity(f))
    }
}

/// `Ex N(C)` tabulated, together with `N(C)` for the comparison map.
pub struct ExNerve {
    pub category: Arc<FiniteCategory>,
    pub nerve: Tabulated<Box<[u32]>>,
    pub ex: Tabulated<Box<[u32]>>,
    pub thin: bool,
    tower: SdTower,
}

impl ExNerve {
    pub fn new(category: Arc<FiniteCategory>, trunc: usize, cap: usize) -> Result<Self> {
        let model = ExNerveModel::new(&category, trunc, cap);
        let ex = Tabulated::build(&model, trunc)?;
        let (tower, thin) = (model.tower, model.thin);
        let nerve = nerve_tabulated(&category, trunc);
        Ok(ExNerve { category, nerve, ex, thin, tower })
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.ex.set
    }

    /// The functor `s_<[n] → C` of the last-vertex map on a nerve cell: `S ↦ c_{max S}`.
    pub fn last_vertex_cell(&self, n: usize, nerve_cell: &[u32]) -> Box<[u32]> {
        last_vertex_functor(&self.category, &self.tower, self.thin, n, nerve_cell)
    }

    /// `b: N(C) → Ex N(C)`.
    pub fn last_vertex_map(&self) -> Result<SimplicialMap> {
        self.nerve.map_to(&self.ex, |n, cell| self.last_vertex_cell(n, cell))
    }
}

/// Objects `c_0, …, c_n` of a nerve cell (a morphism string, or `[object]` for `n = 0`).
pub(crate) fn nerve_objects(c: &FiniteCategory, n: usize, cell: &[u32]) -> Vec<u32> {
    if n == 0 {
        return vec![cell[0]];
    }
    let mut v = vec![c.morphism(cell[0] as usize).source as u32];
    v.extend(cell.iter().map(|&f| c.morphism(f as usize).target as u32));
    v
}

pub(crate) fn last_vertex_functor(c: &FiniteCategory, tower: &SdTower, thin: bool, n: usize, cell: &[u32]) -> Box<[u32]> {
    let lvl = &tower.levels[n];
    let objs = nerve_objects(c, n, cell);
    let mut out: Vec<u32> = lvl.masks.iter().map(|&m| objs[max_vertex(m)]).collect();
    if !thin {
        for &(a, b) in &lvl.hasse {
            let (lo, hi) = (max_vertex(lvl.masks[a as usize]), max_vertex(lvl.masks[b as usize]));
            let mut f = c.identity(objs[lo] as usize);
            for j in lo..hi {
                f = c.compose(cell[j] as usize, f).expect("composable string");
            }
            out.push(f as u32);
        }
    }
    out.into_boxed_slice()
}

pub fn ex_category_nerve(c: &FiniteCategory, trunc: usize, cap: usize) -> Result<ExNerve> {
    ExNerve::new(Arc::new(c.clone()), trunc, cap)
}

/// `Ex N(P)` by enumerating monotone maps `s_<[n] → P`.
pub fn ex_nerve_poset(p: &FinitePoset, trunc: usize) -> Result<SimplicialSet> {
    ex_nerve_poset_with_cap(p, trunc, DEFAULT_CAP)
}

pub fn ex_nerve_poset_with_cap(p: &FinitePoset, trunc: usize, cap: usize) -> Result<SimplicialSet> {
    let c = FiniteCategory::from_poset(p);
    let model = ExNerveModel::new(&c, trunc, cap);
    Ok(Tabulated::build(&model, trunc)?.set.as_ref().clone())
}

// ---------------------------------------------------------------------------------------------
// general X

/// A simplex of `Sd Δ^n` expressed through a maximal chain: `X(θ)` of that chain's image.
type Via = (u32, OperatorSteps);

/// Per level `n`: chain bookkeeping for enumeration and the structure maps on maximal chains.
struct ChainTables {
    /// `offsets[n][k]`: first canonical id of the `k`-chains of level `n`.
    offsets: Vec<Vec<usize>>,
    /// `dims[n][j]`: length minus one of chain `j`.
    dims: Vec<Vec<usize>>,
    /// Chain faces within a level: `inner[n][j]` = canonical ids of `d_0 … d_k` of chain `j`.
    inner: Vec<Vec<Vec<u32>>>,
    /// `via[n][j]`: chain `j` of level `n` inside the first maximal chain containing it.
    via: Vec<Vec<Via>>,
    /// `faces[n][i][t]`: maximal chain `t` of level `n - 1` pushed along `Sd(δ^i)`.
    faces: Vec<Vec<Vec<Via>>>,
    /// `degens[n][i][t]`: maximal chain `t` of level `n + 1` pushed along `Sd(σ^i)`.
    degens: Vec<Vec<Vec<Via>>>,
}

impl ChainTables {
    fn new(tower: &SdTower) -> Self {
        let top = tower.top();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for lvl in &tower.levels {
            let mut off = Vec::new();
            let mut acc = 0;
            let mut d = Vec::new();
            for (k, chains) in lvl.chains.iter().enumerate() {
                off.push(acc);
                acc += chains.len();
                d.extend(std::iter::repeat(k).take(chains.len()));
            }
            off.push(acc);
            offsets.push(off);
            dims.push(d);
        }
        let canon = |n: usize, k: usize, c: usize| (offsets[n][k] + c) as u32;
        let inner = tower
            .levels
            .iter()
            .enumerate()
            .map(|(n, lvl)| {
                let mut v = Vec::new();
                for (k, chains) in lvl.chains.iter().enumerate() {
                    for ch in chains {
                        if k == 0 {
                            v.push(Vec::new());
                            continue;
                        }
                        let fs = (0..=k)
                            .map(|j| {
                                let mut f = ch.clone();
                                f.remove(j);
                                canon(n, k - 1, lvl.chain_pos[k - 1][&f] as usize)
                            })
                            .collect();
                        v.push(fs);
                    }
                }
                v
            })
            .collect();
        let raw_via: Vec<Vec<(u32, Vec<usize>)>> = tower
            .levels
            .iter()
            .enumerate()
            .map(|(n, lvl)| {
                let tops = &lvl.chains[n];
                lvl.chains
                    .iter()
                    .flatten()
                    .map(|ch| {
                        let t = tops
                            .iter()
                            .position(|m| ch.iter().all(|e| m.contains(e)))
                            .expect("every chain extends to a maximal one");
                        let theta: Vec<usize> =
                            ch.iter().map(|e| tops[t].iter().position(|x| x == e).expect("contained")).collect();
                        (t as u32, theta)
                    })
                    .collect()
            })
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let per_i = (0..=n)
                .map(|i| {
                    (0..tower.levels[n - 1].chains[n - 1].len())
                        .map(|c| {
                            let (t, theta) = &raw_via[n][canon(n, n - 1, tower.face_chain(n, i, n - 1, c) as usize) as usize];
                            (*t, OperatorSteps::new(n, theta))
                        })
                        .collect()
                })
                .collect();
            faces.push(per_i);
        }
        let mut degens = Vec::new();
        for n in 0..top {
            let per_i = (0..=n)
                .map(|i| {
                    (0..tower.levels[n + 1].chains[n + 1].len())
                        .map(|c| {
                            let img = tower.degen_chain(n, i, n + 1, c);
                            let (t, pos) = &raw_via[n][canon(n, img.dim, img.index as usize) as usize];
                            let theta: Vec<usize> = img.theta.iter().map(|&j| pos[j]).collect();
                            (*t, OperatorSteps::new(n, &theta))
                        })
                        .collect()
                })
                .collect();
            degens.push(per_i);
        }
        let via = raw_via
            .iter()
            .enumerate()
            .map(|(n, level)| level.iter().map(|(t, theta)| (*t, OperatorSteps::new(n, theta))).collect())
            .collect();
        ChainTables { offsets, dims, inner, via, faces, degens }
    }
}

/// `Ex X` for a tabulated `X`: a cell lists the images of the maximal chains of `s_<[n]` (the
/// `n`-simplices of `Sd Δ^n`), which determine the whole map.
pub struct ExModel<'a> {
    x: &'a TabularSimplicialSet,
    /// Labels of every tabulated simplex of `X`.
    x_labels: Vec<Vec<String>>,
    tower: SdTower,
    tables: ChainTables,
    /// Simplices of `X_k` by their face tuple.
    by_faces: Vec<FxHashMap<Box<[u32]>, Vec<u32>>>,
    cap: usize,
}

impl<'a> ExModel<'a> {
    pub fn new(x: &'a TabularSimplicialSet, x_set: &'a SimplicialSet, trunc: usize, cap: usize) -> Self {
        assert!(x.d_max() >= trunc, "X must be tabulated through the truncation");
        let tower = SdTower::new(trunc);
        let tables = ChainTables::new(&tower);
        let by_faces = (0..=trunc)
            .map(|k| {
                let mut m: FxHashMap<Box<[u32]>, Vec<u32>> = FxHashMap::default();
                if k > 0 {
                    for s in 0..x.count(k) {
                        m.entry(x.faces_of(k, s).into()).or_default().push(s as u32);
                    }
                }
                m
            })
            .collect();
        let x_labels = (0..=trunc)
            .map(|k| (0..x.count(k)).map(|s| SimplicialModel::label(x_set, k, &x.decompose(k, s))).collect())
            .collect();
        ExModel { x, x_labels, tower, tables, by_faces, cap }
    }

    /// Image under `b` of `x ∈ X_n`: chain `S_0 ⊂ ⋯ ⊂ S_n` ↦ `X(θ)(x)`, `θ(j) = max S_j`.
    fn last_vertex(&self, n: usize, x: usize) -> Box<[u32]> {
        let lvl = &self.tower.levels[n];
        lvl.chains[n]
            .iter()
            .map(|ch| {
                let theta: Vec<usize> = ch.iter().map(|&e| max_vertex(lvl.masks[e as usize])).collect();
                self.x.apply_operator(n, x, &theta) as u32
            })
            .collect()
    }

    /// Cells store the images of maximal chains only; everything else is an operator of those.
    fn push(&self, cell: &[u32], ops: &[Via]) -> Box<[u32]> {
        ops.iter().map(|(t, steps)| self.x.apply_steps(cell[*t as usize] as usize, steps) as u32).collect()
    }

    /// Image of an arbitrary chain (canonical id `j`) under the map stored in `cell`.
    pub fn chain_image(&self, n: usize, cell: &[u32], j: usize) -> u32 {
        let (t, steps) = &self.tables.via[n][j];
        self.x.apply_steps(cell[*t as usize] as usize, steps) as u32
    }
}

impl SimplicialModel for ExModel<'_> {
    type Cell = Box<[u32]>;

    fn cells(&self, n: usize) -> Result<Vec<Self::Cell>> {
        let lvl = &self.tower.levels[n];
        let total = self.tables.dims[n].len();
        // slots: elements by bitmask (subsets first, small vertices first), each followed by the
        // chains ending there, shortest first
        let mut order: Vec<u16> = (0..lvl.len() as u16).collect();
        order.sort_by_key(|&e| lvl.masks[e as usize]);
        let mut slots: Vec<u32> = Vec::with_capacity(total);
        for e in order {
            for (k, chains) in lvl.chains.iter().enumerate() {
                for (c, ch) in chains.iter().enumerate() {
                    if *ch.last().expect("nonempty") == e {
                        slots.push((self.tables.offsets[n][k] + c) as u32);
                    }
                }
            }
        }
        let mut cell = vec![0u32; total];
        let mut out = Vec::new();
        let what = format!("Ex X level {n}");
        fn go(
            m: &ExModel,
            n: usize,
            slots: &[u32],
            s: usize,
            cell: &mut Vec<u32>,
            out: &mut Vec<Box<[u32]>>,
            what: &str,
        ) -> Result<()> {
            if s == slots.len() {
                if out.len() >= m.cap {
                    return Err(cap_error(what.to_string(), m.cap));
                }
                out.push(cell[m.tables.offsets[n][n]..].into());
                return Ok(());
            }
            let id = slots[s] as usize;
            let k = m.tables.dims[n][id];
            if k == 0 {
                for v in 0..m.x.count(0) {
                    cell[id] = v as u32;
                    go(m, n, slots, s + 1, cell, out, what)?;
                }
                return Ok(());
            }
            let mut key = [0u32; 32];
            for (slot, &f) in key.iter_mut().zip(&m.tables.inner[n][id]) {
                *slot = cell[f as usize];
            }
            if let Some(cands) = m.by_faces[k].get(&key[..=k]) {
                for &v in cands {
                    cell[id] = v;
                    go(m, n, slots, s + 1, cell, out, what)?;
                }
            }
            Ok(())
        }
        go(self, n, &slots, 0, &mut cell, &mut out, &what)?;
        Ok(out)
    }

    fn face(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        self.push(cell, &self.tables.faces[n][i])
    }

    fn degeneracy(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        self.push(cell, &self.tables.degens[n][i])
    }

    fn label(&self, n: usize, cell: &Self::Cell) -> String {
        let parts: Vec<&str> = cell.iter().map(|&s| self.x_labels[n][s as usize].as_str()).collect();
        format!("⟨{}⟩", parts.join(","))
    }

    fn truncated_at(&self, _trunc: usize) -> bool {
        self.x.is_truncated() || (1..=self.x.d_max()).any(|k| !self.x.nondegenerate(k).is_empty())
    }
}

/// `Ex X` tabulated up to `trunc`, with `X` itself for comparison maps.
pub struct Ex {
    pub base: Tabulated<SimplexRef>,
    pub ex: Tabulated<Box<[u32]>>,
    trunc: usize,
    cap: usize,
}

impl Ex {
    pub fn new(x: &SimplicialSet, trunc: usize, cap: usize) -> Result<Self> {
        let base = Tabulated::of_set(x, trunc);
        let model = ExModel::new(base.table(), &base.set, trunc, cap);
        let ex = Tabulated::build(&model, trunc)?;
        Ok(Ex { base, ex, trunc, cap })
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.ex.set
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// `b_X: X → Ex X`.
    pub fn last_vertex_map(&self) -> Result<SimplicialMap> {
        let model = ExModel::new(self.base.table(), &self.base.set, self.trunc, self.cap);
        self.base.map_to(&self.ex, |n, r| {
            let x = self.base.assembled.id(n, r).expect("tabulated simplex");
            model.last_vertex(n, x)
        })
    }

    /// `Ex(f): Ex X → Ex Y` for `f: X → Y`, with `self` built on `X` and `target` on `Y`.
    pub fn map(&self, f: &SimplicialMap, target: &Ex) -> Result<SimplicialMap> {
        let t = self.trunc.min(target.trunc);
        let src_tab = self.base.table();
        let images: Vec<Vec<u32>> = (0..=t)
            .map(|k| {
                (0..src_tab.count(k))
                    .map(|s| {
                        let r = f.apply(self.base.assembled.cell(k, s));
                        target.base.assembled.id(k, &r).map(|v| v as u32)
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invariant("map target differs from the base of the target Ex".into()))?;
        self.ex.map_to(&target.ex, |n, cell| cell.iter().map(|&s| images[n][s as usize]).collect())
    }
}

/// `Ex X` up to `trunc`.
pub fn ex(x: &SimplicialSet, trunc: usize, cap: usize) -> Result<SimplicialSet> {
    Ok(Ex::new(x, trunc, cap)?.ex.set.as_ref().clone())
}

/// `b_X: X → Ex X` up to `trunc`, with the default cap.
pub fn last_vertex_map(x: &SimplicialSet, trunc: usize) -> Result<SimplicialMap> {
    Ex::new(x, trunc, DEFAULT_CAP)?.last_vertex_map()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::category::nerve_poset;
    use crate::simplicial::standard::{boundary_simplex, standard_simplex};
    use crate::simplicial::{is_simplicial_map, GenId};

    #[test]
    fn ex_of_a_point_is_a_point() {
        let x = ex(&standard_simplex(0), 3, DEFAULT_CAP).unwrap();
        assert_eq!(x.generator_counts(), vec![1, 0, 0, 0]);
        assert!(!x.is_truncated());
    }

    #[test]
    fn ex_of_circle_has_three_vertices() {
        let x = ex(&boundary_simplex(2), 2, DEFAULT_CAP).unwrap();
        assert_eq!(x.generator_count(0), 3);
        x.validate().unwrap();
    }

    #[test]
    fn poset_ex_counts() {
        let p = FinitePoset::ordinal(1);
        let x = ex_nerve_poset(&p, 2).unwrap();
        let c = FiniteCategory::from_poset(&p);
        let e = ex_category_nerve(&c, 2, DEFAULT_CAP).unwrap();
        // 5 monotone maps s_<[1] → [1], 2 of them degenerate
        assert_eq!(e.ex.table().count(1), 5);
        assert_eq!(x.generator_count(1), 3);
        let general = Ex::new(&nerve_poset(&p, 2), 2, DEFAULT_CAP).unwrap();
        assert_eq!(general.ex.table().counts(), e.ex.table().counts());
    }

    #[test]
    fn last_vertex_on_an_edge() {
        let d1 = standard_simplex(1);
        let e = Ex::new(&d1, 1, DEFAULT_CAP).unwrap();
        let b = e.last_vertex_map().unwrap();
        assert!(is_simplicial_map(&b).unwrap().valid);
        let edge = b.image(GenId { dim: 1, index: 0 });
        assert!(edge.is_nondegenerate());
        let cell = e.ex.cell_of(edge.gen);
        // maximal chains {0}⊂{0,1} and {1}⊂{0,1} go to the edge and to s_0 of vertex 1
        let t = e.base.table();
        let vertex1 = t.nondegenerate(0)[1] as usize;
        assert_eq!(&cell[..], &[t.nondegenerate(1)[0], t.degeneracy(0, vertex1, 0) as u32]);
    }

    #[test]
    fn functorial_last_vertex_on_nerves() {
        let c = FiniteCategory::from_poset(&FinitePoset::ordinal(2));
        let e = ex_category_nerve(&c, 2, DEFAULT_CAP).unwrap();
        let b = e.last_vertex_map().unwrap();
        assert!(is_simplicial_map(&b).unwrap().valid);
    }
}
