use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, SimplexRef, SimplicialSet};
use crate::simplicial::word::DegeneracyWord;

/// A simplicial object described by its cells and structure maps, possibly lazily.
///
/// `cells(n)` must list every `n`-simplex (degenerate ones included) exactly once, in a
/// deterministic order; faces and degeneracies of listed cells must be listed cells again.
pub trait SimplicialModel {
    type Cell: Clone + Eq + Hash;

    fn cells(&self, n: usize) -> Result<Vec<Self::Cell>>;
    fn face(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell;
    fn degeneracy(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell;
    fn label(&self, n: usize, cell: &Self::Cell) -> String;

    /// Whether nondegenerate simplices exist above `trunc`. Conservative default.
    fn truncated_at(&self, _trunc: usize) -> bool {
        true
    }
}

/// Dense representation: every simplex up to `d_max` with face and degeneracy tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabularSimplicialSet {
    d_max: usize,
    truncated: bool,
    counts: Vec<usize>,
    /// `faces[n][x * (n + 1) + i] = d_i x` for `n ≥ 1`.
    faces: Vec<Vec<u32>>,
    /// `degens[n][x * (n + 1) + i] = s_i x` for `n < d_max`.
    degens: Vec<Vec<u32>>,
    /// Position of each simplex among the nondegenerate ones of its dimension.
    nondeg_index: Vec<Vec<u32>>,
    nondeg: Vec<Vec<u32>>,
}

pub const DEGENERATE: u32 = u32::MAX;

impl TabularSimplicialSet {
    pub fn from_tables(
        d_max: usize,
        truncated: bool,
        counts: Vec<usize>,
        faces: Vec<Vec<u32>>,
        degens: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if counts.len() != d_max + 1 || faces.len() != d_max + 1 || degens.len() != d_max + 1 {
            return Err(Error::Invariant("table sizes disagree with d_max".into()));
        }
        for n in 0..=d_max {
            let expect_faces = if n == 0 { 0 } else { counts[n] * (n + 1) };
            let expect_degens = if n == d_max { 0 } else { counts[n] * (n + 1) };
            if faces[n].len() != expect_faces || degens[n].len() != expect_degens {
                return Err(Error::Invariant(format!("table size mismatch in dimension {n}")));
            }
        }
        let mut table = TabularSimplicialSet {
            d_max,
            truncated,
            counts,
            faces,
            degens,
            nondeg_index: Vec::new(),
            nondeg: Vec::new(),
        };
        table.classify();
        Ok(table)
    }

    fn classify(&mut self) {
        let mut nondeg_index = Vec::with_capacity(self.d_max + 1);
        let mut nondeg = Vec::with_capacity(self.d_max + 1);
        for n in 0..=self.d_max {
            let mut idx = vec![DEGENERATE; self.counts[n]];
            let mut list = Vec::new();
            for x in 0..self.counts[n] {
                if n == 0 || !(0..n).any(|i| self.degeneracy(n - 1, self.face(n, x, i), i) == x) {
                    idx[x] = list.len() as u32;
                    list.push(x as u32);
                }
            }
            nondeg_index.push(idx);
            nondeg.push(list);
        }
        self.nondeg_index = nondeg_index;
        self.nondeg = nondeg;
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    #[inline]
    pub fn face(&self, n: usize, x: usize, i: usize) -> usize {
        self.faces[n][x * (n + 1) + i] as usize
    }

    pub fn faces_of(&self, n: usize, x: usize) -> &[u32] {
        &self.faces[n][x * (n + 1)..(x + 1) * (n + 1)]
    }

    /// `s_i x` for `x` in dimension `n < d_max`.
    #[inline]
    pub fn degeneracy(&self, n: usize, x: usize, i: usize) -> usize {
        self.degens[n][x * (n + 1) + i] as usize
    }

    pub fn is_nondegenerate(&self, n: usize, x: usize) -> bool {
        self.nondeg_index[n][x] != DEGENERATE
    }

    /// Nondegenerate simplices of dimension `n`, as simplex ids.
    pub fn nondegenerate(&self, n: usize) -> &[u32] {
        &self.nondeg[n]
    }

    /// Position of `x` among nondegenerate `n`-simplices, if nondegenerate.
    pub fn nondegenerate_index(&self, n: usize, x: usize) -> Option<usize> {
        let v = self.nondeg_index[n][x];
        (v != DEGENERATE).then_some(v as usize)
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.nondeg.iter().map(Vec::len).collect()
    }

    /// Eilenberg–Zilber decomposition `x = word · y` with `y` nondegenerate.
    pub fn decompose(&self, n: usize, x: usize) -> SimplexRef {
        let mut letters = Vec::new();
        let (mut dim, mut cur) = (n, x);
        while !self.is_nondegenerate(dim, cur) {
            let i = (0..dim)
                .find(|&i| self.degeneracy(dim - 1, self.face(dim, cur, i), i) == cur)
                .expect("degenerate simplex has a degeneracy witness");
            letters.push(i);
            cur = self.face(dim, cur, i);
            dim -= 1;
        }
        SimplexRef {
            word: DegeneracyWord::normalize(&letters),
            gen: GenId { dim, index: self.nondeg_index[dim][cur] as usize },
        }
    }

    /// Simplex id of `word · (nondegenerate generator)`, applying degeneracies right to left.
    pub fn compose_ref(&self, r: &SimplexRef) -> Option<usize> {
        if r.dim() > self.d_max {
            return None;
        }
        let mut x = *self.nondeg[r.gen.dim].get(r.gen.index)? as usize;
        let mut dim = r.gen.dim;
        for &j in r.word.indices().iter().rev() {
            x = self.degeneracy(dim, x, j);
            dim += 1;
        }
        Some(x)
    }

    /// `X(θ)(x)` through precompiled [`OperatorSteps`].
    pub fn apply_steps(&self, x: usize, steps: &OperatorSteps) -> usize {
        let mut cur = x;
        let mut dim = steps.source_dim;
        for &i in &steps.faces {
            cur = self.face(dim, cur, i);
            dim -= 1;
        }
        for &j in &steps.degeneracies {
            cur = self.degeneracy(dim, cur, j);
            dim += 1;
        }
        cur
    }

    /// `X(θ)(x)` for a monotone map `θ: [k] → [n]`, given as its value list.
    pub fn apply_operator(&self, n: usize, x: usize, theta: &[usize]) -> usize {
        let k = theta.len() - 1;
        debug_assert!(k <= self.d_max);
        let mut image: Vec<usize> = theta.to_vec();
        image.dedup();
        let mut cur = x;
        let mut dim = n;
        for v in (0..=n).rev() {
            if image.binary_search(&v).is_err() {
                cur = self.face(dim, cur, v);
                dim -= 1;
            }
        }
        let word = DegeneracyWord::from_surjection(
            &theta.iter().map(|t| image.binary_search(t).expect("value in image")).collect::<Vec<_>>(),
        );
        for &j in word.indices().iter().rev() {
            cur = self.degeneracy(dim, cur, j);
            dim += 1;
        }
        cur
    }

    /// Verifies the five simplicial identities on every tabulated simplex.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        for n in 0..=self.d_max {
            for x in 0..self.counts[n] {
                if n >= 2 {
                    for j in 0..=n {
                        for i in 0..j {
                            let a = self.face(n - 1, self.face(n, x, j), i);
                            let b = self.face(n - 1, self.face(n, x, i), j - 1);
                            if a != b {
                                return fail(format!("d{i}d{j} failed on ({n},{x})"));
                            }
                        }
                    }
                }
                if n < self.d_max {
                    for j in 0..=n {
                        let s = self.degeneracy(n, x, j);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, s, i);
                            let ok = if i < j {
                                n >= 1 && lhs == self.degeneracy(n - 1, self.face(n, x, i), j - 1)
                            } else if i == j || i == j + 1 {
                                lhs == x
                            } else {
                                n >= 1 && lhs == self.degeneracy(n - 1, self.face(n, x, i - 1), j)
                            };
                            if !ok {
                                return fail(format!("d{i}s{j} failed on ({n},{x})"));
                            }
                        }
                        if n + 1 < self.d_max {
                            for i in 0..=j {
                                let a = self.degeneracy(n + 1, s, i);
                                let b = self.degeneracy(n + 1, self.degeneracy(n, x, i), j + 1);
                                if a != b {
                                    return fail(format!("s{i}s{j} failed on ({n},{x})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Converts to generator form, labelling nondegenerate simplices with `label(n, id)`.
    pub fn to_simplicial_set(&self, mut label: impl FnMut(usize, usize) -> String) -> SimplicialSet {
        let mut out = SimplicialSet::new(self.d_max).with_truncated(self.truncated);
        for n in 0..=self.d_max {
            for &x in &self.nondeg[n] {
                let x = x as usize;
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| self.decompose(n - 1, self.face(n, x, i))).collect()
                };
                let mut name = label(n, x);
                while out.find(&name).is_some() {
                    name.push('\'');
                }
                out.add_generator(name, n, faces).expect("tabular data is consistent");
            }
        }
        out
    }
}

/// A monotone map `θ: [k] → [n]` factored as faces followed by degeneracies, applied in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSteps {
    pub source_dim: usize,
    pub faces: Vec<usize>,
    pub degeneracies: Vec<usize>,
}

impl OperatorSteps {
    pub fn new(n: usize, theta: &[usize]) -> Self {
        let mut image: Vec<usize> = theta.to_vec();
        image.dedup();
        let faces = (0..=n).rev().filter(|v| image.binary_search(v).is_err()).collect();
        let word = DegeneracyWord::from_surjection(
            &theta.iter().map(|t| image.binary_search(t).expect("value in image")).collect::<Vec<_>>(),
        );
        let degeneracies = word.indices().iter().rev().copied().collect();
        OperatorSteps { source_dim: n, faces, degeneracies }
    }
}

/// A tabulated model that remembers which semantic cell each id stands for.
#[derive(Clone, Debug)]
pub struct Assembled<C> {
    pub table: TabularSimplicialSet,
    cells: Vec<IndexSet<C, FxBuildHasher>>,
}

impl<C: Clone + Eq + Hash> Assembled<C> {
    /// Tabulates `model` up to dimension `trunc`.
    pub fn build<M: SimplicialModel<Cell = C>>(model: &M, trunc: usize) -> Result<Self> {
        let mut cells: Vec<IndexSet<C, FxBuildHasher>> = Vec::with_capacity(trunc + 1);
        let mut faces = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let listed = model.cells(n)?;
            if listed.len() >= DEGENERATE as usize {
                return Err(Error::CapExceeded { what: format!("level {n}"), cap: DEGENERATE as usize });
            }
            let expected = listed.len();
            let level: IndexSet<C, FxBuildHasher> = listed.into_iter().collect();
            if level.len() != expected {
                return Err(Error::Invariant(format!("duplicate cell in level {n}")));
            }
            let mut table = Vec::new();
            if n > 0 {
                table.reserve(level.len() * (n + 1));
                for c in &level {
                    for i in 0..=n {
                        let f = model.face(n, c, i);
                        let id = cells[n - 1].get_index_of(&f).ok_or_else(|| {
                            Error::Invariant(format!("face d{i} of a {n}-cell is not a listed cell"))
                        })?;
                        table.push(id as u32);
                    }
                }
            }
            faces.push(table);
            cells.push(level);
        }
        let mut degens = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let mut table = Vec::new();
            if n < trunc {
                table.reserve(cells[n].len() * (n + 1));
                for c in &cells[n] {
                    for i in 0..=n {
                        let s = model.degeneracy(n, c, i);
                        let id = cells[n + 1].get_index_of(&s).ok_or_else(|| {
                            Error::Invariant(format!("degeneracy s{i} of a {n}-cell is not a listed cell"))
                        })?;
                        table.push(id as u32);
                    }
                }
            }
            degens.push(table);
        }
        let counts = cells.iter().map(IndexSet::len).collect();
        let table =
            TabularSimplicialSet::from_tables(trunc, model.truncated_at(trunc), counts, faces, degens)?;
        Ok(Assembled { table, cells })
    }

    pub fn id(&self, n: usize, cell: &C) -> Option<usize> {
        self.cells.get(n)?.get_index_of(cell)
    }

    pub fn cell(&self, n: usize, id: usize) -> &C {
        &self.cells[n][id]
    }

    pub fn cells(&self, n: usize) -> &indexmap::set::Slice<C> {
        self.cells[n].as_slice()
    }

    pub fn to_simplicial_set<M: SimplicialModel<Cell = C>>(&self, model: &M) -> SimplicialSet {
        self.table.to_simplicial_set(|n, x| model.label(n, &self.cells[n][x]))
    }

    /// Generator-form reference of the cell with id `x`, relative to [`Self::to_simplicial_set`].
    pub fn reference(&self, n: usize, x: usize) -> SimplexRef {
        self.table.decompose(n, x)
    }

    /// Reference of a semantic cell, if it is tabulated.
    pub fn reference_of(&self, n: usize, cell: &C) -> Option<SimplexRef> {
        self.id(n, cell).map(|x| self.table.decompose(n, x))
    }
}

/// A tabulated model together with its generator form, so that maps can be given cellwise.
#[derive(Clone, Debug)]
pub struct Tabulated<C> {
    pub assembled: Assembled<C>,
    pub set: Arc<SimplicialSet>,
}

impl<C: Clone + Eq + Hash> Tabulated<C> {
    pub fn build<M: SimplicialModel<Cell = C>>(model: &M, trunc: usize) -> Result<Self> {
        let assembled = Assembled::build(model, trunc)?;
        let set = Arc::new(assembled.to_simplicial_set(model));
        Ok(Tabulated { assembled, set })
    }

    pub fn table(&self) -> &TabularSimplicialSet {
        &self.assembled.table
    }

    /// The cell behind a generator of [`Self::set`].
    pub fn cell_of(&self, gen: GenId) -> &C {
        let id = self.assembled.table.nondegenerate(gen.dim)[gen.index] as usize;
        self.assembled.cell(gen.dim, id)
    }

    pub fn reference_of(&self, n: usize, cell: &C) -> Option<SimplexRef> {
        self.assembled.reference_of(n, cell)
    }

    /// The generator-form map `self → target` induced by a cellwise function.
    pub fn map_to<D: Clone + Eq + Hash>(
        &self,
        target: &Tabulated<D>,
        mut f: impl FnMut(usize, &C) -> D,
    ) -> Result<SimplicialMap> {
        SimplicialMap::try_from_fn(self.set.clone(), target.set.clone(), |g| {
            let image = f(g.dim, self.cell_of(g));
            target.reference_of(g.dim, &image).ok_or_else(|| {
                Error::Invariant(format!("image of a {}-cell is not a cell of the target", g.dim))
            })
        })
    }
}

impl Tabulated<SimplexRef> {
    /// Tabulates a generator-form set up to `trunc`, keeping its generator order and labels.
    pub fn of_set(x: &SimplicialSet, trunc: usize) -> Self {
        let assembled = x.assemble_to(trunc);
        let set = Arc::new(if trunc >= x.d_max() { x.clone() } else { x.truncate(trunc) });
        Tabulated { assembled, set }
    }
}

/// A generator-form simplicial set viewed as a model whose cells are normal-form references.
impl SimplicialModel for SimplicialSet {
    type Cell = SimplexRef;

    fn cells(&self, n: usize) -> Result<Vec<SimplexRef>> {
        let mut out = Vec::new();
        for m in (0..=n.min(self.d_max())).rev() {
            let words = words_of_length(n, n - m);
            for gen in self.generators(m) {
                for w in &words {
                    out.push(SimplexRef { word: w.clone(), gen });
                }
            }
        }
        Ok(out)
    }

    fn face(&self, _n: usize, cell: &SimplexRef, i: usize) -> SimplexRef {
        self.face_unchecked(cell, i)
    }

    fn degeneracy(&self, _n: usize, cell: &SimplexRef, i: usize) -> SimplexRef {
        SimplexRef { word: cell.word.prepend(i), gen: cell.gen }
    }

    fn label(&self, _n: usize, cell: &SimplexRef) -> String {
        if cell.word.is_empty() {
            self.label(cell.gen).to_string()
        } else {
            format!("{}·{}", cell.word, self.label(cell.gen))
        }
    }

    fn truncated_at(&self, trunc: usize) -> bool {
        self.is_truncated() || (trunc + 1..=self.d_max()).any(|d| self.generator_count(d) > 0)
    }
}

/// All normal-form words of length `len` acting to produce an `n`-simplex:
/// strictly decreasing index sequences drawn from `0..n`.
pub fn words_of_length(n: usize, len: usize) -> Vec<DegeneracyWord> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(start: usize, n: usize, len: usize, current: &mut Vec<usize>, out: &mut Vec<DegeneracyWord>) {
        if current.len() == len {
            let mut w = current.clone();
            w.reverse();
            out.push(DegeneracyWord::new(w).expect("increasing choice reversed"));
            return;
        }
        for j in start..n {
            current.push(j);
            rec(j + 1, n, len, current, out);
            current.pop();
        }
    }
    rec(0, n, len, &mut current, &mut out);
    out
}

impl SimplicialSet {
    /// Tabular form up to `d_max`.
    pub fn to_tabular(&self) -> TabularSimplicialSet {
        self.assemble().table
    }

    /// Tabular form keeping the reference for each tabulated simplex.
    pub fn assemble(&self) -> Assembled<SimplexRef> {
        Assembled::build(self, self.d_max()).expect("generator form is closed under faces")
    }

    pub fn assemble_to(&self, trunc: usize) -> Assembled<SimplexRef> {
        Assembled::build(self, trunc).expect("generator form is closed under faces")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::standard_simplex;

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(words_of_length(3, 0).len(), 1);
        assert_eq!(words_of_length(3, 2).len(), 3);
        assert!(words_of_length(4, 2).iter().all(|w| w.fits(2)));
    }

    #[test]
    fn tabular_delta2() {
        let t = standard_simplex(2).to_tabular();
        // Δ^2 has C(n+3-1, ...) = monotone maps [n] → [2]: 3, 6, 10
        assert_eq!(t.counts(), &[3, 6, 10]);
        assert_eq!(t.nondegenerate_counts(), vec![3, 3, 1]);
        t.check_identities().unwrap();
    }

    #[test]
    fn round_trip_through_tabular() {
        let x = standard_simplex(3);
        let back = x.to_tabular().to_simplicial_set(|n, id| format!("{n}:{id}"));
        assert_eq!(back.generator_counts(), x.generator_counts());
        back.validate().unwrap();
    }

    #[test]
    fn apply_operator_matches_faces() {
        let t = standard_simplex(2).to_tabular();
        let top = t.nondegenerate(2)[0] as usize;
        assert_eq!(t.apply_operator(2, top, &[0, 2]), t.face(2, top, 1));
        let v = t.apply_operator(2, top, &[1]);
        let e = t.apply_operator(2, top, &[1, 1]);
        assert_eq!(e, t.degeneracy(0, v, 0));
    }
}
