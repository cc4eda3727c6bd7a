use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{invalid, Error, Result};
use crate::simplicial::sset::{SimplexRef, SimplicialSet};
use crate::simplicial::tabular::{words_of_length, Assembled, SimplicialModel};
use crate::simplicial::word::{DegeneracyWord, WordFace};

/// A bisimplicial object described by its cells; the bigraded analogue of [`SimplicialModel`].
/// The first index is horizontal, the second vertical.
pub trait BisimplicialModel {
    type Cell: Clone + Eq + Hash;

    fn cells(&self, m: usize, n: usize) -> Result<Vec<Self::Cell>>;
    fn h_face(&self, m: usize, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell;
    fn v_face(&self, m: usize, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell;
    fn h_degeneracy(&self, m: usize, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell;
    fn v_degeneracy(&self, m: usize, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell;
    fn label(&self, m: usize, n: usize, cell: &Self::Cell) -> String;

    /// Whether the diagonal has nondegenerate simplices above `trunc`.
    fn truncated_at(&self, _trunc: usize) -> bool {
        true
    }
}

/// The diagonal `n ↦ B_{n,n}` with `d_i = d_i^h d_i^v` and `s_i = s_i^h s_i^v`.
pub struct Diagonal<'a, B>(pub &'a B);

impl<B: BisimplicialModel> SimplicialModel for Diagonal<'_, B> {
    type Cell = B::Cell;

    fn cells(&self, n: usize) -> Result<Vec<B::Cell>> {
        self.0.cells(n, n)
    }

    fn face(&self, n: usize, cell: &B::Cell, i: usize) -> B::Cell {
        let v = self.0.v_face(n, n, cell, i);
        self.0.h_face(n, n - 1, &v, i)
    }

    fn degeneracy(&self, n: usize, cell: &B::Cell, i: usize) -> B::Cell {
        let v = self.0.v_degeneracy(n, n, cell, i);
        self.0.h_degeneracy(n, n + 1, &v, i)
    }

    fn label(&self, n: usize, cell: &B::Cell) -> String {
        self.0.label(n, n, cell)
    }

    fn truncated_at(&self, trunc: usize) -> bool {
        self.0.truncated_at(trunc)
    }
}

/// Identifies a bi-nondegenerate generator of bidegree `(h, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiGenId {
    pub h: usize,
    pub v: usize,
    pub index: usize,
}

/// `s^h_{word} s^v_{word} gen`; horizontal and vertical degeneracies commute.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiRef {
    pub h_word: DegeneracyWord,
    pub v_word: DegeneracyWord,
    pub gen: BiGenId,
}

impl BiRef {
    pub fn generator(gen: BiGenId) -> Self {
        BiRef { h_word: DegeneracyWord::identity(), v_word: DegeneracyWord::identity(), gen }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.gen.h + self.h_word.len(), self.gen.v + self.v_word.len())
    }
}

/// A finitely generated bisimplicial set truncated at `d_max` in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialSet {
    d_max: usize,
    labels: Vec<Vec<Vec<String>>>,
    h_faces: Vec<Vec<Vec<Vec<BiRef>>>>,
    v_faces: Vec<Vec<Vec<Vec<BiRef>>>>,
    lookup: HashMap<String, BiGenId>,
}

impl BisimplicialSet {
    pub fn new(d_max: usize) -> Self {
        BisimplicialSet {
            d_max,
            labels: vec![vec![Vec::new(); d_max + 1]; d_max + 1],
            h_faces: vec![vec![Vec::new(); d_max + 1]; d_max + 1],
            v_faces: vec![vec![Vec::new(); d_max + 1]; d_max + 1],
            lookup: HashMap::new(),
        }
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// Adds a generator of bidegree `(h, v)`; `h_faces` has `h + 1` entries of bidegree
    /// `(h - 1, v)` (none when `h = 0`), and dually for `v_faces`.
    pub fn add_generator(
        &mut self,
        label: impl Into<String>,
        h: usize,
        v: usize,
        h_faces: Vec<BiRef>,
        v_faces: Vec<BiRef>,
    ) -> Result<BiGenId> {
        let label = label.into();
        if h > self.d_max || v > self.d_max {
            return Err(invalid(format!("generator `{label}` exceeds d_max")));
        }
        if self.lookup.contains_key(&label) {
            return Err(invalid(format!("duplicate generator label `{label}`")));
        }
        let check = |faces: &[BiRef], count: usize, want: (usize, usize)| -> Result<()> {
            if faces.len() != count {
                return Err(invalid(format!("generator `{label}` has {} faces, expected {count}", faces.len())));
            }
            for f in faces {
                if f.bidegree() != want {
                    return Err(invalid(format!("face of `{label}` has the wrong bidegree")));
                }
                let g = f.gen;
                if g.h > self.d_max || g.v > self.d_max || g.index >= self.labels[g.h][g.v].len() {
                    return Err(Error::UnknownGenerator(format!("{g:?}")));
                }
                if !f.h_word.fits(g.h) || !f.v_word.fits(g.v) {
                    return Err(invalid(format!("face word of `{label}` does not fit")));
                }
            }
            Ok(())
        };
        check(&h_faces, if h == 0 { 0 } else { h + 1 }, (h.wrapping_sub(1), v))?;
        check(&v_faces, if v == 0 { 0 } else { v + 1 }, (h, v.wrapping_sub(1)))?;
        let id = BiGenId { h, v, index: self.labels[h][v].len() };
        self.labels[h][v].push(label.clone());
        self.h_faces[h][v].push(h_faces);
        self.v_faces[h][v].push(v_faces);
        self.lookup.insert(label, id);
        Ok(id)
    }

    pub fn generator_count(&self, h: usize, v: usize) -> usize {
        self.labels.get(h).and_then(|r| r.get(v)).map_or(0, Vec::len)
    }

    pub fn generators(&self, h: usize, v: usize) -> impl Iterator<Item = BiGenId> + '_ {
        (0..self.generator_count(h, v)).map(move |index| BiGenId { h, v, index })
    }

    pub fn all_generators(&self) -> impl Iterator<Item = BiGenId> + '_ {
        let d = self.d_max;
        (0..=d).flat_map(move |h| (0..=d).flat_map(move |v| self.generators(h, v)))
    }

    pub fn label(&self, gen: BiGenId) -> &str {
        &self.labels[gen.h][gen.v][gen.index]
    }

    pub fn find(&self, label: &str) -> Option<BiGenId> {
        self.lookup.get(label).copied()
    }

    pub fn h_faces_of(&self, gen: BiGenId) -> &[BiRef] {
        &self.h_faces[gen.h][gen.v][gen.index]
    }

    pub fn v_faces_of(&self, gen: BiGenId) -> &[BiRef] {
        &self.v_faces[gen.h][gen.v][gen.index]
    }

    /// Horizontal face `d^h_i`.
    pub fn h_face(&self, r: &BiRef, i: usize) -> BiRef {
        match r.h_word.face(i) {
            WordFace::Absorbed(h_word) => BiRef { h_word, v_word: r.v_word.clone(), gen: r.gen },
            WordFace::Through { prefix, index } => {
                let inner = &self.h_faces_of(r.gen)[index];
                BiRef {
                    h_word: prefix.compose(&inner.h_word),
                    v_word: r.v_word.compose(&inner.v_word),
                    gen: inner.gen,
                }
            }
        }
    }

    /// Vertical face `d^v_i`.
    pub fn v_face(&self, r: &BiRef, i: usize) -> BiRef {
        match r.v_word.face(i) {
            WordFace::Absorbed(v_word) => BiRef { h_word: r.h_word.clone(), v_word, gen: r.gen },
            WordFace::Through { prefix, index } => {
                let inner = &self.v_faces_of(r.gen)[index];
                BiRef {
                    h_word: r.h_word.compose(&inner.h_word),
                    v_word: prefix.compose(&inner.v_word),
                    gen: inner.gen,
                }
            }
        }
    }

    /// Checks the horizontal and vertical face identities and that the two directions commute.
    pub fn validate(&self) -> Result<()> {
        for gen in self.all_generators() {
            let x = BiRef::generator(gen);
            let fail = |what: &str| Err(Error::Invariant(format!("{what} on `{}`", self.label(gen))));
            for j in 0..=gen.h {
                if gen.h < 2 {
                    break;
                }
                for i in 0..j {
                    if self.h_face(&self.h_face(&x, j), i) != self.h_face(&self.h_face(&x, i), j - 1) {
                        return fail("horizontal face identity");
                    }
                }
            }
            for j in 0..=gen.v {
                if gen.v < 2 {
                    break;
                }
                for i in 0..j {
                    if self.v_face(&self.v_face(&x, j), i) != self.v_face(&self.v_face(&x, i), j - 1) {
                        return fail("vertical face identity");
                    }
                }
            }
            if gen.h >= 1 && gen.v >= 1 {
                for i in 0..=gen.h {
                    for j in 0..=gen.v {
                        if self.h_face(&self.v_face(&x, j), i) != self.v_face(&self.h_face(&x, i), j) {
                            return fail("horizontal and vertical faces do not commute");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl BisimplicialModel for BisimplicialSet {
    type Cell = BiRef;

    fn cells(&self, m: usize, n: usize) -> Result<Vec<BiRef>> {
        let mut out = Vec::new();
        for gh in (0..=m.min(self.d_max)).rev() {
            let h_words = words_of_length(m, m - gh);
            for gv in (0..=n.min(self.d_max)).rev() {
                let v_words = words_of_length(n, n - gv);
                for gen in self.generators(gh, gv) {
                    for hw in &h_words {
                        for vw in &v_words {
                            out.push(BiRef { h_word: hw.clone(), v_word: vw.clone(), gen });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn h_face(&self, _m: usize, _n: usize, cell: &BiRef, i: usize) -> BiRef {
        BisimplicialSet::h_face(self, cell, i)
    }

    fn v_face(&self, _m: usize, _n: usize, cell: &BiRef, i: usize) -> BiRef {
        BisimplicialSet::v_face(self, cell, i)
    }

    fn h_degeneracy(&self, _m: usize, _n: usize, cell: &BiRef, i: usize) -> BiRef {
        BiRef { h_word: cell.h_word.prepend(i), ..cell.clone() }
    }

    fn v_degeneracy(&self, _m: usize, _n: usize, cell: &BiRef, i: usize) -> BiRef {
        BiRef { v_word: cell.v_word.prepend(i), ..cell.clone() }
    }

    fn label(&self, _m: usize, _n: usize, cell: &BiRef) -> String {
        let mut out = String::new();
        if !cell.h_word.is_empty() {
            out.push_str(&format!("h[{}]·", cell.h_word));
        }
        if !cell.v_word.is_empty() {
            out.push_str(&format!("v[{}]·", cell.v_word));
        }
        out.push_str(self.label(cell.gen));
        out
    }
}

/// `(K ⊠ L)_{m,n} = K_m × L_n`: horizontal structure from `K`, vertical from `L`.
pub fn external_product(k: &SimplicialSet, l: &SimplicialSet) -> BisimplicialSet {
    let mut out = BisimplicialSet::new(k.d_max().max(l.d_max()));
    let mut ids = HashMap::new();
    let lift = |ids: &HashMap<_, BiGenId>, kr: &SimplexRef, lr: &SimplexRef| BiRef {
        h_word: kr.word.clone(),
        v_word: lr.word.clone(),
        gen: ids[&(kr.gen, lr.gen)],
    };
    for h in 0..=k.d_max() {
        for v in 0..=l.d_max() {
            for x in k.generators(h) {
                for y in l.generators(v) {
                    let xr = SimplexRef::generator(x);
                    let yr = SimplexRef::generator(y);
                    let h_faces = k.generator_faces(x).iter().map(|f| lift(&ids, f, &yr)).collect();
                    let v_faces = l.generator_faces(y).iter().map(|f| lift(&ids, &xr, f)).collect();
                    let label = format!("{}⊠{}", k.label(x), l.label(y));
                    let id = out
                        .add_generator(label, h, v, h_faces, v_faces)
                        .expect("external product of valid sets is valid");
                    ids.insert((x, y), id);
                }
            }
        }
    }
    out
}

/// The diagonal `δ*B` up to `trunc`, in generator form.
pub fn diagonal(b: &BisimplicialSet, trunc: usize) -> SimplicialSet {
    diagonal_of(b, trunc).expect("generator-form bisimplicial sets are closed under faces")
}

/// The diagonal of any bisimplicial model up to `trunc`.
pub fn diagonal_of<B: BisimplicialModel>(b: &B, trunc: usize) -> Result<SimplicialSet> {
    let model = Diagonal(b);
    Ok(Assembled::build(&model, trunc)?.to_simplicial_set(&model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary_simplex, standard_simplex};

    #[test]
    fn external_product_counts() {
        let b = external_product(&standard_simplex(0), &standard_simplex(0));
        assert_eq!(b.all_generators().count(), 1);
        let b = external_product(&standard_simplex(1), &standard_simplex(0));
        assert_eq!(b.generator_count(1, 0), 1);
        b.validate().unwrap();
    }

    #[test]
    fn diagonal_of_point_factor() {
        let k = boundary_simplex(2);
        let d = diagonal(&external_product(&k, &standard_simplex(0)), 2);
        assert_eq!(d.generator_counts(), vec![3, 3, 0]);
        let d = diagonal(&external_product(&standard_simplex(0), &k), 2);
        assert_eq!(d.generator_counts(), vec![3, 3, 0]);
        d.validate().unwrap();
    }

    #[test]
    fn diagonal_of_square() {
        let i = standard_simplex(1);
        let b = external_product(&i, &i);
        b.validate().unwrap();
        assert_eq!(diagonal(&b, 2).generator_counts(), vec![4, 5, 2]);
    }
}
