use rustc_hash::FxHashMap;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::simplicial::word::{DegeneracyWord, WordFace};

/// Identifies a nondegenerate generator by dimension and position within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId {
    pub dim: usize,
    pub index: usize,
}

/// A possibly degenerate simplex `word · generator` in Eilenberg–Zilber normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub word: DegeneracyWord,
    pub gen: GenId,
}

impl SimplexRef {
    pub fn generator(gen: GenId) -> Self {
        SimplexRef { word: DegeneracyWord::identity(), gen }
    }

    pub fn new(word: DegeneracyWord, gen: GenId) -> Self {
        SimplexRef { word, gen }
    }

    pub fn dim(&self) -> usize {
        self.gen.dim + self.word.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }
}

/// A finitely generated simplicial set, truncated at `d_max`.
///
/// Stores the nondegenerate simplices of each dimension together with their faces, each face
/// written as a normal-form degeneracy word over another generator. When `truncated` is set,
/// simplices above `d_max` may exist in the untruncated object and were dropped; otherwise the
/// listed generators are all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    d_max: usize,
    truncated: bool,
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: FxHashMap<String, GenId>,
}

impl SimplicialSet {
    /// The empty simplicial set with room for generators up to `d_max`.
    pub fn new(d_max: usize) -> Self {
        SimplicialSet {
            d_max,
            truncated: false,
            labels: vec![Vec::new(); d_max + 1],
            faces: vec![Vec::new(); d_max + 1],
            lookup: FxHashMap::default(),
        }
    }

    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn set_truncated(&mut self, truncated: bool) {
        self.truncated = truncated;
    }

    /// Adds a nondegenerate generator with the given faces (`dim + 1` of them, none for vertices).
    pub fn add_generator(
        &mut self,
        label: impl Into<String>,
        dim: usize,
        faces: Vec<SimplexRef>,
    ) -> Result<GenId> {
        let label = label.into();
        if dim > self.d_max {
            return Err(invalid(format!("generator `{label}` has dimension {dim} > d_max {}", self.d_max)));
        }
        if self.lookup.contains_key(&label) {
            return Err(invalid(format!("duplicate generator label `{label}`")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(invalid(format!(
                "generator `{label}` of dimension {dim} needs {expected} faces, got {}",
                faces.len()
            )));
        }
        for face in &faces {
            if face.dim() + 1 != dim {
                return Err(invalid(format!("face of `{label}` has dimension {}", face.dim())));
            }
            if face.gen.dim >= self.labels.len() || face.gen.index >= self.labels[face.gen.dim].len() {
                return Err(invalid(format!("face of `{label}` refers to a missing generator")));
            }
            if !face.word.fits(face.gen.dim) {
                return Err(invalid(format!("face word {} of `{label}` does not fit", face.word)));
            }
        }
        let id = GenId { dim, index: self.labels[dim].len() };
        self.labels[dim].push(label.clone());
        self.faces[dim].push(faces);
        self.lookup.insert(label, id);
        Ok(id)
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Number of nondegenerate generators per dimension `0..=d_max`.
    pub fn generator_counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn generator_count(&self, dim: usize) -> usize {
        self.labels.get(dim).map_or(0, Vec::len)
    }

    pub fn generators(&self, dim: usize) -> impl Iterator<Item = GenId> + '_ {
        (0..self.generator_count(dim)).map(move |index| GenId { dim, index })
    }

    pub fn all_generators(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..=self.d_max).flat_map(move |d| self.generators(d))
    }

    pub fn label(&self, gen: GenId) -> &str {
        &self.labels[gen.dim][gen.index]
    }

    pub fn labels(&self, dim: usize) -> &[String] {
        &self.labels[dim]
    }

    pub fn find(&self, label: &str) -> Option<GenId> {
        self.lookup.get(label).copied()
    }

    pub fn generator_faces(&self, gen: GenId) -> &[SimplexRef] {
        &self.faces[gen.dim][gen.index]
    }

    fn check_ref(&self, r: &SimplexRef) -> Result<()> {
        if r.gen.dim > self.d_max || r.gen.index >= self.labels[r.gen.dim].len() {
            return Err(Error::UnknownGenerator(format!("{:?}", r.gen)));
        }
        if !r.word.fits(r.gen.dim) {
            return Err(invalid(format!("word {} does not fit a {}-simplex", r.word, r.gen.dim)));
        }
        Ok(())
    }

    /// The `i`-th face of a possibly degenerate simplex, in normal form.
    pub fn face(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef> {
        self.check_ref(r)?;
        let dim = r.dim();
        if dim == 0 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        Ok(self.face_unchecked(r, i))
    }

    pub(crate) fn face_unchecked(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        match r.word.face(i) {
            WordFace::Absorbed(word) => SimplexRef { word, gen: r.gen },
            WordFace::Through { prefix, index } => {
                let inner = &self.faces[r.gen.dim][r.gen.index][index];
                SimplexRef { word: prefix.compose(&inner.word), gen: inner.gen }
            }
        }
    }

    /// `s_i` applied to a possibly degenerate simplex.
    pub fn degenerate(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef> {
        self.check_ref(r)?;
        if i > r.dim() {
            return Err(Error::IndexOutOfRange { index: i, dim: r.dim() });
        }
        Ok(SimplexRef { word: r.word.prepend(i), gen: r.gen })
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every generator of dimension ≥ 2.
    pub fn validate(&self) -> Result<()> {
        for gen in self.all_generators() {
            if gen.dim < 2 {
                continue;
            }
            let x = SimplexRef::generator(gen);
            for j in 0..=gen.dim {
                let dj = self.face_unchecked(&x, j);
                for i in 0..j {
                    let lhs = self.face_unchecked(&dj, i);
                    let rhs = self.face_unchecked(&self.face_unchecked(&x, i), j - 1);
                    if lhs != rhs {
                        return Err(Error::Invariant(format!(
                            "d{i} d{j} != d{} d{i} on generator `{}`",
                            j - 1,
                            self.label(gen)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Euler characteristic from generator counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.generator_counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Drops generators above `d` (marking the result truncated if anything was dropped).
    pub fn truncate(&self, d: usize) -> SimplicialSet {
        if d >= self.d_max {
            return self.clone();
        }
        let dropped = (d + 1..=self.d_max).any(|k| self.generator_count(k) > 0);
        let mut out = SimplicialSet::new(d).with_truncated(self.truncated || dropped);
        for k in 0..=d {
            for gen in self.generators(k) {
                out.add_generator(self.label(gen), k, self.generator_faces(gen).to_vec())
                    .expect("truncation preserves validity");
            }
        }
        out
    }

    pub fn point() -> SimplicialSet {
        let mut x = SimplicialSet::new(0);
        x.add_generator("*", 0, Vec::new()).expect("fresh set");
        x
    }
}

impl fmt::Display for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "simplicial set, d_max {}, generators {:?}", self.d_max, self.generator_counts())?;
        if self.truncated {
            write!(f, " (truncated)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> SimplicialSet {
        let mut x = SimplicialSet::new(1);
        let a = x.add_generator("a", 0, vec![]).unwrap();
        let b = x.add_generator("b", 0, vec![]).unwrap();
        x.add_generator("e", 1, vec![SimplexRef::generator(b), SimplexRef::generator(a)]).unwrap();
        x
    }

    #[test]
    fn degenerate_vertex_faces() {
        let x = interval();
        let v = SimplexRef::generator(x.find("a").unwrap());
        let sv = x.degenerate(&v, 0).unwrap();
        assert_eq!(x.face(&sv, 0).unwrap(), v);
        assert_eq!(x.face(&sv, 1).unwrap(), v);
        let ssv = x.degenerate(&sv, 1).unwrap();
        assert_eq!(ssv.word.indices(), &[1, 0]);
        assert_eq!(x.face(&ssv, 1).unwrap(), sv);
    }

    #[test]
    fn degenerate_edge_faces() {
        let x = interval();
        let e = SimplexRef::generator(x.find("e").unwrap());
        let s0e = x.degenerate(&e, 0).unwrap();
        assert_eq!(x.face(&s0e, 0).unwrap(), e);
        assert_eq!(x.face(&s0e, 1).unwrap(), e);
        let d2 = x.face(&s0e, 2).unwrap();
        // d_2 s_0 e = s_0 d_1 e = s_0 a
        assert_eq!(d2.word.indices(), &[0]);
        assert_eq!(x.label(d2.gen), "a");
    }

    #[test]
    fn rejects_bad_generators() {
        let mut x = interval();
        assert!(x.add_generator("a", 0, vec![]).is_err());
        assert!(x.add_generator("f", 1, vec![]).is_err());
        assert!(x.face(&SimplexRef::generator(GenId { dim: 0, index: 0 }), 0).is_err());
    }

    #[test]
    fn out_of_range_index() {
        let x = interval();
        let e = SimplexRef::generator(x.find("e").unwrap());
        assert!(matches!(x.face(&e, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(x.degenerate(&e, 2), Err(Error::IndexOutOfRange { .. })));
    }
}
