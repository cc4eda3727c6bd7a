use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::simplicial::sset::{GenId, SimplexRef, SimplicialSet};
use crate::simplicial::tabular::{Assembled, TabularSimplicialSet};

/// A simplicial map in generator form: each source generator goes to a simplex of the target
/// of the same dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assignment: Vec<Vec<SimplexRef>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapViolation {
    pub generator: String,
    pub face: usize,
    /// `f(d_i x)`
    pub image_of_face: String,
    /// `d_i f(x)`
    pub face_of_image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub valid: bool,
    pub violations: Vec<MapViolation>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assignment: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        if assignment.len() != source.d_max() + 1 {
            return Err(invalid("assignment table does not match source dimensions"));
        }
        for (dim, level) in assignment.iter().enumerate() {
            if level.len() != source.generator_count(dim) {
                return Err(invalid(format!("assignment misses generators in dimension {dim}")));
            }
            for r in level {
                if r.dim() != dim {
                    return Err(invalid(format!("image of a {dim}-simplex has dimension {}", r.dim())));
                }
                check_target_ref(&target, r)?;
            }
        }
        Ok(SimplicialMap { source, target, assignment })
    }

    pub fn from_fn(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut f: impl FnMut(GenId) -> SimplexRef,
    ) -> Result<Self> {
        let assignment = (0..=source.d_max())
            .map(|d| source.generators(d).map(&mut f).collect())
            .collect();
        Self::new(source, target, assignment)
    }

    /// Like [`Self::from_fn`] with a fallible assignment.
    pub fn try_from_fn(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut f: impl FnMut(GenId) -> Result<SimplexRef>,
    ) -> Result<Self> {
        let assignment = (0..=source.d_max())
            .map(|d| source.generators(d).map(&mut f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        Self::from_fn(x.clone(), x, SimplexRef::generator).expect("identity is well formed")
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn image(&self, gen: GenId) -> &SimplexRef {
        &self.assignment[gen.dim][gen.index]
    }

    pub fn assignment(&self) -> &[Vec<SimplexRef>] {
        &self.assignment
    }

    /// Image of an arbitrary (possibly degenerate) source simplex.
    pub fn apply(&self, r: &SimplexRef) -> SimplexRef {
        let img = self.image(r.gen);
        SimplexRef { word: r.word.compose(&img.word), gen: img.gen }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(invalid("maps are not composable"));
        }
        SimplicialMap::from_fn(first.source.clone(), self.target.clone(), |g| self.apply(first.image(g)))
    }

    /// Tabulates source and target up to `trunc` and the map between them.
    pub fn tabulate(&self, trunc: usize) -> (Assembled<SimplexRef>, Assembled<SimplexRef>, TabularMap) {
        let src = self.source.assemble_to(trunc);
        let tgt = self.target.assemble_to(trunc);
        let images = (0..=trunc)
            .map(|n| {
                src.cells(n)
                    .iter()
                    .map(|c| tgt.id(n, &self.apply(c)).expect("image lies in the target") as u32)
                    .collect()
            })
            .collect();
        (src, tgt, TabularMap { images })
    }
}

fn check_target_ref(target: &SimplicialSet, r: &SimplexRef) -> Result<()> {
    if r.gen.dim > target.d_max() || r.gen.index >= target.generator_count(r.gen.dim) {
        return Err(Error::UnknownGenerator(format!("{:?}", r.gen)));
    }
    if !r.word.fits(r.gen.dim) {
        return Err(invalid(format!("word {} does not fit", r.word)));
    }
    Ok(())
}

fn show(x: &SimplicialSet, r: &SimplexRef) -> String {
    if r.word.is_empty() {
        x.label(r.gen).to_string()
    } else {
        format!("{}·{}", r.word, x.label(r.gen))
    }
}

/// Checks that `f` commutes with all faces on every generator; lists violations.
pub fn is_simplicial_map(f: &SimplicialMap) -> Result<MapReport> {
    let (src, tgt) = (f.source(), f.target());
    let mut violations = Vec::new();
    for gen in src.all_generators() {
        let img = f.image(gen);
        check_target_ref(tgt, img)?;
        if gen.dim == 0 {
            continue;
        }
        for (i, face) in src.generator_faces(gen).iter().enumerate() {
            let lhs = f.apply(face);
            let rhs = tgt.face(img, i)?;
            if lhs != rhs {
                violations.push(MapViolation {
                    generator: src.label(gen).to_string(),
                    face: i,
                    image_of_face: show(tgt, &lhs),
                    face_of_image: show(tgt, &rhs),
                });
            }
        }
    }
    Ok(MapReport { valid: violations.is_empty(), violations })
}

/// A simplicial map between tabular sets: `images[n][x]` is the image of the `n`-simplex `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabularMap {
    pub images: Vec<Vec<u32>>,
}

impl TabularMap {
    pub fn image(&self, n: usize, x: usize) -> usize {
        self.images[n][x] as usize
    }

    pub fn identity(x: &TabularSimplicialSet) -> Self {
        TabularMap { images: (0..=x.d_max()).map(|n| (0..x.count(n) as u32).collect()).collect() }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &TabularMap) -> TabularMap {
        TabularMap {
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(n, level)| level.iter().map(|&y| after.images[n][y as usize]).collect())
                .collect(),
        }
    }

    /// Restricts to dimensions `0..=d`.
    pub fn truncate(&self, d: usize) -> TabularMap {
        TabularMap { images: self.images.iter().take(d + 1).cloned().collect() }
    }

    /// Verifies that faces and degeneracies commute with the map.
    pub fn check(&self, src: &TabularSimplicialSet, tgt: &TabularSimplicialSet) -> Result<()> {
        let top = src.d_max().min(tgt.d_max());
        if self.images.len() <= top {
            return Err(invalid("map table shorter than the common truncation"));
        }
        for n in 0..=top {
            if self.images[n].len() != src.count(n) {
                return Err(invalid(format!("map table misses {n}-simplices")));
            }
            for x in 0..src.count(n) {
                let y = self.image(n, x);
                if y >= tgt.count(n) {
                    return Err(invalid(format!("image of ({n},{x}) out of range")));
                }
                if n > 0 {
                    for i in 0..=n {
                        if self.image(n - 1, src.face(n, x, i)) != tgt.face(n, y, i) {
                            return Err(Error::Invariant(format!("d{i} does not commute at ({n},{x})")));
                        }
                    }
                }
                if n < top {
                    for i in 0..=n {
                        if self.image(n + 1, src.degeneracy(n, x, i)) != tgt.degeneracy(n, y, i) {
                            return Err(Error::Invariant(format!("s{i} does not commute at ({n},{x})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Generator-form map between the generator forms produced by
    /// [`TabularSimplicialSet::to_simplicial_set`].
    pub fn to_simplicial_map(
        &self,
        src_table: &TabularSimplicialSet,
        source: Arc<SimplicialSet>,
        tgt_table: &TabularSimplicialSet,
        target: Arc<SimplicialSet>,
    ) -> Result<SimplicialMap> {
        let top = source.d_max();
        let assignment = (0..=top)
            .map(|n| {
                src_table
                    .nondegenerate(n)
                    .iter()
                    .map(|&x| tgt_table.decompose(n, self.image(n, x as usize)))
                    .collect()
            })
            .collect();
        SimplicialMap::new(source, target, assignment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::standard_simplex;

    #[test]
    fn identity_is_simplicial() {
        let x = Arc::new(standard_simplex(2));
        let report = is_simplicial_map(&SimplicialMap::identity(x)).unwrap();
        assert!(report.valid);
    }

    #[test]
    fn collapse_is_simplicial() {
        let x = Arc::new(standard_simplex(1));
        let pt = Arc::new(SimplicialSet::point());
        let v = GenId { dim: 0, index: 0 };
        let f = SimplicialMap::from_fn(x, pt.clone(), |g| {
            SimplexRef::new(crate::simplicial::DegeneracyWord::normalize(&vec![0; g.dim]), v)
        })
        .unwrap();
        assert!(is_simplicial_map(&f).unwrap().valid);
    }

    #[test]
    fn swapped_endpoints_fail_at_d0() {
        let x = Arc::new(standard_simplex(1));
        let [a, b] = [x.find("[0]").unwrap(), x.find("[1]").unwrap()];
        let e = x.find("[0,1]").unwrap();
        // vertices swapped while the edge stays put
        let f = SimplicialMap::from_fn(x.clone(), x.clone(), |g| {
            SimplexRef::generator(if g == a { b } else if g == b { a } else { e })
        })
        .unwrap();
        let report = is_simplicial_map(&f).unwrap();
        assert!(!report.valid);
        assert_eq!(report.violations[0].face, 0);
    }

    #[test]
    fn dangling_assignment_is_rejected() {
        let x = Arc::new(standard_simplex(1));
        let bad = SimplexRef::generator(GenId { dim: 0, index: 7 });
        assert!(SimplicialMap::from_fn(x.clone(), x, |_| bad.clone()).is_err());
    }
}
