use serde::{Deserialize, Serialize};

use crate::cover::complex::CoverComplex;
use crate::error::Result;
use crate::simplicial::{SimplicialModel, SimplicialSet, Tabulated};

/// How each nonempty intersection `U_α` is sampled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sections {
    /// One point lying in every nonempty intersection.
    #[default]
    Collapsed,
    /// One point per maximal element `β` of `Σ`, lying in `U_α` exactly when `α ⊆ β`. Unlike the
    /// collapsed model this keeps `U_α ∩ U_β = U_{α∪β}` on points.
    Witnessed,
}

/// A sample point; `witness: None` lies in every nonempty intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplePoint {
    pub label: String,
    pub witness: Option<u64>,
}

impl SamplePoint {
    /// Whether the point lies in `U_α` for the patch set `mask`.
    pub fn lies_in(&self, mask: u64) -> bool {
        self.witness.map_or(true, |w| mask & w == mask)
    }
}

pub fn sample_points(cov: &CoverComplex, sections: Sections) -> Vec<SamplePoint> {
    match sections {
        Sections::Collapsed => vec![SamplePoint { label: "*".into(), witness: None }],
        Sections::Witnessed => cov
            .facets()
            .into_iter()
            .map(|m| SamplePoint { label: format!("•{}", cov.set_label(m)), witness: Some(m) })
            .collect(),
    }
}

/// Čech nerve over an index list whose entries stand for patch sets of `cov`; a tuple is a
/// simplex at a point when the union of its patch sets lies in `Σ` and contains the point.
/// Cells are `[point, i_0, …, i_n]`.
pub(crate) struct CechModel<'a> {
    pub cov: &'a CoverComplex,
    pub masks: Vec<u64>,
    pub labels: Vec<String>,
    pub points: &'a [SamplePoint],
}

impl<'a> CechModel<'a> {
    /// Indices are the patches.
    pub fn plain(cov: &'a CoverComplex, points: &'a [SamplePoint]) -> Self {
        let masks = (0..cov.patch_count()).map(|a| 1u64 << a).collect();
        CechModel { cov, masks, labels: cov.index_set().to_vec(), points }
    }

    /// Indices are the elements of `Σ`: the nerve of the closure.
    pub fn closed(cov: &'a CoverComplex, points: &'a [SamplePoint]) -> Self {
        let labels = cov.masks().iter().map(|&m| cov.set_label(m)).collect();
        CechModel { cov, masks: cov.masks().to_vec(), labels, points }
    }

    fn admits(&self, p: usize, union: u64) -> bool {
        self.cov.contains(union) && self.points[p].lies_in(union)
    }

    fn extend(&self, p: usize, len: usize, union: u64, cell: &mut Vec<u32>, out: &mut Vec<Box<[u32]>>) {
        if cell.len() == len + 1 {
            out.push(cell.clone().into_boxed_slice());
            return;
        }
        for (i, &m) in self.masks.iter().enumerate() {
            let u = union | m;
            if self.admits(p, u) {
                cell.push(i as u32);
                self.extend(p, len, u, cell, out);
                cell.pop();
            }
        }
    }
}

impl SimplicialModel for CechModel<'_> {
    type Cell = Box<[u32]>;

    fn cells(&self, n: usize) -> Result<Vec<Box<[u32]>>> {
        let mut out = Vec::new();
        for p in 0..self.points.len() {
            self.extend(p, n + 1, 0, &mut vec![p as u32], &mut out);
        }
        Ok(out)
    }

    fn face(&self, _n: usize, cell: &Box<[u32]>, i: usize) -> Box<[u32]> {
        let mut v = cell.to_vec();
        v.remove(i + 1);
        v.into_boxed_slice()
    }

    fn degeneracy(&self, _n: usize, cell: &Box<[u32]>, i: usize) -> Box<[u32]> {
        let mut v = cell.to_vec();
        v.insert(i + 1, cell[i + 1]);
        v.into_boxed_slice()
    }

    fn label(&self, _n: usize, cell: &Box<[u32]>) -> String {
        let parts: Vec<&str> = cell[1..].iter().map(|&i| self.labels[i as usize].as_str()).collect();
        let tuple = format!("({})", parts.join(","));
        if self.points.len() > 1 {
            format!("{tuple}@{}", self.points[cell[0] as usize].label)
        } else {
            tuple
        }
    }

    fn truncated_at(&self, _trunc: usize) -> bool {
        // two distinct admissible indices give nondegenerate simplices in every dimension
        (0..self.points.len()).any(|p| {
            self.masks.iter().enumerate().any(|(i, &a)| {
                self.masks[i + 1..].iter().any(|&b| self.admits(p, a | b))
            })
        })
    }
}

/// `ČU` with every nonempty intersection collapsed to a point: `n`-simplices are tuples
/// `(a_0, …, a_n)` with `{a_0, …, a_n} ∈ Σ`.
pub fn cech_nerve(cov: &CoverComplex, trunc: usize) -> Result<SimplicialSet> {
    Ok(cech_tabulated(cov, Sections::Collapsed, trunc)?.set.as_ref().clone())
}

pub fn cech_tabulated(cov: &CoverComplex, sections: Sections, trunc: usize) -> Result<Tabulated<Box<[u32]>>> {
    let points = sample_points(cov, sections);
    Tabulated::build(&CechModel::plain(cov, &points), trunc)
}

/// `ČU^cl`, the Čech nerve of [`closure`](crate::cover::closure), built directly over `Σ`.
pub fn cech_closure_tabulated(
    cov: &CoverComplex,
    sections: Sections,
    trunc: usize,
) -> Result<Tabulated<Box<[u32]>>> {
    let points = sample_points(cov, sections);
    Tabulated::build(&CechModel::closed(cov, &points), trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::complex::{builtin_cover, closure};
    use crate::homology::homology_of;

    #[test]
    fn nerve_homology_of_the_corpus() {
        let interval = cech_nerve(&builtin_cover("interval").unwrap(), 3).unwrap();
        assert_eq!(homology_of(&interval, 3).unwrap().betti()[..3], [1, 0, 0]);
        let circle = cech_nerve(&builtin_cover("circle").unwrap(), 3).unwrap();
        assert_eq!(homology_of(&circle, 3).unwrap().betti()[..3], [1, 1, 0]);
    }

    #[test]
    fn faces_delete_entries() {
        let cov = builtin_cover("circle").unwrap();
        let x = cech_nerve(&cov, 2).unwrap();
        let g = x.find("(0,1,0)").unwrap();
        let faces: Vec<&str> = x.generator_faces(g).iter().map(|r| x.label(r.gen)).collect();
        // d_1 is the degenerate (0,0) on the vertex (0)
        assert_eq!(faces, ["(1,0)", "(0)", "(0,1)"]);
        assert!(!x.generator_faces(g)[1].is_nondegenerate());
        assert!(x.find("(0,1,2)").is_none());
    }

    #[test]
    fn closure_nerve_is_the_nerve_of_the_closure() {
        let cov = builtin_cover("circle").unwrap();
        let direct = cech_closure_tabulated(&cov, Sections::Collapsed, 3).unwrap();
        let via = cech_nerve(&closure(&cov).unwrap(), 3).unwrap();
        assert_eq!(direct.set.as_ref(), &via);
    }

    #[test]
    fn witnessed_points_sit_in_facets() {
        let cov = builtin_cover("sphere").unwrap();
        let pts = sample_points(&cov, Sections::Witnessed);
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| p.lies_in(1) || p.lies_in(2)));
        assert!(!pts.iter().any(|p| p.lies_in(0b1111)));
    }
}
