use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::sparse::{SmithSummary, SparseMatrix};
use crate::simplicial::SimplicialSet;

/// Normalized integer chains up to degree `top`. `boundaries[k]` is `∂_k: C_k → C_{k-1}`
/// (`boundaries[0]` is the zero map to the zero group).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    /// Whether cells above `top` exist (or may exist), making `H_top` unknown.
    truncated: bool,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>, truncated: bool) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() != ranks.len() {
            return Err(Error::MalformedComplex("one boundary matrix per degree is required".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let rows = if k == 0 { 0 } else { ranks[k - 1] };
            if d.cols() != ranks[k] || d.rows() != rows {
                return Err(Error::MalformedComplex(format!("∂_{k} has the wrong shape")));
            }
        }
        Ok(ChainComplex { ranks, boundaries, truncated })
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k]
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Checks `∂_{k-1} ∘ ∂_k = 0` exactly.
    pub fn check_square_zero(&self) -> Result<()> {
        for k in 2..=self.top() {
            let dd = self.boundaries[k - 1]
                .mul(&self.boundaries[k])
                .ok_or_else(|| Error::MalformedComplex(format!("overflow in ∂_{}∂_{k}", k - 1)))?;
            if !dd.is_zero() {
                return Err(Error::MalformedComplex(format!("∂_{}∂_{k} ≠ 0", k - 1)));
            }
        }
        Ok(())
    }

    /// Euler characteristic from ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }
}

/// Normalized chains: basis the nondegenerate simplices, `∂ = Σ (-1)^i d_i` with degenerate
/// faces dropped.
pub fn normalized_chains(x: &SimplicialSet, trunc: usize) -> ChainComplex {
    let top = trunc.min(x.d_max());
    let truncated = x.is_truncated() || (top + 1..=x.d_max()).any(|d| x.generator_count(d) > 0);
    let ranks: Vec<usize> = (0..=top).map(|d| x.generator_count(d)).collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, ranks[0])];
    for k in 1..=top {
        let mut d = SparseMatrix::new(ranks[k - 1]);
        for g in x.generators(k) {
            let entries = x
                .generator_faces(g)
                .iter()
                .enumerate()
                .filter(|(_, f)| f.is_nondegenerate())
                .map(|(i, f)| (f.gen.index as u32, if i % 2 == 0 { 1 } else { -1 }))
                .collect();
            d.push_col(entries);
        }
        boundaries.push(d);
    }
    ChainComplex { ranks, boundaries, truncated }
}

/// Homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    #[serde(with = "big_list")]
    pub torsion: Vec<BigInt>,
    /// Set on the top degree of a truncated complex, whose outgoing boundary is unknown.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unreliable: bool,
}

/// Betti numbers and torsion coefficients per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyResult {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn degree(&self, k: usize) -> Option<&DegreeHomology> {
        self.degrees.get(k)
    }

    /// Betti numbers of degrees that are not flagged unreliable.
    pub fn reliable_betti(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| !d.unreliable).map(|d| d.betti).collect()
    }

    /// Whether `H_k` agrees (betti and torsion) with `other` for all `k ≤ through`; degrees
    /// missing on one side count as zero groups.
    pub fn agrees_through(&self, other: &HomologyResult, through: usize) -> bool {
        (0..=through).all(|k| group(self, k) == group(other, k))
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }
}

fn group(h: &HomologyResult, k: usize) -> (usize, &[BigInt]) {
    h.degree(k).map_or((0, &[][..]), |d| (d.betti, &d.torsion[..]))
}

impl fmt::Display for HomologyResult {
    /// `(Z, Z^2 ⊕ Z/2, 0)` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .map(|d| {
                let mut terms = Vec::new();
                match d.betti {
                    0 => {}
                    1 => terms.push("Z".to_string()),
                    b => terms.push(format!("Z^{b}")),
                }
                terms.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
                let mut s = if terms.is_empty() { "0".to_string() } else { terms.join(" ⊕ ") };
                if d.unreliable {
                    s.push('?');
                }
                s
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Homology of a chain complex: `betti_k = dim C_k − rank ∂_k − rank ∂_{k+1}`, torsion from the
/// invariant factors of `∂_{k+1}` that exceed one.
pub fn homology(c: &ChainComplex) -> Result<HomologyResult> {
    let summaries: Vec<SmithSummary> = c.boundaries.iter().map(SparseMatrix::smith_summary).collect();
    homology_from(c, &summaries)
}

pub(crate) fn homology_from(c: &ChainComplex, summaries: &[SmithSummary]) -> Result<HomologyResult> {
    let top = c.top();
    let mut degrees = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let out_rank = summaries[k].rank;
        let (in_rank, torsion) =
            if k < top { (summaries[k + 1].rank, summaries[k + 1].torsion.clone()) } else { (0, Vec::new()) };
        let betti = c.ranks[k]
            .checked_sub(out_rank + in_rank)
            .ok_or_else(|| Error::MalformedComplex(format!("ranks inconsistent in degree {k}")))?;
        degrees.push(DegreeHomology { degree: k, betti, torsion, unreliable: k == top && c.truncated });
    }
    Ok(HomologyResult { degrees })
}

/// Homology of `X` from its normalized chains up to `trunc`.
pub fn homology_of(x: &SimplicialSet, trunc: usize) -> Result<HomologyResult> {
    homology(&normalized_chains(x, trunc))
}

pub(crate) mod big_list {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Num {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<Num> = v
            .iter()
            .map(|x| i64::try_from(x).map_or_else(|_| Num::Text(x.to_string()), Num::Int))
            .collect();
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let nums = Vec::<Num>::deserialize(d)?;
        nums.into_iter()
            .map(|n| match n {
                Num::Int(i) => Ok(BigInt::from(i)),
                Num::Text(t) => t.parse().map_err(D::Error::custom),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary_simplex, minimal_torus, standard_simplex};

    #[test]
    fn boundary_triangle_is_a_circle() {
        let c = normalized_chains(&boundary_simplex(2), 3);
        assert_eq!(c.ranks(), &[3, 3]);
        let d1 = c.boundary(1);
        for j in 0..d1.cols() {
            assert_eq!(d1.col(j).iter().map(|e| e.1).sum::<i64>(), 0);
        }
        let h = homology(&c).unwrap();
        assert_eq!(h.betti(), vec![1, 1]);
        assert!(!h.degrees[1].unreliable);
    }

    #[test]
    fn simplices_are_acyclic() {
        for n in 0..=4 {
            let c = normalized_chains(&standard_simplex(n), n);
            c.check_square_zero().unwrap();
            let mut want = vec![0; n + 1];
            want[0] = 1;
            assert_eq!(homology(&c).unwrap().betti(), want);
        }
    }

    #[test]
    fn sphere_and_torus() {
        assert_eq!(homology_of(&boundary_simplex(3), 3).unwrap().betti(), vec![1, 0, 1]);
        assert_eq!(homology_of(&minimal_torus(), 3).unwrap().betti(), vec![1, 2, 1]);
    }

    #[test]
    fn truncation_flags_top_degree() {
        let h = homology_of(&boundary_simplex(3), 1).unwrap();
        assert_eq!(h.degrees.len(), 2);
        assert!(h.degrees[1].unreliable);
        assert_eq!(format!("{h}"), "(Z, Z^3?)");
    }
}
