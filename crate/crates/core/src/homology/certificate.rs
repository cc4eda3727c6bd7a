use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::homology::chains::{homology, ChainComplex, HomologyResult};
use crate::homology::sparse::SparseMatrix;
use crate::simplicial::{SimplicialMap, SimplicialSet};

pub const PROXY_DISCLAIMER: &str = "necessary-condition certificate: a pi0 bijection and integer \
homology isomorphisms below the truncation; this does not prove a weak equivalence";

/// Connected components: number of components and the component of each vertex.
pub fn pi0(x: &SimplicialSet) -> (usize, Vec<usize>) {
    let n = x.generator_count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    if x.d_max() >= 1 {
        for e in x.generators(1) {
            let f = x.generator_faces(e);
            let (a, b) = (find(&mut parent, f[0].gen.index), find(&mut parent, f[1].gen.index));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut comp = vec![0; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        comp[v] = label[r];
    }
    (count, comp)
}

/// Whether `f` induces a bijection on connected components.
pub fn pi0_bijection(f: &SimplicialMap) -> bool {
    let (nx, cx) = pi0(f.source());
    let (ny, cy) = pi0(f.target());
    if nx != ny {
        return false;
    }
    let mut image = vec![usize::MAX; nx];
    for g in f.source().generators(0) {
        let y = f.image(g).gen.index;
        image[cx[g.index]] = cy[y];
    }
    let mut hit = vec![false; ny];
    image.iter().all(|&c| c != usize::MAX && !std::mem::replace(&mut hit[c], true))
}

/// Normalized chains up to `top`, padded with zero groups above `d_max`.
fn padded_chains(x: &SimplicialSet, top: usize) -> ChainComplex {
    let c = crate::homology::chains::normalized_chains(x, top);
    if c.top() == top {
        return c;
    }
    let mut ranks = c.ranks().to_vec();
    let mut bounds: Vec<SparseMatrix> = (0..=c.top()).map(|k| c.boundary(k).clone()).collect();
    while ranks.len() <= top {
        bounds.push(SparseMatrix::zeros(*ranks.last().expect("nonempty"), 0));
        ranks.push(0);
    }
    ChainComplex::new(ranks, bounds, c.is_truncated()).expect("padding keeps shapes")
}

/// Degree up to which the chains of `x` are exact when asked for `trunc`.
fn reliable_top(x: &SimplicialSet, trunc: usize) -> usize {
    if x.d_max() >= trunc || !x.is_truncated() {
        trunc
    } else {
        x.d_max()
    }
}

/// `f_k: C_k(X) → C_k(Y)` on normalized chains for `k ≤ top`.
pub fn chain_map(f: &SimplicialMap, top: usize) -> Vec<SparseMatrix> {
    let (x, y) = (f.source(), f.target());
    (0..=top)
        .map(|k| {
            let mut m = SparseMatrix::new(if k <= y.d_max() { y.generator_count(k) } else { 0 });
            if k <= x.d_max() {
                for g in x.generators(k) {
                    let r = f.image(g);
                    m.push_col(if r.is_nondegenerate() { vec![(r.gen.index as u32, 1)] } else { Vec::new() });
                }
            }
            m
        })
        .collect()
}

/// The effect of a simplicial map on homology through `degrees - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    /// Degrees `0..degrees` are certified.
    pub degrees: usize,
    #[serde(skip)]
    pub matrices: Vec<SparseMatrix>,
    pub source: HomologyResult,
    pub target: HomologyResult,
    pub cone: HomologyResult,
    /// `iso_through[k]`: the induced map is an isomorphism in every degree `≤ k`.
    pub iso_through: Vec<bool>,
}

/// Computes the induced map on homology via the mapping cone
/// `Cone_k = C_{k-1}(X) ⊕ C_k(Y)`, `∂(x, y) = (−∂x, f x + ∂y)`.
///
/// `f_*` is an isomorphism in all degrees `≤ k` iff `H_j(Cone) = 0` for `j ≤ k` and
/// `H_k(X) ≅ H_k(Y)` abstractly (surjective endomorphisms of finitely generated abelian groups
/// are injective); every group involved is determined by chains up to `k + 1`.
pub fn induced_map(f: &SimplicialMap, trunc: usize) -> Result<InducedMap> {
    if trunc == 0 {
        return Err(invalid("induced maps need trunc ≥ 1"));
    }
    let (x, y) = (f.source(), f.target());
    let t = trunc.min(reliable_top(x, trunc)).min(reliable_top(y, trunc));
    if t == 0 {
        return Err(invalid("source or target is truncated at dimension 0"));
    }
    let cx = padded_chains(x, t);
    let cy = padded_chains(y, t);
    let fm = chain_map(f, t);
    for k in 1..=t {
        let lhs = cy.boundary(k).mul(&fm[k]);
        let rhs = fm[k - 1].mul(cx.boundary(k));
        if lhs.is_none() || lhs != rhs {
            return Err(Error::Invariant(format!("∂f ≠ f∂ in degree {k}: not a chain map")));
        }
    }
    let mut ranks = Vec::with_capacity(t + 1);
    let mut bounds = Vec::with_capacity(t + 1);
    for k in 0..=t {
        let rx_prev = if k == 0 { 0 } else { cx.ranks()[k - 1] };
        ranks.push(rx_prev + cy.ranks()[k]);
        if k == 0 {
            bounds.push(SparseMatrix::zeros(0, cy.ranks()[0]));
            continue;
        }
        let rx_prev2 = if k < 2 { 0 } else { cx.ranks()[k - 2] };
        let x_part = cx.boundary(k - 1).scaled(-1).vcat(&fm[k - 1]);
        let y_part = SparseMatrix::zeros(rx_prev2, cy.ranks()[k]).vcat(cy.boundary(k));
        bounds.push(x_part.hcat(&y_part));
    }
    let cone = ChainComplex::new(ranks, bounds, true)?;
    let (hx, hy, hc) = (homology(&cx)?, homology(&cy)?, homology(&cone)?);
    let mut iso_through = Vec::with_capacity(t);
    let mut cone_acyclic = true;
    for k in 0..t {
        let dc = &hc.degrees[k];
        cone_acyclic &= dc.betti == 0 && dc.torsion.is_empty();
        let (a, b) = (&hx.degrees[k], &hy.degrees[k]);
        iso_through.push(cone_acyclic && a.betti == b.betti && a.torsion == b.torsion);
    }
    Ok(InducedMap { degrees: t, matrices: fm, source: hx, target: hy, cone: hc, iso_through })
}

/// Verdict of the desk-scale weak-equivalence proxy.
#[derive(Clone, Debug, Serialize)]
pub struct WeqCertificate {
    pub passed: bool,
    pub pi0_bijection: bool,
    /// Degrees `0..degrees` are covered.
    pub degrees: usize,
    /// Per degree: isomorphism in this and every lower degree.
    pub iso_through: Vec<bool>,
    /// Lowest degree at which the homology check fails.
    pub failed_degree: Option<usize>,
    pub source_homology: HomologyResult,
    pub target_homology: HomologyResult,
    pub disclaimer: &'static str,
}

/// π0 bijection plus homology isomorphism in every degree `≤ trunc − 1`.
pub fn weq_certificate(f: &SimplicialMap, trunc: usize) -> Result<WeqCertificate> {
    let induced = induced_map(f, trunc)?;
    let pi0_ok = pi0_bijection(f);
    let failed_degree = induced.iso_through.iter().position(|ok| !ok);
    Ok(WeqCertificate {
        passed: pi0_ok && failed_degree.is_none(),
        pi0_bijection: pi0_ok,
        degrees: induced.degrees,
        iso_through: induced.iso_through,
        failed_degree,
        source_homology: induced.source,
        target_homology: induced.target,
        disclaimer: PROXY_DISCLAIMER,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::simplicial::standard::{boundary_simplex, standard_simplex};
    use crate::simplicial::{DegeneracyWord, GenId, SimplexRef};

    fn collapse(x: Arc<SimplicialSet>) -> SimplicialMap {
        let pt = Arc::new(standard_simplex(0));
        let v = GenId { dim: 0, index: 0 };
        SimplicialMap::from_fn(x, pt, |g| SimplexRef::new(DegeneracyWord::normalize(&vec![0; g.dim]), v)).unwrap()
    }

    #[test]
    fn identity_passes() {
        let x = Arc::new(boundary_simplex(3));
        let cert = weq_certificate(&SimplicialMap::identity(x), 3).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.iso_through, vec![true, true, true]);
    }

    #[test]
    fn collapsing_a_circle_fails_in_degree_one() {
        let cert = weq_certificate(&collapse(Arc::new(boundary_simplex(2))), 2).unwrap();
        assert!(!cert.passed);
        assert!(cert.pi0_bijection);
        assert_eq!(cert.failed_degree, Some(1));
    }

    #[test]
    fn collapsing_a_simplex_passes() {
        let cert = weq_certificate(&collapse(Arc::new(standard_simplex(2))), 3).unwrap();
        assert!(cert.passed, "{cert:?}");
    }

    #[test]
    fn components() {
        let two_points = crate::simplicial::standard::boundary_simplex(1);
        assert_eq!(pi0(&two_points).0, 2);
        assert_eq!(pi0(&boundary_simplex(2)).0, 1);
    }
}
