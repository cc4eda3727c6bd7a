use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::homology::{homology_of, HomologyResult};
use crate::poset::order::set_label;
use crate::poset::{FiniteCategory, FinitePoset};
use crate::simplicial::{boundary_simplex, minimal_torus, GenId, SimplexRef, SimplicialSet};

/// Expected homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceGroup {
    pub betti: usize,
    #[serde(with = "crate::homology::chains::big_list")]
    pub torsion: Vec<BigInt>,
}

impl ReferenceGroup {
    pub fn from_homology(h: &HomologyResult) -> Vec<ReferenceGroup> {
        h.degrees
            .iter()
            .filter(|d| !d.unreliable)
            .map(|d| ReferenceGroup { betti: d.betti, torsion: d.torsion.clone() })
            .collect()
    }
}

/// The combinatorics of a good cover: patches `A` and the family `Σ` of subsets with nonempty
/// intersection. `Σ` contains every singleton and is closed under nonempty subsets.
///
/// Subsets are bitmasks over `A` (at most 64 patches), ordered by size and then
/// lexicographically; that order indexes `Σ` everywhere below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverComplex {
    index_set: Vec<String>,
    nonempty: Vec<u64>,
    pos: FxHashMap<u64, u32>,
    reference: Option<Vec<ReferenceGroup>>,
}

pub(crate) fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&a| mask & (1 << a) != 0).collect()
}

/// Vertex `k` of an `n`-simplex is `d_0^k d_n^{n-k}` of it.
fn vertices_of(x: &SimplicialSet, gen: GenId) -> Vec<usize> {
    let n = gen.dim;
    (0..=n)
        .map(|k| {
            let mut r = SimplexRef::generator(gen);
            for d in (k + 1..=n).rev() {
                r = x.face(&r, d).expect("face of a generator");
            }
            for _ in 0..k {
                r = x.face(&r, 0).expect("face of a generator");
            }
            r.gen.index
        })
        .collect()
}

fn subset_order(masks: &mut [u64]) {
    masks.sort_by_key(|&m| (m.count_ones(), mask_elements(m)));
}

impl CoverComplex {
    /// Validates singletons and downward closure.
    pub fn new(index_set: Vec<String>, nonempty: &[Vec<usize>]) -> Result<Self> {
        let n = index_set.len();
        if n == 0 {
            return Err(invalid("a cover needs at least one patch"));
        }
        if n > 64 {
            return Err(invalid("covers with more than 64 patches are not supported"));
        }
        let mut seen = std::collections::HashSet::new();
        if index_set.iter().any(|l| !seen.insert(l)) {
            return Err(invalid("patch labels must be distinct"));
        }
        let mut masks = Vec::with_capacity(nonempty.len());
        for s in nonempty {
            if s.is_empty() {
                return Err(invalid("the empty family is not a patch intersection"));
            }
            let mut m = 0u64;
            for &a in s {
                if a >= n {
                    return Err(invalid(format!("patch index {a} out of range")));
                }
                m |= 1 << a;
            }
            masks.push(m);
        }
        subset_order(&mut masks);
        masks.dedup();
        let pos: FxHashMap<u64, u32> = masks.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        for a in 0..n {
            if !pos.contains_key(&(1 << a)) {
                return Err(invalid(format!("patch `{}` is missing from the nonempty family", index_set[a])));
            }
        }
        for &m in &masks {
            for a in mask_elements(m) {
                let sub = m & !(1 << a);
                if sub != 0 && !pos.contains_key(&sub) {
                    return Err(invalid(format!(
                        "nonempty family is not downward closed: {} lacks {}",
                        Self::label_with(&index_set, m),
                        Self::label_with(&index_set, sub)
                    )));
                }
            }
        }
        Ok(CoverComplex { index_set, nonempty: masks, pos, reference: None })
    }

    /// The downward closure of `facets`.
    pub fn generated(index_set: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let mut all = Vec::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for size in 1..=f.len() {
                all.extend(itertools::Itertools::combinations(f.iter().copied(), size));
            }
        }
        all.extend((0..index_set.len()).map(|a| vec![a]));
        Self::new(index_set, &all)
    }

    /// The cover of a simplicial complex by open vertex stars: patches are vertices and a set
    /// of vertices meets iff it spans a simplex.
    pub fn star_cover(x: &SimplicialSet) -> Result<Self> {
        let labels = x
            .labels(0)
            .iter()
            .map(|l| l.strip_prefix('[').and_then(|l| l.strip_suffix(']')).unwrap_or(l).to_string())
            .collect();
        let mut facets = Vec::new();
        for gen in x.all_generators() {
            let vs = vertices_of(x, gen);
            let mut sorted = vs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vs.len() {
                return Err(invalid(format!("`{}` has repeated vertices; not a simplicial complex", x.label(gen))));
            }
            facets.push(sorted);
        }
        let cov = Self::generated(labels, &facets)?;
        let simplices: usize = (0..=x.d_max()).map(|d| x.generator_count(d)).sum();
        if cov.len() != simplices {
            return Err(invalid("distinct simplices share a vertex set; not a simplicial complex"));
        }
        Ok(cov)
    }

    pub fn with_reference(mut self, reference: Vec<ReferenceGroup>) -> Self {
        self.reference = Some(reference);
        self
    }

    pub fn reference(&self) -> Option<&[ReferenceGroup]> {
        self.reference.as_deref()
    }

    pub fn index_set(&self) -> &[String] {
        &self.index_set
    }

    pub fn patch_count(&self) -> usize {
        self.index_set.len()
    }

    /// `|Σ|`.
    pub fn len(&self) -> usize {
        self.nonempty.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nonempty.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.nonempty
    }

    pub fn mask(&self, i: usize) -> u64 {
        self.nonempty[i]
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.pos.contains_key(&mask)
    }

    pub fn position(&self, mask: u64) -> Option<usize> {
        self.pos.get(&mask).map(|&i| i as usize)
    }

    /// Elements of `Σ`, as sorted patch indices.
    pub fn nonempty_sets(&self) -> Vec<Vec<usize>> {
        self.nonempty.iter().map(|&m| mask_elements(m)).collect()
    }

    fn label_with(index_set: &[String], mask: u64) -> String {
        let names: Vec<&str> = mask_elements(mask).into_iter().map(|a| index_set[a].as_str()).collect();
        set_label(&names)
    }

    pub fn set_label(&self, mask: u64) -> String {
        Self::label_with(&self.index_set, mask)
    }

    /// Maximal elements of `Σ`, in `Σ` order.
    pub fn facets(&self) -> Vec<u64> {
        self.nonempty
            .iter()
            .copied()
            .filter(|&m| !self.nonempty.iter().any(|&o| o != m && o & m == m))
            .collect()
    }

    /// `Σ` ordered by inclusion.
    pub fn poset(&self) -> FinitePoset {
        let labels = self.nonempty.iter().map(|&m| self.set_label(m)).collect();
        let mut rel = Vec::new();
        for (i, &a) in self.nonempty.iter().enumerate() {
            for (j, &b) in self.nonempty.iter().enumerate() {
                if a & b == a {
                    rel.push((i, j));
                }
            }
        }
        FinitePoset::new(labels, &rel).expect("inclusion is a partial order")
    }

    pub fn category(&self) -> FiniteCategory {
        FiniteCategory::from_poset(&self.poset())
    }

    /// Whether some pair of distinct patches meets.
    pub fn has_overlaps(&self) -> bool {
        self.nonempty.iter().any(|m| m.count_ones() > 1)
    }

    /// Relabels patches along a permutation: patch `a` becomes patch `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.patch_count();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(invalid("not a permutation of the patches"));
        }
        let mut labels = vec![String::new(); n];
        for a in 0..n {
            labels[perm[a]] = self.index_set[a].clone();
        }
        let sets: Vec<Vec<usize>> =
            self.nonempty_sets().into_iter().map(|s| s.into_iter().map(|a| perm[a]).collect()).collect();
        let mut out = Self::new(labels, &sets)?;
        out.reference = self.reference.clone();
        Ok(out)
    }
}

/// The cover indexed by `Σ` itself: a family of elements of `Σ` meets iff its union lies in `Σ`.
pub fn closure(cov: &CoverComplex) -> Result<CoverComplex> {
    if cov.len() > 64 {
        return Err(invalid(format!("closure needs |Σ| ≤ 64, got {}", cov.len())));
    }
    let masks = cov.masks();
    let mut families = Vec::new();
    // families in increasing index order, pruned once the union leaves Σ
    fn extend(masks: &[u64], cov: &CoverComplex, start: usize, family: &mut Vec<usize>, union: u64, out: &mut Vec<Vec<usize>>) {
        for next in start..masks.len() {
            let u = union | masks[next];
            if cov.contains(u) {
                family.push(next);
                out.push(family.clone());
                extend(masks, cov, next + 1, family, u, out);
                family.pop();
            }
        }
    }
    extend(masks, cov, 0, &mut Vec::new(), 0, &mut families);
    let labels = masks.iter().map(|&m| cov.set_label(m)).collect();
    let mut out = CoverComplex::new(labels, &families)?;
    out.reference = cov.reference.clone();
    Ok(out)
}

/// Minimal triangulations whose star covers make up the built-in corpus.
pub fn reference_spaces() -> Vec<(&'static str, SimplicialSet)> {
    vec![
        ("interval", crate::simplicial::standard_simplex(1)),
        ("circle", boundary_simplex(2)),
        ("sphere", boundary_simplex(3)),
        ("torus", minimal_torus()),
    ]
}

/// A built-in cover (`interval`, `circle`, `sphere`, `torus`) with its reference homology computed
/// from the triangulation.
pub fn builtin_cover(name: &str) -> Result<CoverComplex> {
    let (_, x) = reference_spaces()
        .into_iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| invalid(format!("no built-in cover named `{name}`")))?;
    let h = homology_of(&x, x.d_max())?;
    Ok(CoverComplex::star_cover(&x)?.with_reference(ReferenceGroup::from_homology(&h)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|a| a.to_string()).collect()
    }

    #[test]
    fn validation() {
        assert!(CoverComplex::new(labels(2), &[vec![0]]).is_err());
        assert!(CoverComplex::new(labels(3), &[vec![0], vec![1], vec![2], vec![0, 1, 2]]).is_err());
        assert!(CoverComplex::new(labels(2), &[vec![0], vec![1], vec![0, 1]]).is_ok());
        assert!(CoverComplex::new(Vec::new(), &[]).is_err());
    }

    #[test]
    fn star_covers_of_the_corpus() {
        let circle = builtin_cover("circle").unwrap();
        assert_eq!(circle.len(), 6);
        assert_eq!(circle.facets().len(), 3);
        let sphere = builtin_cover("sphere").unwrap();
        assert_eq!(sphere.len(), 14);
        let betti: Vec<usize> = sphere.reference().unwrap().iter().map(|g| g.betti).collect();
        assert_eq!(betti, vec![1, 0, 1]);
        let torus = builtin_cover("torus").unwrap();
        assert_eq!(torus.len(), 42);
        let betti: Vec<usize> = torus.reference().unwrap().iter().map(|g| g.betti).collect();
        assert_eq!(betti, vec![1, 2, 1]);
    }

    #[test]
    fn closure_of_the_interval() {
        let cov = builtin_cover("interval").unwrap();
        let cl = closure(&cov).unwrap();
        assert_eq!(cl.patch_count(), 3);
        // every family has union in Σ = all nonempty subsets of {0, 1}
        assert_eq!(cl.len(), 7);
    }

    #[test]
    fn closure_flags_follow_unions() {
        let cov = builtin_cover("circle").unwrap();
        let cl = closure(&cov).unwrap();
        for &fam in cl.masks() {
            let union = mask_elements(fam).into_iter().fold(0, |u, i| u | cov.mask(i));
            assert!(cov.contains(union));
        }
        // {0} and {1,2} do not meet
        let a = cov.position(1).unwrap();
        let b = cov.position(0b110).unwrap();
        assert!(!cl.contains((1 << a) | (1 << b)));
    }
}
