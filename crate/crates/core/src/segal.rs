//! Spines, strict Segal maps of bisimplicial sets, the walking isomorphism and completeness
//! checks for finite categories.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::homology::{pi0, weq_certificate};
use crate::poset::{nerve, CategoryFunctor, FiniteCategory, Morphism};
use crate::simplicial::bisimplicial::BisimplicialModel;
use crate::simplicial::standard::{ordered_complex, standard_simplex};
use crate::simplicial::{external_product, BiRef, BisimplicialSet, SimplexRef, SimplicialMap, SimplicialSet};

/// `I^n ⊂ Δ^n`: the edges `{i, i+1}` glued along shared vertices, with its inclusion.
pub fn spine(n: usize) -> Result<(SimplicialSet, SimplicialMap)> {
    if n == 0 {
        return Err(invalid("spine(n) needs n ≥ 1"));
    }
    let mut cells: std::collections::BTreeSet<Vec<usize>> = (0..=n).map(|i| vec![i]).collect();
    cells.extend((1..=n).map(|i| vec![i - 1, i]));
    let spine = Arc::new(ordered_complex(&cells, 1)?);
    let simplex = Arc::new(standard_simplex(n));
    let inclusion = SimplicialMap::from_fn(spine.clone(), simplex.clone(), |g| {
        SimplexRef::generator(simplex.find(spine.label(g)).expect("spine cells are faces of Δ^n"))
    })?;
    Ok((spine.as_ref().clone(), inclusion))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalLevel {
    pub n: usize,
    /// Vertical degree of the row checked.
    pub row: usize,
    pub cells: usize,
    /// Size of `X_1 ×_{X_0} ⋯ ×_{X_0} X_1`.
    pub fiber_product: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl SegalLevel {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SegalReport {
    pub passed: bool,
    pub levels: Vec<SegalLevel>,
    /// First failing `(n, row)`.
    pub first_failure: Option<(usize, usize)>,
}

/// The spine of a horizontal `n`-cell: edges `{j-1, j}` for `j = 1..=n`.
fn spine_edges(x: &BisimplicialSet, n: usize, row: usize, cell: &BiRef) -> Vec<BiRef> {
    (1..=n)
        .map(|j| {
            let mut e = cell.clone();
            let mut m = n;
            for v in (0..=n).rev() {
                if v != j && v != j - 1 {
                    e = BisimplicialModel::h_face(x, m, row, &e, v);
                    m -= 1;
                }
            }
            e
        })
        .collect()
}

/// Strict Segal condition: for `2 ≤ n ≤ n_max` and every row `k ≤ rows`, whether
/// `X_{n,k} → X_{1,k} ×_{X_{0,k}} ⋯ ×_{X_{0,k}} X_{1,k}` is a bijection.
pub fn segal_check(x: &BisimplicialSet, n_max: usize, rows: usize) -> Result<SegalReport> {
    let mut levels = Vec::new();
    for row in 0..=rows {
        let edges = x.cells(1, row)?;
        // out-edges by source vertex d_1
        let mut from: HashMap<BiRef, Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            from.entry(x.h_face(e, 1)).or_default().push(i);
        }
        let targets: Vec<BiRef> = edges.iter().map(|e| x.h_face(e, 0)).collect();
        // composable strings of edge indices, extended one edge at a time
        let mut strings: Vec<Vec<usize>> = (0..edges.len()).map(|i| vec![i]).collect();
        for n in 2..=n_max {
            strings = strings
                .iter()
                .flat_map(|s| {
                    let end = &targets[*s.last().expect("nonempty")];
                    from.get(end).into_iter().flatten().map(move |&e| {
                        let mut t = s.clone();
                        t.push(e);
                        t
                    })
                })
                .collect();
            let index: HashMap<Vec<&BiRef>, usize> =
                strings.iter().enumerate().map(|(i, s)| (s.iter().map(|&e| &edges[e]).collect(), i)).collect();
            let cells = x.cells(n, row)?;
            let mut hit = vec![false; strings.len()];
            let mut injective = true;
            for c in &cells {
                let sp = spine_edges(x, n, row, c);
                match index.get(&sp.iter().collect::<Vec<_>>()) {
                    Some(&i) => injective &= !std::mem::replace(&mut hit[i], true),
                    None => unreachable!("spines of cells are composable"),
                }
            }
            levels.push(SegalLevel {
                n,
                row,
                cells: cells.len(),
                fiber_product: strings.len(),
                injective,
                surjective: hit.iter().all(|h| *h),
            });
        }
    }
    let first_failure = levels.iter().find(|l| !l.bijective()).map(|l| (l.n, l.row));
    Ok(SegalReport { passed: first_failure.is_none(), levels, first_failure })
}

/// The groupoid `J` with objects `x`, `y` and one isomorphism `f: x → y`.
pub fn walking_iso() -> FiniteCategory {
    let m = |name: &str, source, target| Morphism { name: name.into(), source, target };
    let morphisms = vec![m("id_x", 0, 0), m("id_y", 1, 1), m("f", 0, 1), m("f⁻¹", 1, 0)];
    FiniteCategory::with_unit_laws(vec!["x".into(), "y".into()], morphisms, vec![0, 1], &[(3, 2, 0), (2, 3, 1)])
        .expect("J is a groupoid")
}

/// `N(J)` up to `trunc`.
pub fn walking_iso_nerve(trunc: usize) -> SimplicialSet {
    nerve(&walking_iso(), trunc)
}

fn inverse_of(c: &FiniteCategory, f: usize) -> Option<usize> {
    let m = c.morphism(f);
    c.hom(m.target, m.source).iter().map(|&g| g as usize).find(|&g| {
        c.compose(g, f) == Some(c.identity(m.source)) && c.compose(f, g) == Some(c.identity(m.target))
    })
}

/// Non-identity morphisms with a two-sided inverse, in morphism order. Identities are always
/// invertible and are not listed.
pub fn invertibles(c: &FiniteCategory) -> Vec<usize> {
    (0..c.morphism_count()).filter(|&f| !c.is_identity(f) && inverse_of(c, f).is_some()).collect()
}

/// The maximal subgroupoid.
pub fn core(c: &FiniteCategory) -> Result<(FiniteCategory, Vec<usize>)> {
    let keep: Vec<usize> = (0..c.morphism_count()).filter(|&f| c.is_identity(f) || inverse_of(c, f).is_some()).collect();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let morphisms = keep.iter().map(|&f| c.morphism(f).clone()).collect();
    let identities = (0..c.object_count()).map(|a| pos[&c.identity(a)]).collect();
    let compose: Vec<(usize, usize, usize)> = c
        .composition_table()
        .into_iter()
        .filter_map(|(g, f, gf)| Some((*pos.get(&g)?, *pos.get(&f)?, pos[&gf])))
        .collect();
    Ok((FiniteCategory::new(c.objects().to_vec(), morphisms, identities, &compose)?, keep))
}

/// `Fun([1], C)`: objects are morphisms of `C`, a morphism `f → f'` is a commuting square
/// `(a, b)` with `f' ∘ a = b ∘ f`.
pub fn arrow_category(c: &FiniteCategory) -> Result<FiniteCategory> {
    Ok(arrow_category_with_squares(c)?.0)
}

/// [`arrow_category`] with the square `(a, b)` behind each morphism.
pub fn arrow_category_with_squares(c: &FiniteCategory) -> Result<(FiniteCategory, Vec<(usize, usize)>)> {
    let objects: Vec<String> = c.morphisms().iter().map(|m| m.name.clone()).collect();
    let mut squares = Vec::new();
    let mut morphisms = Vec::new();
    for (f, mf) in c.morphisms().iter().enumerate() {
        for (g, mg) in c.morphisms().iter().enumerate() {
            for &a in c.hom(mf.source, mg.source) {
                for &b in c.hom(mf.target, mg.target) {
                    let (a, b) = (a as usize, b as usize);
                    if c.compose(g, a) == c.compose(b, f) {
                        morphisms.push(Morphism {
                            name: format!("({},{}):{}→{}", c.morphism(a).name, c.morphism(b).name, mf.name, mg.name),
                            source: f,
                            target: g,
                        });
                        squares.push((a, b));
                    }
                }
            }
        }
    }
    let index: HashMap<(usize, usize, usize, usize), usize> = morphisms
        .iter()
        .zip(&squares)
        .enumerate()
        .map(|(i, (m, &(a, b)))| ((m.source, m.target, a, b), i))
        .collect();
    let identities = (0..c.morphism_count())
        .map(|f| {
            let m = c.morphism(f);
            index[&(f, f, c.identity(m.source), c.identity(m.target))]
        })
        .collect();
    let mut compose = Vec::new();
    for (s, ms) in morphisms.iter().enumerate() {
        for (t, mt) in morphisms.iter().enumerate() {
            if ms.target == mt.source {
                let (a, b) = squares[s];
                let (a2, b2) = squares[t];
                let a3 = c.compose(a2, a).expect("composable");
                let b3 = c.compose(b2, b).expect("composable");
                compose.push((t, s, index[&(ms.source, mt.target, a3, b3)]));
            }
        }
    }
    Ok((FiniteCategory::new(objects, morphisms, identities, &compose)?, squares))
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletenessReport {
    /// Every morphism is invertible.
    pub groupoid: bool,
    pub invertibles: Vec<String>,
    pub non_invertible: Vec<String>,
    /// Whether `s_0: X_0 → X_1` passes the weak-equivalence certificate on the classifying
    /// diagram `X_n = N(core Fun([n], C))`, compared through `trunc − 1`.
    pub degeneracy_equivalence: bool,
    pub components: (usize, usize),
}

/// Completeness of `C`: the groupoid verdict (`X_weq = X_1`) together with the degeneracy
/// condition on the classifying diagram of `C`, where `X_0 = N(core C)` and
/// `X_1 = N(core Fun([1], C))`.
pub fn completeness_check(c: &FiniteCategory, trunc: usize) -> Result<CompletenessReport> {
    let inv = invertibles(c);
    let non_invertible: Vec<String> = (0..c.morphism_count())
        .filter(|&f| !c.is_identity(f) && !inv.contains(&f))
        .map(|f| c.morphism(f).name.clone())
        .collect();
    let (x0, keep0) = core(c)?;
    let (arrows, squares) = arrow_category_with_squares(c)?;
    let (x1, keep1) = core(&arrows)?;
    let pos1: HashMap<usize, usize> = keep1.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    // s_0 sends c to id_c and an isomorphism u to the square (u, u)
    let objects: Vec<usize> = (0..c.object_count()).map(|a| c.identity(a)).collect();
    let morphisms = keep0
        .iter()
        .map(|&u| {
            let m = c.morphism(u);
            let (s, t) = (c.identity(m.source), c.identity(m.target));
            let square = arrows
                .hom(s, t)
                .iter()
                .map(|&q| q as usize)
                .find(|&q| squares[q] == (u, u))
                .expect("the square (u, u) exists");
            pos1[&square]
        })
        .collect();
    let s0 = CategoryFunctor::new(Arc::new(x0), Arc::new(x1), objects, morphisms)?;
    let map = s0.nerve_map(trunc)?;
    let cert = weq_certificate(&map, trunc)?;
    let components = (pi0(map.source()).0, pi0(map.target()).0);
    Ok(CompletenessReport {
        groupoid: non_invertible.is_empty(),
        invertibles: inv.iter().map(|&f| c.morphism(f).name.clone()).collect(),
        non_invertible,
        degeneracy_equivalence: cert.passed,
        components,
    })
}

/// Segal levels of `N(C) ⊠ Δ^0` and the completeness verdict of `C`.
#[derive(Clone, Debug, Serialize)]
pub struct CategorySegalReport {
    pub segal: SegalReport,
    pub completeness: CompletenessReport,
}

pub fn category_report(c: &FiniteCategory, n_max: usize, trunc: usize) -> Result<CategorySegalReport> {
    let x = external_product(&nerve(c, n_max), &SimplicialSet::point());
    Ok(CategorySegalReport { segal: segal_check(&x, n_max, 0)?, completeness: completeness_check(c, trunc)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_of;
    use crate::poset::FinitePoset;
    use crate::simplicial::{are_isomorphic, boundary_simplex};

    #[test]
    fn spines() {
        let (s1, _) = spine(1).unwrap();
        assert!(are_isomorphic(&s1, &standard_simplex(1)));
        let (s4, inc) = spine(4).unwrap();
        assert_eq!(s4.generator_counts(), vec![5, 4]);
        let hit: Vec<&str> = s4.generators(1).map(|g| inc.target().label(inc.image(g).gen)).collect();
        assert_eq!(hit, ["[0,1]", "[1,2]", "[2,3]", "[3,4]"]);
    }

    #[test]
    fn nerves_are_strictly_segal() {
        let c = FiniteCategory::from_poset(&FinitePoset::ordinal(2));
        let x = external_product(&nerve(&c, 4), &SimplicialSet::point());
        let r = segal_check(&x, 4, 1).unwrap();
        assert!(r.passed, "{:?}", r.levels);
    }

    #[test]
    fn boundary_lacks_its_filler() {
        let x = external_product(&boundary_simplex(2), &SimplicialSet::point());
        let r = segal_check(&x, 3, 0).unwrap();
        assert_eq!(r.first_failure, Some((2, 0)));
        assert!(!r.levels[0].surjective);
    }

    #[test]
    fn walking_iso_is_contractible() {
        let j = walking_iso_nerve(3);
        assert_eq!(j.generator_counts(), vec![2, 2, 2, 2]);
        assert_eq!(homology_of(&j, 3).unwrap().betti()[..3], [1, 0, 0]);
        assert_eq!(invertibles(&walking_iso()), vec![2, 3]);
    }

    #[test]
    fn completeness_of_small_categories() {
        let j = completeness_check(&walking_iso(), 2).unwrap();
        assert!(j.groupoid && j.degeneracy_equivalence);
        let one = completeness_check(&FiniteCategory::from_poset(&FinitePoset::ordinal(1)), 2).unwrap();
        assert!(!one.groupoid && !one.degeneracy_equivalence);
        assert!(one.invertibles.is_empty());
        assert_eq!(one.components, (2, 3));
    }
}
