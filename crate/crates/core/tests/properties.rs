use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use nervekit::cover::{cech_nerve, closure, rho_a, sigma_a, CoverComplex};
use nervekit::homology::{homology_of, smith_normal_form, IntMatrix};
use nervekit::json::SimplicialSetJson;
use nervekit::simplicial::standard::{downward_closure, ordered_complex};
use nervekit::simplicial::{find_isomorphism, is_isomorphism, DegeneracyWord, SimplicialSet};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// Random ordered simplicial complex on at most 6 vertices, dimension at most 3.
fn complex() -> impl Strategy<Value = SimplicialSet> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=4), 1..6).prop_map(|facets| {
        let simplices = downward_closure(facets.into_iter().map(|f| f.into_iter().collect::<Vec<_>>()));
        ordered_complex(&simplices, 3).expect("closed")
    })
}

/// Random cover complex on 2 to 4 patches.
fn cover() -> impl Strategy<Value = CoverComplex> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 2..=n), 0..4).prop_map(move |facets| {
            let mut all: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
            all.extend(facets.into_iter().map(|f| f.into_iter().collect()));
            CoverComplex::generated((0..n).map(|a| a.to_string()).collect(), &all).expect("cover")
        })
    })
}

/// `s_j` applied to a monotone surjection `θ: [n + 1] → [base]` given as its value list.
fn degenerate(theta: &[usize], j: usize) -> Vec<usize> {
    let mut out = theta.to_vec();
    out.insert(j, theta[j]);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_normalize_like_surjections(base in 0usize..4, raw in prop::collection::vec(0usize..8, 0..6)) {
        // apply s_{raw[k]} innermost first, clamping each index to the current dimension
        let mut theta: Vec<usize> = (0..=base).collect();
        let mut seq = Vec::new();
        for r in raw.iter().rev() {
            let j = r % theta.len();
            theta = degenerate(&theta, j);
            seq.insert(0, j);
        }
        let w = DegeneracyWord::normalize(&seq);
        prop_assert_eq!(w.to_surjection(base), theta.clone());
        prop_assert_eq!(DegeneracyWord::from_surjection(&theta), w);
    }

    #[test]
    fn homology_matches_euler_characteristic(x in complex()) {
        let top = x.d_max();
        let h = homology_of(&x, top + 1).unwrap();
        let chi: i64 = h.degrees.iter().take(top + 1).enumerate().map(|(k, d)| if k % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) }).sum();
        prop_assert_eq!(chi, x.euler_characteristic());
    }

    #[test]
    fn json_round_trip(x in complex()) {
        let json = SimplicialSetJson::from(&x);
        let y = json.build().unwrap();
        prop_assert_eq!(&y, &x);
    }

    #[test]
    fn relabelled_sets_are_isomorphic(x in complex(), seed in any::<u64>()) {
        let mut json = SimplicialSetJson::from(&x);
        for (d, level) in json.generators.iter_mut().enumerate() {
            let k = level.len().max(1);
            level.rotate_left((seed as usize + d) % k);
        }
        let y = Arc::new(json.build().unwrap());
        let f = find_isomorphism(&Arc::new(x), &y);
        prop_assert!(f.as_ref().is_some_and(is_isomorphism));
    }

    #[test]
    fn sigma_then_rho_recovers_singletons(patches in 1usize..5, raw in prop::collection::vec(0usize..16, 1..4)) {
        let tuple: Vec<usize> = raw.iter().map(|a| a % patches).collect();
        let alpha = sigma_a(patches, &tuple).unwrap();
        let back = rho_a(&alpha).unwrap();
        prop_assert_eq!(back, tuple.iter().map(|&a| vec![a]).collect::<Vec<_>>());
    }

    #[test]
    fn cech_homology_ignores_patch_order(cov in cover(), rot in 0usize..4) {
        let n = cov.patch_count();
        let perm: Vec<usize> = (0..n).map(|a| (a + rot) % n).collect();
        let permuted = cov.permuted(&perm).unwrap();
        let h = homology_of(&cech_nerve(&cov, 3).unwrap(), 3).unwrap();
        let hp = homology_of(&cech_nerve(&permuted, 3).unwrap(), 3).unwrap();
        prop_assert_eq!(h.to_string(), hp.to_string());
    }

    #[test]
    fn closure_is_idempotent_up_to_unions(cov in cover()) {
        let cl = closure(&cov).unwrap();
        let cl2 = closure(&cl);
        // Σ of the closure may exceed the 64-patch mask width
        prop_assume!(cl2.is_ok());
        let cl2 = cl2.unwrap();
        // element j of cl2's index set is a family of cl's index set, i.e. of Σ(cov)
        let union_pos: Vec<usize> = cl
            .masks()
            .iter()
            .map(|&fam| {
                let u = (0..64).filter(|i| fam >> i & 1 == 1).fold(0u64, |u, i| u | cov.mask(i));
                cov.position(u).expect("unions lie in Σ")
            })
            .collect();
        let image: HashSet<u64> = cl2
            .masks()
            .iter()
            .map(|&g| (0..64).filter(|j| g >> j & 1 == 1).fold(0u64, |m, j| m | 1 << union_pos[j]))
            .collect();
        let expected: HashSet<u64> = cl.masks().iter().copied().collect();
        prop_assert_eq!(image, expected);
    }

    #[test]
    fn smith_form_invariants(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-20i64..20, 36)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 6..i * 6 + cols].to_vec()).collect();
        let m = IntMatrix::from_rows(&m);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| s.d.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }
}

#[test]
fn random_complexes_are_closed() {
    let s: BTreeSet<Vec<usize>> = downward_closure(vec![vec![0, 1, 2], vec![2, 3]]);
    assert_eq!(s.len(), 7 + 2);
    ordered_complex(&s, 2).unwrap().validate().unwrap();
}
