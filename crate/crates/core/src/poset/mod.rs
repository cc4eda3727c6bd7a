//! Finite posets and categories, nerves, subdivision and `Ex`.

pub mod category;
pub mod ex;
pub mod order;
pub(crate) mod sd;

pub use category::{nerve, nerve_poset, nerve_tabulated, nerve_poset_tabulated, CategoryFunctor, CategoryNerve, FiniteCategory, Morphism, PosetNerve};
pub use ex::{ex, ex_category_nerve, ex_nerve_poset, ex_nerve_poset_with_cap, last_vertex_map, Ex, ExModel, ExNerve, ExNerveModel};
pub use order::{chain_poset, chain_poset_with_chains, monotone_maps, subset_poset, subset_poset_with_sets, FinitePoset, MonotoneMap};

use crate::simplicial::SimplicialSet;

/// `Sd Δ^n = N(s_<[n])`.
pub fn sd_simplex(n: usize) -> SimplicialSet {
    nerve_poset(&chain_poset(&FinitePoset::ordinal(n)), n)
}

/// `Sd N(P) = N(s_<P)`, through the height of `s_<P`.
pub fn sd_nerve(p: &FinitePoset) -> SimplicialSet {
    let s = chain_poset(p);
    nerve_poset(&s, s.height().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivided_simplices() {
        assert_eq!(sd_simplex(0).generator_counts(), vec![1]);
        let s1 = sd_simplex(1);
        assert_eq!(s1.generator_counts(), vec![3, 2]);
        let s2 = sd_simplex(2);
        assert_eq!(s2.generator_counts(), vec![7, 12, 6]);
        assert_eq!(s2.euler_characteristic(), 1);
        assert!(!s2.is_truncated());
        assert_eq!(sd_nerve(&FinitePoset::ordinal(1)), s1);
    }

    #[test]
    fn sd_of_discrete_poset() {
        let p = FinitePoset::discrete(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(sd_nerve(&p).generator_counts(), vec![2]);
    }
}
