use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::poset::{CategoryFunctor, FiniteCategory};
use crate::simplicial::{SimplexRef, SimplicialMap, SimplicialSet, Tabulated, TabularMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A set-valued functor on a finite category. For a morphism `u: i → j`, `maps[u]` sends
/// elements of `i` to `j` (covariant) or of `j` to `i` (contravariant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    pub variance: Variance,
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<u32>>,
}

impl SetFunctor {
    pub fn new(shape: &FiniteCategory, variance: Variance, sizes: Vec<usize>, maps: Vec<Vec<u32>>) -> Result<Self> {
        let f = SetFunctor { variance, sizes, maps };
        f.validate(shape)?;
        Ok(f)
    }

    /// The constant singleton functor.
    pub fn point(shape: &FiniteCategory, variance: Variance) -> Self {
        SetFunctor {
            variance,
            sizes: vec![1; shape.object_count()],
            maps: vec![vec![0]; shape.morphism_count()],
        }
    }

    /// `I(c, −)`, elements of `I(c, i)` in hom-list order.
    pub fn corepresentable(shape: &FiniteCategory, c: usize) -> Self {
        let sizes = (0..shape.object_count()).map(|i| shape.hom(c, i).len()).collect();
        let maps = shape
            .morphisms()
            .iter()
            .enumerate()
            .map(|(u, m)| {
                let target_hom = shape.hom(c, m.target);
                shape
                    .hom(c, m.source)
                    .iter()
                    .map(|&h| {
                        let uh = shape.compose(u, h as usize).expect("composable") as u32;
                        target_hom.iter().position(|&x| x == uh).expect("in hom") as u32
                    })
                    .collect()
            })
            .collect();
        SetFunctor { variance: Variance::Covariant, sizes, maps }
    }

    /// `I(−, c)`, elements of `I(i, c)` in hom-list order.
    pub fn representable(shape: &FiniteCategory, c: usize) -> Self {
        let sizes = (0..shape.object_count()).map(|i| shape.hom(i, c).len()).collect();
        let maps = shape
            .morphisms()
            .iter()
            .enumerate()
            .map(|(u, m)| {
                let source_hom = shape.hom(m.source, c);
                shape
                    .hom(m.target, c)
                    .iter()
                    .map(|&h| {
                        let hu = shape.compose(h as usize, u).expect("composable") as u32;
                        source_hom.iter().position(|&x| x == hu).expect("in hom") as u32
                    })
                    .collect()
            })
            .collect();
        SetFunctor { variance: Variance::Contravariant, sizes, maps }
    }

    /// Domain and codomain of `maps[u]` as objects.
    fn ends(&self, shape: &FiniteCategory, u: usize) -> (usize, usize) {
        let m = shape.morphism(u);
        match self.variance {
            Variance::Covariant => (m.source, m.target),
            Variance::Contravariant => (m.target, m.source),
        }
    }

    pub fn apply(&self, u: usize, x: u32) -> u32 {
        self.maps[u][x as usize]
    }

    /// Identities act trivially and composites are respected.
    pub fn validate(&self, shape: &FiniteCategory) -> Result<()> {
        if self.sizes.len() != shape.object_count() || self.maps.len() != shape.morphism_count() {
            return Err(invalid("set functor tables do not match the shape"));
        }
        for u in 0..shape.morphism_count() {
            let (a, b) = self.ends(shape, u);
            if self.maps[u].len() != self.sizes[a] || self.maps[u].iter().any(|&y| y as usize >= self.sizes[b]) {
                return Err(invalid(format!("map of `{}` has the wrong shape", shape.morphism(u).name)));
            }
        }
        for (a, &id) in shape.identities().iter().enumerate() {
            if self.maps[id].iter().enumerate().any(|(x, &y)| x as u32 != y) {
                return Err(invalid(format!("identity of `{}` acts nontrivially", shape.objects()[a])));
            }
        }
        for (g, f, gf) in shape.composition_table() {
            let (first, second) = match self.variance {
                Variance::Covariant => (f, g),
                Variance::Contravariant => (g, f),
            };
            for x in 0..self.maps[first].len() {
                if self.apply(second, self.apply(first, x as u32)) != self.maps[gf][x] {
                    return Err(invalid(format!(
                        "composite `{}` ∘ `{}` is not respected",
                        shape.morphism(g).name,
                        shape.morphism(f).name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether every value is a single element.
    pub fn is_point(&self) -> bool {
        self.sizes.iter().all(|&s| s == 1)
    }
}

/// Simplicial values over a shape, covariant or contravariant.
#[derive(Clone, Debug)]
struct Values {
    shape: Arc<FiniteCategory>,
    variance: Variance,
    values: Vec<Arc<SimplicialSet>>,
    maps: Vec<SimplicialMap>,
}

impl Values {
    fn new(
        shape: Arc<FiniteCategory>,
        variance: Variance,
        values: Vec<Arc<SimplicialSet>>,
        maps: Vec<SimplicialMap>,
    ) -> Result<Self> {
        if values.len() != shape.object_count() || maps.len() != shape.morphism_count() {
            return Err(invalid("one value per object and one map per morphism are required"));
        }
        for (u, m) in shape.morphisms().iter().enumerate() {
            let (a, b) = match variance {
                Variance::Covariant => (m.source, m.target),
                Variance::Contravariant => (m.target, m.source),
            };
            if maps[u].source().as_ref() != values[a].as_ref() || maps[u].target().as_ref() != values[b].as_ref() {
                return Err(invalid(format!("map of `{}` has the wrong source or target", m.name)));
            }
        }
        Ok(Values { shape, variance, values, maps })
    }

    fn constant(shape: Arc<FiniteCategory>, variance: Variance, x: SimplicialSet) -> Self {
        let x = Arc::new(x);
        let values = vec![x.clone(); shape.object_count()];
        let maps = vec![SimplicialMap::identity(x); shape.morphism_count()];
        Values { shape, variance, values, maps }
    }

    /// Discrete values from a set functor, vertices labeled by `label(object, element)`.
    fn discrete(shape: Arc<FiniteCategory>, f: &SetFunctor, label: impl Fn(usize, usize) -> String) -> Self {
        let values: Vec<Arc<SimplicialSet>> = (0..shape.object_count())
            .map(|i| {
                let mut x = SimplicialSet::new(0);
                for e in 0..f.sizes[i] {
                    x.add_generator(label(i, e), 0, Vec::new()).expect("distinct labels");
                }
                Arc::new(x)
            })
            .collect();
        let maps = (0..shape.morphism_count())
            .map(|u| {
                let m = shape.morphism(u);
                let (a, b) = match f.variance {
                    Variance::Covariant => (m.source, m.target),
                    Variance::Contravariant => (m.target, m.source),
                };
                SimplicialMap::from_fn(values[a].clone(), values[b].clone(), |g| {
                    SimplexRef::generator(crate::simplicial::GenId { dim: 0, index: f.apply(u, g.index as u32) as usize })
                })
                .expect("vertex maps of discrete sets")
            })
            .collect();
        Values { shape, variance: f.variance, values, maps }
    }

    fn tabulate(&self, trunc: usize) -> TabulatedValues {
        let tabs: Vec<Tabulated<SimplexRef>> = self.values.iter().map(|x| Tabulated::of_set(x, trunc)).collect();
        let maps = self
            .shape
            .morphisms()
            .iter()
            .enumerate()
            .map(|(u, m)| {
                let (a, b) = match self.variance {
                    Variance::Covariant => (m.source, m.target),
                    Variance::Contravariant => (m.target, m.source),
                };
                let images = (0..=trunc)
                    .map(|k| {
                        tabs[a]
                            .assembled
                            .cells(k)
                            .iter()
                            .map(|r| tabs[b].assembled.id(k, &self.maps[u].apply(r)).expect("image is tabulated") as u32)
                            .collect()
                    })
                    .collect();
                TabularMap { images }
            })
            .collect();
        TabulatedValues { variance: self.variance, tabs, maps }
    }

    fn check_functoriality(&self, trunc: usize) -> Result<()> {
        let t = self.tabulate(trunc);
        for (i, tab) in t.tabs.iter().enumerate() {
            tab.table().check_identities()?;
            let id = self.shape.identity(i);
            if t.maps[id] != TabularMap::identity(tab.table()) {
                return Err(Error::Invariant(format!("identity of `{}` acts nontrivially", self.shape.objects()[i])));
            }
        }
        for (u, m) in self.maps.iter().enumerate() {
            if !crate::simplicial::is_simplicial_map(m)?.valid {
                return Err(Error::Invariant(format!("map of `{}` is not simplicial", self.shape.morphism(u).name)));
            }
        }
        for (g, f, gf) in self.shape.composition_table() {
            let (first, second) = match self.variance {
                Variance::Covariant => (f, g),
                Variance::Contravariant => (g, f),
            };
            if t.maps[first].then(&t.maps[second]) != t.maps[gf] {
                return Err(Error::Invariant(format!(
                    "composite `{}` ∘ `{}` is not respected",
                    self.shape.morphism(g).name,
                    self.shape.morphism(f).name
                )));
            }
        }
        Ok(())
    }
}

/// Tabulated values and maps; level `k` is a set functor.
#[derive(Clone, Debug)]
pub(crate) struct TabulatedValues {
    pub variance: Variance,
    pub tabs: Vec<Tabulated<SimplexRef>>,
    pub maps: Vec<TabularMap>,
}

impl TabulatedValues {
    pub fn level(&self, k: usize) -> SetFunctor {
        SetFunctor {
            variance: self.variance,
            sizes: self.tabs.iter().map(|t| t.table().count(k)).collect(),
            maps: self.maps.iter().map(|m| m.images[k].clone()).collect(),
        }
    }

    /// Highest dimension of a nondegenerate simplex, and whether any value is truncated.
    pub fn top_dim(&self) -> (usize, bool) {
        let mut top = 0;
        let mut truncated = false;
        for t in &self.tabs {
            truncated |= t.set.is_truncated();
            for d in 0..=t.set.d_max() {
                if t.set.generator_count(d) > 0 {
                    top = top.max(d);
                }
            }
        }
        (top, truncated)
    }
}

macro_rules! simplicial_functor {
    ($name:ident, $variance:expr, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug)]
        pub struct $name(Values);

        impl $name {
            pub fn new(
                shape: Arc<FiniteCategory>,
                values: Vec<Arc<SimplicialSet>>,
                maps: Vec<SimplicialMap>,
            ) -> Result<Self> {
                Ok($name(Values::new(shape, $variance, values, maps)?))
            }

            /// The constant functor with value `x`.
            pub fn constant(shape: Arc<FiniteCategory>, x: SimplicialSet) -> Self {
                $name(Values::constant(shape, $variance, x))
            }

            /// The constant functor at `Δ^0`.
            pub fn point(shape: Arc<FiniteCategory>) -> Self {
                Self::constant(shape, SimplicialSet::point())
            }

            /// Discrete (levelwise constant) values from a set functor of the same variance.
            pub fn discrete(
                shape: Arc<FiniteCategory>,
                f: &SetFunctor,
                label: impl Fn(usize, usize) -> String,
            ) -> Result<Self> {
                if f.variance != $variance {
                    return Err(invalid("set functor has the wrong variance"));
                }
                f.validate(&shape)?;
                Ok($name(Values::discrete(shape, f, label)))
            }

            pub fn shape(&self) -> &Arc<FiniteCategory> {
                &self.0.shape
            }

            pub fn value(&self, i: usize) -> &Arc<SimplicialSet> {
                &self.0.values[i]
            }

            pub fn values(&self) -> &[Arc<SimplicialSet>] {
                &self.0.values
            }

            pub fn map(&self, u: usize) -> &SimplicialMap {
                &self.0.maps[u]
            }

            pub fn maps(&self) -> &[SimplicialMap] {
                &self.0.maps
            }

            /// Functoriality checked on tables through `trunc`.
            pub fn check_functoriality(&self, trunc: usize) -> Result<()> {
                self.0.check_functoriality(trunc)
            }

            pub(crate) fn tabulate(&self, trunc: usize) -> TabulatedValues {
                self.0.tabulate(trunc)
            }

            /// Restriction along a functor `φ: J → I` into the shape.
            pub fn precompose(&self, phi: &CategoryFunctor) -> Result<Self> {
                if phi.target() != &self.0.shape {
                    return Err(invalid("functor does not land in the shape"));
                }
                let j = phi.source().clone();
                let values = (0..j.object_count()).map(|a| self.0.values[phi.object(a)].clone()).collect();
                let maps = (0..j.morphism_count()).map(|f| self.0.maps[phi.morphism(f)].clone()).collect();
                Self::new(j, values, maps)
            }
        }
    };
}

simplicial_functor!(Diagram, Variance::Covariant, "A covariant diagram `E: I → sSet` of finite simplicial sets.");
simplicial_functor!(Weight, Variance::Contravariant, "A contravariant weight `F: I^op → sSet` of finite simplicial sets; `map(u)` for `u: i → j` goes `F(j) → F(i)`.");

impl Weight {
    /// The representable presheaf `I(−, c)` with discrete values.
    pub fn representable(shape: Arc<FiniteCategory>, c: usize) -> Self {
        let f = SetFunctor::representable(&shape, c);
        let names: Vec<Vec<String>> = (0..shape.object_count())
            .map(|i| shape.hom(i, c).iter().map(|&h| shape.morphism(h as usize).name.clone()).collect())
            .collect();
        Weight(Values::discrete(shape, &f, |i, e| names[i][e].clone()))
    }
}

impl Diagram {
    /// The corepresentable `I(c, −)` with discrete values.
    pub fn corepresentable(shape: Arc<FiniteCategory>, c: usize) -> Self {
        let f = SetFunctor::corepresentable(&shape, c);
        let names: Vec<Vec<String>> = (0..shape.object_count())
            .map(|i| shape.hom(c, i).iter().map(|&h| shape.morphism(h as usize).name.clone()).collect())
            .collect();
        Diagram(Values::discrete(shape, &f, |i, e| names[i][e].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;
    use crate::simplicial::standard::{boundary_simplex, standard_simplex};
    use crate::simplicial::GenId;

    fn interval() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::from_poset(&FinitePoset::ordinal(1)))
    }

    #[test]
    fn representables_are_functors() {
        let c = Arc::new(FiniteCategory::from_poset(&FinitePoset::ordinal(2)));
        for x in 0..3 {
            SetFunctor::representable(&c, x).validate(&c).unwrap();
            SetFunctor::corepresentable(&c, x).validate(&c).unwrap();
            Weight::representable(c.clone(), x).check_functoriality(2).unwrap();
        }
    }

    #[test]
    fn wrong_targets_are_rejected() {
        let i = interval();
        let a = Arc::new(boundary_simplex(1));
        let b = Arc::new(standard_simplex(0));
        let to_b = SimplicialMap::from_fn(a.clone(), b.clone(), |_| SimplexRef::generator(GenId { dim: 0, index: 0 })).unwrap();
        let build = |values: Vec<Arc<SimplicialSet>>| {
            let maps = i
                .morphisms()
                .iter()
                .map(|m| if m.source == m.target { SimplicialMap::identity(values[m.source].clone()) } else { to_b.clone() })
                .collect();
            Diagram::new(i.clone(), values, maps)
        };
        // the non-identity map must go a → b
        assert!(build(vec![a.clone(), a.clone()]).is_err());
        let d = build(vec![a, b]).unwrap();
        d.check_functoriality(2).unwrap();
    }
}
