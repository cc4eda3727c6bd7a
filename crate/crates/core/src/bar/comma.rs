use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::bar::diagram::{SetFunctor, Variance};
use crate::error::{invalid, Result};
use crate::poset::{CategoryFunctor, FiniteCategory, Morphism};

/// The comma category `I_{Y⫽X}` of a covariant `Y: I → Set` and a contravariant `X: I^op → Set`.
///
/// Objects are triples `(i, y ∈ Y(i), x ∈ X(i))` in lexicographic order; a morphism
/// `(i, y, x) → (j, y', x')` is some `u: i → j` with `Y(u) y = y'` and `X(u) x' = x`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: Arc<FiniteCategory>,
    /// `(i, y, x)` per object.
    pub objects: Vec<(u32, u32, u32)>,
    /// The underlying `I`-morphism of each morphism.
    pub underlying: Vec<u32>,
    obj_index: FxHashMap<(u32, u32, u32), u32>,
    /// `(u, source object, target object) ↦ morphism`; the source alone does not determine
    /// a morphism when `X(u)` is not injective.
    mor_index: FxHashMap<(u32, u32, u32), u32>,
}

impl CommaCategory {
    pub fn object_of(&self, i: usize, y: usize, x: usize) -> Option<usize> {
        self.obj_index.get(&(i as u32, y as u32, x as u32)).map(|&o| o as usize)
    }

    /// The morphism over `u` from `source` to `target`, if there is one.
    pub fn morphism_over(&self, u: usize, source: usize, target: usize) -> Option<usize> {
        self.mor_index.get(&(u as u32, source as u32, target as u32)).map(|&f| f as usize)
    }

    /// The forgetful functor to the shape.
    pub fn projection(&self, shape: &Arc<FiniteCategory>) -> Result<CategoryFunctor> {
        CategoryFunctor::new(
            self.category.clone(),
            shape.clone(),
            self.objects.iter().map(|o| o.0 as usize).collect(),
            self.underlying.iter().map(|&u| u as usize).collect(),
        )
    }

    /// The functor `I_{Y⫽X} → I_{Y'⫽X'}` induced by maps `α: Y ⇒ Y'` and `β: X ⇒ X'` given
    /// componentwise as element tables.
    pub fn induced(&self, target: &CommaCategory, alpha: &[Vec<u32>], beta: &[Vec<u32>]) -> Result<CategoryFunctor> {
        let objects = self
            .objects
            .iter()
            .map(|&(i, y, x)| {
                target
                    .object_of(i as usize, alpha[i as usize][y as usize] as usize, beta[i as usize][x as usize] as usize)
                    .ok_or_else(|| invalid("transformation does not land in the target comma category"))
            })
            .collect::<Result<Vec<_>>>()?;
        let morphisms = self
            .category
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| {
                target
                    .morphism_over(self.underlying[f] as usize, objects[m.source], objects[m.target])
                    .ok_or_else(|| invalid("transformation is not natural"))
            })
            .collect::<Result<Vec<_>>>()?;
        CategoryFunctor::new(self.category.clone(), target.category.clone(), objects, morphisms)
    }
}

/// `I_{Y⫽X}`. Element labels are `y_label(i, y)` and `x_label(i, x)`; a trivial (singleton)
/// functor contributes nothing to names, so `I_{*⫽*}` reproduces `I` with its own names.
pub fn comma_category_labeled(
    shape: &FiniteCategory,
    y: &SetFunctor,
    x: &SetFunctor,
    y_label: impl Fn(usize, usize) -> String,
    x_label: impl Fn(usize, usize) -> String,
) -> Result<CommaCategory> {
    if y.variance != Variance::Covariant || x.variance != Variance::Contravariant {
        return Err(invalid("comma categories take a covariant and a contravariant functor"));
    }
    y.validate(shape)?;
    x.validate(shape)?;
    let (y_point, x_point) = (y.is_point(), x.is_point());
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for i in 0..shape.object_count() {
        for yy in 0..y.sizes[i] {
            for xx in 0..x.sizes[i] {
                objects.push((i as u32, yy as u32, xx as u32));
                let mut name = shape.objects()[i].clone();
                match (y_point, x_point) {
                    (true, true) => {}
                    (false, true) => name = format!("{}⟨{}⟩", name, y_label(i, yy)),
                    (true, false) => name = format!("{}⟨{}⟩", name, x_label(i, xx)),
                    (false, false) => name = format!("{}⟨{};{}⟩", name, y_label(i, yy), x_label(i, xx)),
                }
                names.push(name);
            }
        }
    }
    let obj_index: FxHashMap<_, _> = objects.iter().enumerate().map(|(k, &o)| (o, k as u32)).collect();
    let trivial = y_point && x_point;
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut mor_index = FxHashMap::default();
    for (u, m) in shape.morphisms().iter().enumerate() {
        for yy in 0..y.sizes[m.source] {
            let y2 = y.apply(u, yy as u32);
            for x2 in 0..x.sizes[m.target] {
                let xx = x.apply(u, x2 as u32);
                let s = obj_index[&(m.source as u32, yy as u32, xx)] as usize;
                let t = obj_index[&(m.target as u32, y2, x2 as u32)] as usize;
                let name = if trivial { m.name.clone() } else { format!("{}:{}→{}", m.name, names[s], names[t]) };
                mor_index.insert((u as u32, s as u32, t as u32), morphisms.len() as u32);
                morphisms.push(Morphism { name, source: s, target: t });
                underlying.push(u as u32);
            }
        }
    }
    let identities = (0..objects.len())
        .map(|o| mor_index[&(shape.identity(objects[o].0 as usize) as u32, o as u32, o as u32)] as usize)
        .collect();
    let mut compose = Vec::new();
    for (f, mf) in morphisms.iter().enumerate() {
        for (g, mg) in morphisms.iter().enumerate() {
            if mg.source == mf.target {
                let vu = shape.compose(underlying[g] as usize, underlying[f] as usize).expect("composable in the shape");
                compose.push((g, f, mor_index[&(vu as u32, mf.source as u32, mg.target as u32)] as usize));
            }
        }
    }
    let category = Arc::new(FiniteCategory::unchecked(names, morphisms, identities, &compose)?);
    Ok(CommaCategory { category, objects, underlying, obj_index, mor_index })
}

/// `I_{Y⫽X}` with elements named by their indices.
pub fn comma_category(shape: &FiniteCategory, y: &SetFunctor, x: &SetFunctor) -> Result<CommaCategory> {
    comma_category_labeled(shape, y, x, |_, e| e.to_string(), |_, e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;
    use crate::simplicial::are_isomorphic;

    fn cat(n: usize) -> FiniteCategory {
        FiniteCategory::from_poset(&FinitePoset::ordinal(n))
    }

    #[test]
    fn trivial_functors_give_the_shape_back() {
        let c = cat(2);
        let pt_y = SetFunctor::point(&c, Variance::Covariant);
        let pt_x = SetFunctor::point(&c, Variance::Contravariant);
        let comma = comma_category(&c, &pt_y, &pt_x).unwrap();
        assert_eq!(comma.category.as_ref(), &c);
        comma.category.validate().unwrap();
    }

    #[test]
    fn coslice_of_an_interval() {
        let c = cat(1);
        let y = SetFunctor::corepresentable(&c, 0);
        let comma = comma_category(&c, &y, &SetFunctor::point(&c, Variance::Contravariant)).unwrap();
        comma.category.validate().unwrap();
        assert_eq!(comma.category.object_count(), 2);
        let nerve = crate::poset::nerve(&comma.category, 2);
        assert!(are_isomorphic(&nerve, &crate::simplicial::standard_simplex(1)));
        comma.projection(&Arc::new(c)).unwrap();
    }

    #[test]
    fn slice_over_the_top() {
        let c = cat(2);
        let x = SetFunctor::representable(&c, 1);
        let comma = comma_category(&c, &SetFunctor::point(&c, Variance::Covariant), &x).unwrap();
        comma.category.validate().unwrap();
        // [2]_{/1} = {0 < 1}
        assert_eq!(comma.category.object_count(), 2);
        assert_eq!(comma.category.morphism_count(), 3);
    }

    #[test]
    fn collapsing_weight_keeps_parallel_morphisms_apart() {
        // X(1) = {a, b}, X(0) = {c}, X(0 ≤ 1) sends both to c
        let c = cat(1);
        let x = SetFunctor::new(&c, Variance::Contravariant, vec![1, 2], vec![vec![0], vec![0, 0], vec![0, 1]]).unwrap();
        let comma = comma_category(&c, &SetFunctor::point(&c, Variance::Covariant), &x).unwrap();
        comma.category.validate().unwrap();
        assert_eq!(comma.category.object_count(), 3);
        // two identities on the top, one on the bottom, and two arrows out of the bottom
        assert_eq!(comma.category.morphism_count(), 5);
        let bottom = comma.object_of(0, 0, 0).unwrap();
        let tops = [comma.object_of(1, 0, 0).unwrap(), comma.object_of(1, 0, 1).unwrap()];
        let u = (0..c.morphism_count()).find(|&u| !c.is_identity(u)).unwrap();
        let arrows: Vec<_> = tops.iter().map(|&t| comma.morphism_over(u, bottom, t).unwrap()).collect();
        assert_ne!(arrows[0], arrows[1]);
    }
}
