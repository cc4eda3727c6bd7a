use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::poset::order::FinitePoset;
use crate::simplicial::{SimplicialMap, SimplicialModel, SimplicialSet, Tabulated};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category: objects and morphisms are indices, composition is a total table on
/// composable pairs.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `(g, f) ↦ g ∘ f` for `target(f) = source(g)`.
    compose: HashMap<(u32, u32), u32>,
    hom: HashMap<(u32, u32), Vec<u32>>,
    /// Morphisms by source object.
    out: Vec<Vec<u32>>,
    /// `reach[a][b]`: some morphism `a → b` exists.
    reach: Vec<Vec<bool>>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.compose == other.compose
    }
}

impl Eq for FiniteCategory {}

impl FiniteCategory {
    /// Builds and validates a category. `compose` lists triples `(g, f, g∘f)`; every composable
    /// pair must appear exactly once. Unit laws and associativity are checked on the full table.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let c = Self::unchecked(objects, morphisms, identities, compose)?;
        c.validate()?;
        Ok(c)
    }

    /// Builds the tables, checking shapes but not the category axioms.
    pub(crate) fn unchecked(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let (n, m) = (objects.len(), morphisms.len());
        if identities.len() != n {
            return Err(invalid("one identity per object is required"));
        }
        if let Some(f) = morphisms.iter().find(|f| f.source >= n || f.target >= n) {
            return Err(invalid(format!("morphism `{}` has an unknown endpoint", f.name)));
        }
        for (a, &id) in identities.iter().enumerate() {
            if id >= m || morphisms[id].source != a || morphisms[id].target != a {
                return Err(invalid(format!("identity of `{}` is not an endomorphism of it", objects[a])));
            }
        }
        let mut table = HashMap::with_capacity(compose.len());
        for &(g, f, gf) in compose {
            if g >= m || f >= m || gf >= m {
                return Err(invalid("composition entry out of range"));
            }
            let (mf, mg, mgf) = (&morphisms[f], &morphisms[g], &morphisms[gf]);
            if mf.target != mg.source {
                return Err(invalid(format!("`{}` ∘ `{}` is not composable", mg.name, mf.name)));
            }
            if mgf.source != mf.source || mgf.target != mg.target {
                return Err(invalid(format!("`{}` ∘ `{}` has the wrong endpoints", mg.name, mf.name)));
            }
            if table.insert((g as u32, f as u32), gf as u32).is_some() {
                return Err(invalid(format!("`{}` ∘ `{}` listed twice", mg.name, mf.name)));
            }
        }
        let mut hom: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        let mut reach = vec![vec![false; n]; n];
        let mut out = vec![Vec::new(); n];
        for (i, f) in morphisms.iter().enumerate() {
            hom.entry((f.source as u32, f.target as u32)).or_default().push(i as u32);
            out[f.source].push(i as u32);
            reach[f.source][f.target] = true;
        }
        for f in 0..m {
            for &g in &out[morphisms[f].target] {
                if !table.contains_key(&(g, f as u32)) {
                    return Err(invalid(format!(
                        "missing composite `{}` ∘ `{}`",
                        morphisms[g as usize].name, morphisms[f].name
                    )));
                }
            }
        }
        Ok(FiniteCategory { objects, morphisms, identities, compose: table, hom, out, reach })
    }

    /// Fills unit-law entries `id ∘ f = f` and `f ∘ id = f` that are missing from `compose`.
    pub fn with_unit_laws(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let mut all: Vec<(usize, usize, usize)> = compose.to_vec();
        let listed: std::collections::HashSet<(usize, usize)> = compose.iter().map(|&(g, f, _)| (g, f)).collect();
        for (f, mf) in morphisms.iter().enumerate() {
            if mf.target < identities.len() {
                let id = identities[mf.target];
                if !listed.contains(&(id, f)) {
                    all.push((id, f, f));
                }
            }
            if mf.source < identities.len() {
                let id = identities[mf.source];
                if id != f && !listed.contains(&(f, id)) {
                    all.push((f, id, f));
                }
            }
        }
        Self::new(objects, morphisms, identities, &all)
    }

    /// Unit laws and associativity over every composable pair and triple.
    pub fn validate(&self) -> Result<()> {
        for (f, mf) in self.morphisms.iter().enumerate() {
            let (l, r) = (self.identities[mf.target], self.identities[mf.source]);
            if self.compose(l, f) != Some(f) || self.compose(f, r) != Some(f) {
                return Err(invalid(format!("unit law fails at `{}`", mf.name)));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.out_of(self.morphisms[f].target) {
                let gf = self.compose[&(g, f as u32)];
                for &h in self.out_of(self.morphisms[g as usize].target) {
                    let lhs = self.compose[&(h, gf)];
                    let rhs = self.compose[&(self.compose[&(h, g)], f as u32)];
                    if lhs != rhs {
                        return Err(invalid(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            self.morphisms[h as usize].name, self.morphisms[g as usize].name, self.morphisms[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Morphisms with source `a`, in index order.
    pub fn out_of(&self, a: usize) -> &[u32] {
        &self.out[a]
    }

    /// The category of a poset: one morphism `a → b` per `a ≤ b`, named `id_a` or `a≤b`.
    pub fn from_poset(p: &FinitePoset) -> Self {
        let n = p.len();
        let mut morphisms = Vec::new();
        let mut ids = HashMap::new();
        let mut identities = vec![0; n];
        for (a, b) in p.relation() {
            let name = if a == b { format!("id_{}", p.label(a)) } else { format!("{}≤{}", p.label(a), p.label(b)) };
            if a == b {
                identities[a] = morphisms.len();
            }
            ids.insert((a, b), morphisms.len());
            morphisms.push(Morphism { name, source: a, target: b });
        }
        let mut compose = Vec::new();
        for (&(a, b), &f) in &ids {
            for c in 0..n {
                if let Some(&g) = ids.get(&(b, c)) {
                    compose.push((g, f, ids[&(a, c)]));
                }
            }
        }
        Self::unchecked(p.labels().to_vec(), morphisms, identities, &compose).expect("poset categories are valid")
    }

    /// The discrete category on the given objects.
    pub fn discrete(objects: Vec<String>) -> Result<Self> {
        Ok(Self::from_poset(&FinitePoset::discrete(objects)?))
    }

    /// The opposite category; morphism names are kept.
    pub fn opposite(&self) -> Self {
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism { name: f.name.clone(), source: f.target, target: f.source })
            .collect();
        let compose: Vec<_> =
            self.compose.iter().map(|(&(g, f), &gf)| (f as usize, g as usize, gf as usize)).collect();
        Self::unchecked(self.objects.clone(), morphisms, self.identities.clone(), &compose).expect("opposite")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    /// `g ∘ f`, when composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g as u32, f as u32)).map(|&x| x as usize)
    }

    /// Composition triples `(g, f, g∘f)` sorted by `(g, f)`.
    pub fn composition_table(&self) -> Vec<(usize, usize, usize)> {
        let mut t: Vec<_> = self.compose.iter().map(|(&(g, f), &gf)| (g as usize, f as usize, gf as usize)).collect();
        t.sort_unstable();
        t
    }

    pub fn hom(&self, a: usize, b: usize) -> &[u32] {
        self.hom.get(&(a as u32, b as u32)).map_or(&[], Vec::as_slice)
    }

    pub fn reachable(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    /// Every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.hom.values().all(|h| h.len() <= 1)
    }

    /// Length of the longest string of composable non-identity morphisms; `None` if unbounded.
    pub fn max_nondegenerate_length(&self) -> Option<usize> {
        let n = self.objects.len();
        // longest path in the graph of non-identity morphisms, with cycle detection
        let mut memo: Vec<Option<usize>> = vec![None; n];
        let mut state = vec![0u8; n];
        fn visit(c: &FiniteCategory, a: usize, memo: &mut [Option<usize>], state: &mut [u8]) -> Option<usize> {
            match state[a] {
                1 => return None,
                2 => return memo[a],
                _ => {}
            }
            state[a] = 1;
            let mut best = 0;
            for &f in c.out_of(a) {
                if !c.is_identity(f as usize) {
                    best = best.max(visit(c, c.morphisms[f as usize].target, memo, state)? + 1);
                }
            }
            state[a] = 2;
            memo[a] = Some(best);
            Some(best)
        }
        let mut best = 0;
        for a in 0..n {
            best = best.max(visit(self, a, &mut memo, &mut state)?);
        }
        Some(best)
    }
}

/// A functor between finite categories, given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl CategoryFunctor {
    /// Checks endpoints, identities and composites.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self> {
        if objects.len() != source.object_count() || morphisms.len() != source.morphism_count() {
            return Err(invalid("functor tables must cover every object and morphism"));
        }
        if objects.iter().any(|&o| o >= target.object_count()) || morphisms.iter().any(|&f| f >= target.morphism_count()) {
            return Err(invalid("functor image out of range"));
        }
        for (f, m) in source.morphisms.iter().enumerate() {
            let img = target.morphism(morphisms[f]);
            if img.source != objects[m.source] || img.target != objects[m.target] {
                return Err(invalid(format!("image of `{}` has the wrong endpoints", m.name)));
            }
        }
        for (a, &id) in source.identities.iter().enumerate() {
            if morphisms[id] != target.identity(objects[a]) {
                return Err(invalid(format!("identity of `{}` is not preserved", source.objects[a])));
            }
        }
        for (g, f, gf) in source.composition_table() {
            if target.compose(morphisms[g], morphisms[f]) != Some(morphisms[gf]) {
                return Err(invalid(format!(
                    "composite `{}` ∘ `{}` is not preserved",
                    source.morphism(g).name,
                    source.morphism(f).name
                )));
            }
        }
        Ok(CategoryFunctor { source, target, objects, morphisms })
    }

    /// The functor of a monotone map between posets, on their poset categories.
    pub fn of_monotone(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        assignment: &[usize],
    ) -> Result<Self> {
        let morphisms = source
            .morphisms
            .iter()
            .map(|m| {
                let hom = target.hom(assignment[m.source], assignment[m.target]);
                hom.first().map(|&f| f as usize).ok_or_else(|| invalid("assignment is not monotone"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment.to_vec(), morphisms)
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let objects = (0..c.object_count()).collect();
        let morphisms = (0..c.morphism_count()).collect();
        CategoryFunctor { source: c.clone(), target: c, objects, morphisms }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object(&self, a: usize) -> usize {
        self.objects[a]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CategoryFunctor) -> Result<CategoryFunctor> {
        if first.target != self.source {
            return Err(invalid("functors are not composable"));
        }
        Ok(CategoryFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        })
    }

    /// Action on nerve cells (a morphism string, or `[object]` in dimension 0).
    pub fn on_nerve_cell(&self, n: usize, cell: &[u32]) -> Box<[u32]> {
        if n == 0 {
            return vec![self.objects[cell[0] as usize] as u32].into_boxed_slice();
        }
        cell.iter().map(|&f| self.morphisms[f as usize] as u32).collect()
    }

    /// `N(F): N(C) → N(D)` up to `trunc`.
    pub fn nerve_map(&self, trunc: usize) -> Result<SimplicialMap> {
        let src = nerve_tabulated(&self.source, trunc);
        let tgt = nerve_tabulated(&self.target, trunc);
        src.map_to(&tgt, |n, cell| self.on_nerve_cell(n, cell))
    }
}

/// The nerve of a finite category. A 0-cell is `[object]`; an `n`-cell (`n ≥ 1`) is a string of
/// `n` composable morphisms `f_1, …, f_n` in diagrammatic order.
pub struct CategoryNerve<'a>(pub &'a FiniteCategory);

impl CategoryNerve<'_> {
    fn object_at(&self, cell: &[u32], n: usize, i: usize) -> usize {
        let c = self.0;
        if n == 0 {
            cell[0] as usize
        } else if i < n {
            c.morphisms[cell[i] as usize].source
        } else {
            c.morphisms[cell[n - 1] as usize].target
        }
    }
}

impl SimplicialModel for CategoryNerve<'_> {
    type Cell = Box<[u32]>;

    fn cells(&self, n: usize) -> Result<Vec<Self::Cell>> {
        let c = self.0;
        if n == 0 {
            return Ok((0..c.objects.len() as u32).map(|a| vec![a].into_boxed_slice()).collect());
        }
        let mut level: Vec<Vec<u32>> = (0..c.morphisms.len() as u32).map(|f| vec![f]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for s in &level {
                let end = c.morphisms[*s.last().expect("nonempty") as usize].target;
                for &g in c.out_of(end) {
                    let mut t = s.clone();
                    t.push(g);
                    next.push(t);
                }
            }
            level = next;
        }
        Ok(level.into_iter().map(Vec::into_boxed_slice).collect())
    }

    fn face(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        let c = self.0;
        if n == 1 {
            let f = &c.morphisms[cell[0] as usize];
            return vec![(if i == 0 { f.target } else { f.source }) as u32].into_boxed_slice();
        }
        let mut v = cell.to_vec();
        if i == 0 {
            v.remove(0);
        } else if i == n {
            v.pop();
        } else {
            let gf = c.compose[&(v[i], v[i - 1])];
            v[i - 1] = gf;
            v.remove(i);
        }
        v.into_boxed_slice()
    }

    fn degeneracy(&self, n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        let id = self.0.identities[self.object_at(cell, n, i)] as u32;
        if n == 0 {
            return vec![id].into_boxed_slice();
        }
        let mut v = cell.to_vec();
        v.insert(i, id);
        v.into_boxed_slice()
    }

    fn label(&self, n: usize, cell: &Self::Cell) -> String {
        let c = self.0;
        if n == 0 {
            return c.objects[cell[0] as usize].clone();
        }
        if c.is_thin() {
            let mut parts: Vec<&str> = vec![&c.objects[c.morphisms[cell[0] as usize].source]];
            parts.extend(cell.iter().map(|&f| c.objects[c.morphisms[f as usize].target].as_str()));
            parts.join("→")
        } else {
            cell.iter().map(|&f| c.morphisms[f as usize].name.as_str()).collect::<Vec<_>>().join("|")
        }
    }

    fn truncated_at(&self, trunc: usize) -> bool {
        self.0.max_nondegenerate_length().map_or(true, |l| l > trunc)
    }
}

/// The nerve of a poset: `n`-cells are weakly increasing sequences `p_0 ≤ ⋯ ≤ p_n`.
pub struct PosetNerve<'a>(pub &'a FinitePoset);

impl SimplicialModel for PosetNerve<'_> {
    type Cell = Box<[u32]>;

    fn cells(&self, n: usize) -> Result<Vec<Self::Cell>> {
        let p = self.0;
        let mut level: Vec<Vec<u32>> = (0..p.len() as u32).map(|a| vec![a]).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for s in &level {
                let last = *s.last().expect("nonempty") as usize;
                for b in 0..p.len() {
                    if p.leq(last, b) {
                        let mut t = s.clone();
                        t.push(b as u32);
                        next.push(t);
                    }
                }
            }
            level = next;
        }
        Ok(level.into_iter().map(Vec::into_boxed_slice).collect())
    }

    fn face(&self, _n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        let mut v = cell.to_vec();
        v.remove(i);
        v.into_boxed_slice()
    }

    fn degeneracy(&self, _n: usize, cell: &Self::Cell, i: usize) -> Self::Cell {
        let mut v = cell.to_vec();
        v.insert(i, cell[i]);
        v.into_boxed_slice()
    }

    fn label(&self, _n: usize, cell: &Self::Cell) -> String {
        cell.iter().map(|&a| self.0.label(a as usize)).collect::<Vec<_>>().join("<")
    }

    fn truncated_at(&self, trunc: usize) -> bool {
        self.0.height().map_or(false, |h| h > trunc)
    }
}

/// `N(C)` up to dimension `trunc`.
pub fn nerve(c: &FiniteCategory, trunc: usize) -> SimplicialSet {
    nerve_tabulated(c, trunc).set.as_ref().clone()
}

pub fn nerve_tabulated(c: &FiniteCategory, trunc: usize) -> Tabulated<Box<[u32]>> {
    Tabulated::build(&CategoryNerve(c), trunc).expect("nerves are closed under faces and degeneracies")
}

/// `N(P)` up to dimension `trunc`; vertex `i` is element `i`.
pub fn nerve_poset(p: &FinitePoset, trunc: usize) -> SimplicialSet {
    nerve_poset_tabulated(p, trunc).set.as_ref().clone()
}

pub fn nerve_poset_tabulated(p: &FinitePoset, trunc: usize) -> Tabulated<Box<[u32]>> {
    Tabulated::build(&PosetNerve(p), trunc).expect("nerves are closed under faces and degeneracies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::ops::are_isomorphic;
    use crate::simplicial::standard::standard_simplex;

    pub(crate) fn walking_iso() -> FiniteCategory {
        let objects = vec!["0".to_string(), "1".to_string()];
        let m = |name: &str, s, t| Morphism { name: name.into(), source: s, target: t };
        let morphisms = vec![m("id0", 0, 0), m("id1", 1, 1), m("f", 0, 1), m("g", 1, 0)];
        FiniteCategory::with_unit_laws(objects, morphisms, vec![0, 1], &[(3, 2, 0), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn nerves_of_ordinals_are_simplices() {
        for n in 0..=3 {
            let p = FinitePoset::ordinal(n);
            let a = nerve_poset(&p, n + 1);
            let b = nerve(&FiniteCategory::from_poset(&p), n + 1);
            assert_eq!(a.generator_counts()[..=n], standard_simplex(n).generator_counts()[..]);
            assert!(!a.is_truncated());
            assert!(are_isomorphic(&a.truncate(n), &standard_simplex(n)));
            assert!(are_isomorphic(&a, &b));
        }
    }

    #[test]
    fn discrete_nerve() {
        let c = FiniteCategory::discrete(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let x = nerve(&c, 2);
        assert_eq!(x.generator_counts(), vec![3, 0, 0]);
        assert!(!x.is_truncated());
    }

    #[test]
    fn walking_iso_nerve_is_infinite() {
        let j = walking_iso();
        assert!(j.is_thin());
        assert_eq!(j.max_nondegenerate_length(), None);
        let x = nerve(&j, 3);
        // nondegenerate strings alternate f and g
        assert_eq!(x.generator_counts(), vec![2, 2, 2, 2]);
        assert!(x.is_truncated());
        Tabulated::build(&CategoryNerve(&j), 3).unwrap().table().check_identities().unwrap();
    }

    #[test]
    fn axioms_are_checked() {
        let objects = vec!["0".to_string()];
        let m = |name: &str| Morphism { name: name.into(), source: 0, target: 0 };
        // e∘e = id breaks nothing; e∘e = e is also fine; missing entries fail
        let ok = FiniteCategory::with_unit_laws(objects.clone(), vec![m("id"), m("e")], vec![0], &[(1, 1, 1)]);
        assert!(ok.is_ok());
        let missing = FiniteCategory::with_unit_laws(objects, vec![m("id"), m("e")], vec![0], &[]);
        assert!(missing.is_err());
    }

    #[test]
    fn nerve_is_functorial() {
        let c = |n| Arc::new(FiniteCategory::from_poset(&FinitePoset::ordinal(n)));
        let (c1, c2, c3) = (c(1), c(2), c(3));
        // [1] → [2] skipping 1, then [2] → [3] collapsing nothing but shifting
        let f = CategoryFunctor::of_monotone(c1.clone(), c2.clone(), &[0, 2]).unwrap();
        let g = CategoryFunctor::of_monotone(c2.clone(), c3.clone(), &[1, 1, 3]).unwrap();
        let gf = g.after(&f).unwrap();
        let lhs = gf.nerve_map(3).unwrap();
        let rhs = g.nerve_map(3).unwrap().after(&f.nerve_map(3).unwrap()).unwrap();
        assert_eq!(lhs.assignment(), rhs.assignment());
        assert!(CategoryFunctor::of_monotone(c2, c1, &[1, 0, 1]).is_err());
    }

    #[test]
    fn opposite_reverses() {
        let c = FiniteCategory::from_poset(&FinitePoset::ordinal(2));
        let op = c.opposite();
        op.validate().unwrap();
        assert_eq!(op.hom(2, 0).len(), 1);
        assert!(op.hom(0, 2).is_empty());
    }
}
