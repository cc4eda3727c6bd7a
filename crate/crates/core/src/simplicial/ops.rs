use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rustc_hash::FxHasher;

use crate::error::Result;
use crate::simplicial::map::{is_simplicial_map, SimplicialMap};
use crate::simplicial::sset::{GenId, SimplexRef, SimplicialSet};
use crate::simplicial::tabular::{Assembled, SimplicialModel};

/// Highest dimension carrying a generator, `None` for the empty set.
fn top_dim(x: &SimplicialSet) -> Option<usize> {
    (0..=x.d_max()).rev().find(|&d| x.generator_count(d) > 0)
}

struct Product<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
}

impl SimplicialModel for Product<'_> {
    type Cell = (SimplexRef, SimplexRef);

    fn cells(&self, n: usize) -> Result<Vec<Self::Cell>> {
        let xs = self.x.cells(n)?;
        let ys = self.y.cells(n)?;
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for a in &xs {
            for b in &ys {
                out.push((a.clone(), b.clone()));
            }
        }
        Ok(out)
    }

    fn face(&self, n: usize, (a, b): &Self::Cell, i: usize) -> Self::Cell {
        (SimplicialModel::face(self.x, n, a, i), SimplicialModel::face(self.y, n, b, i))
    }

    fn degeneracy(&self, n: usize, (a, b): &Self::Cell, i: usize) -> Self::Cell {
        (SimplicialModel::degeneracy(self.x, n, a, i), SimplicialModel::degeneracy(self.y, n, b, i))
    }

    fn label(&self, n: usize, (a, b): &Self::Cell) -> String {
        format!("({},{})", SimplicialModel::label(self.x, n, a), SimplicialModel::label(self.y, n, b))
    }

    fn truncated_at(&self, trunc: usize) -> bool {
        if self.x.is_truncated() || self.y.is_truncated() {
            return true;
        }
        match (top_dim(self.x), top_dim(self.y)) {
            (Some(p), Some(q)) => p + q > trunc,
            _ => false,
        }
    }
}

/// The categorical product `X × Y` up to dimension `trunc`: `n`-simplices are pairs of
/// `n`-simplices, a pair being nondegenerate when its words share no degeneracy index.
pub fn product(x: &SimplicialSet, y: &SimplicialSet, trunc: usize) -> SimplicialSet {
    let model = Product { x, y };
    Assembled::build(&model, trunc).expect("products of valid sets are closed").to_simplicial_set(&model)
}

/// Flat view of a generator-form set: global ids, faces and cofaces.
struct Incidence {
    offsets: Vec<usize>,
    gens: Vec<GenId>,
    /// Per generator: `(word hash, face id)` for each face.
    faces: Vec<Vec<(u64, usize)>>,
    /// Per generator: `(position, word hash, coface id)`.
    cofaces: Vec<Vec<(usize, u64, usize)>>,
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = FxHasher::default();
    t.hash(&mut h);
    h.finish()
}

impl Incidence {
    fn new(x: &SimplicialSet) -> Self {
        let mut offsets = Vec::with_capacity(x.d_max() + 2);
        let mut total = 0;
        for d in 0..=x.d_max() {
            offsets.push(total);
            total += x.generator_count(d);
        }
        offsets.push(total);
        let gens: Vec<GenId> = x.all_generators().collect();
        let id = |g: GenId| offsets[g.dim] + g.index;
        let faces: Vec<Vec<(u64, usize)>> = gens
            .iter()
            .map(|&g| x.generator_faces(g).iter().map(|r| (hash_of(&r.word), id(r.gen))).collect())
            .collect();
        let mut cofaces = vec![Vec::new(); total];
        for (a, fs) in faces.iter().enumerate() {
            for (i, &(w, f)) in fs.iter().enumerate() {
                cofaces[f].push((i, w, a));
            }
        }
        Incidence { offsets, gens, faces, cofaces }
    }

    fn id(&self, g: GenId) -> usize {
        self.offsets[g.dim] + g.index
    }

    /// One round of colour refinement.
    fn refine(&self, colour: &[u64]) -> Vec<u64> {
        (0..self.gens.len())
            .map(|a| {
                let down: Vec<(u64, u64)> = self.faces[a].iter().map(|&(w, f)| (w, colour[f])).collect();
                let mut up: Vec<(usize, u64, u64)> = self.cofaces[a].iter().map(|&(i, w, c)| (i, w, colour[c])).collect();
                up.sort_unstable();
                hash_of(&(colour[a], down, up))
            })
            .collect()
    }
}

fn class_count(colour: &[u64]) -> usize {
    colour.iter().collect::<std::collections::HashSet<_>>().len()
}

/// Stable colourings of `X` and `Y` computed in lockstep, so equal colours are comparable.
fn stable_colours(ix: &Incidence, iy: &Incidence) -> (Vec<u64>, Vec<u64>) {
    let init = |inc: &Incidence| -> Vec<u64> { inc.gens.iter().map(|g| hash_of(&g.dim)).collect() };
    let (mut cx, mut cy) = (init(ix), init(iy));
    let mut classes = class_count(&cx) + class_count(&cy);
    loop {
        let (nx, ny) = (ix.refine(&cx), iy.refine(&cy));
        let next = class_count(&nx) + class_count(&ny);
        (cx, cy) = (nx, ny);
        if next == classes {
            return (cx, cy);
        }
        classes = next;
    }
}

/// Partial bijection with an undo trail.
struct Matching {
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    trail: Vec<usize>,
}

impl Matching {
    /// Assigns `a ↦ b` and everything forced through faces; undoes itself on conflict.
    fn assign(&mut self, ix: &Incidence, iy: &Incidence, cx: &[u64], cy: &[u64], a: usize, b: usize) -> bool {
        let mark = self.trail.len();
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            match (self.fwd[a], self.bwd[b]) {
                (Some(t), _) if t == b => continue,
                (None, None) if cx[a] == cy[b] => {}
                _ => {
                    self.undo(mark);
                    return false;
                }
            }
            self.fwd[a] = Some(b);
            self.bwd[b] = Some(a);
            self.trail.push(a);
            for (&(wa, fa), &(wb, fb)) in ix.faces[a].iter().zip(&iy.faces[b]) {
                if wa != wb {
                    self.undo(mark);
                    return false;
                }
                work.push((fa, fb));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for a in self.trail.drain(mark..) {
            let b = self.fwd[a].take().expect("trailed");
            self.bwd[b] = None;
        }
    }
}

/// Searches for an isomorphism `X → Y` (label-insensitive): colour refinement on the
/// face/coface incidence, then backtracking over generators from the top dimension down,
/// each choice propagated through faces.
pub fn find_isomorphism(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<SimplicialMap> {
    let top = x.d_max().max(y.d_max());
    let counts = |s: &SimplicialSet| (0..=top).map(|d| if d <= s.d_max() { s.generator_count(d) } else { 0 }).collect::<Vec<_>>();
    if counts(x) != counts(y) {
        return None;
    }
    let (ix, iy) = (Incidence::new(x), Incidence::new(y));
    let (cx, cy) = stable_colours(&ix, &iy);
    let mut by_colour: std::collections::HashMap<u64, Vec<usize>> = std::collections::HashMap::new();
    for (b, &c) in cy.iter().enumerate() {
        by_colour.entry(c).or_default().push(b);
    }
    let mut sizes_x: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
    for &c in &cx {
        *sizes_x.entry(c).or_default() += 1;
    }
    if sizes_x.iter().any(|(c, &n)| by_colour.get(c).map_or(0, Vec::len) != n) {
        return None;
    }
    let mut order: Vec<usize> = (0..ix.gens.len()).collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(ix.gens[a].dim), sizes_x[&cx[a]], a));
    let n = ix.gens.len();
    let mut m = Matching { fwd: vec![None; n], bwd: vec![None; n], trail: Vec::new() };
    // frames: (position in order, next candidate, trail mark)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    let mut pos = 0;
    let mut next_candidate = 0;
    loop {
        while pos < n && m.fwd[order[pos]].is_some() {
            pos += 1;
        }
        if pos == n {
            break;
        }
        let a = order[pos];
        let candidates = &by_colour[&cx[a]];
        let mark = m.trail.len();
        let found = (next_candidate..candidates.len())
            .find(|&k| m.bwd[candidates[k]].is_none() && m.assign(&ix, &iy, &cx, &cy, a, candidates[k]));
        match found {
            Some(k) => {
                stack.push((pos, k + 1, mark));
                pos += 1;
                next_candidate = 0;
            }
            None => {
                let (p, k, mark) = stack.pop()?;
                m.undo(mark);
                pos = p;
                next_candidate = k;
            }
        }
    }
    let f = SimplicialMap::from_fn(x.clone(), y.clone(), |g| {
        let b = m.fwd[ix.id(g)].expect("complete");
        SimplexRef::generator(iy.gens[b])
    })
    .ok()?;
    debug_assert!(is_isomorphism(&f));
    Some(f)
}

/// Whether `f` is a bijection on generators that commutes with faces.
pub fn is_isomorphism(f: &SimplicialMap) -> bool {
    let (x, y) = (f.source(), f.target());
    let top = x.d_max().max(y.d_max());
    for d in 0..=top {
        if x.generator_count(d) != y.generator_count(d) {
            return false;
        }
        let mut hit = vec![false; y.generator_count(d)];
        for g in x.generators(d) {
            let r = f.image(g);
            if !r.is_nondegenerate() || std::mem::replace(&mut hit[r.gen.index], true) {
                return false;
            }
        }
    }
    is_simplicial_map(f).map(|r| r.valid).unwrap_or(false)
}

pub fn are_isomorphic(x: &SimplicialSet, y: &SimplicialSet) -> bool {
    find_isomorphism(&Arc::new(x.clone()), &Arc::new(y.clone())).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::bisimplicial::{diagonal, external_product};
    use crate::simplicial::standard::{boundary_simplex, horn, minimal_torus, standard_simplex};

    #[test]
    fn square_has_two_triangles() {
        let i = standard_simplex(1);
        let sq = product(&i, &i, 2);
        assert_eq!(sq.generator_counts(), vec![4, 5, 2]);
        sq.validate().unwrap();
        assert!(!sq.is_truncated());
        assert!(product(&i, &i, 1).is_truncated());
    }

    #[test]
    fn point_is_a_unit() {
        let pt = standard_simplex(0);
        for y in [boundary_simplex(2), standard_simplex(2), horn(3, 1).unwrap()] {
            let d = y.d_max();
            assert!(are_isomorphic(&product(&pt, &y, d), &y));
            assert!(are_isomorphic(&product(&y, &pt, d), &y));
        }
    }

    #[test]
    fn diagonal_matches_product() {
        let i = standard_simplex(1);
        let d = diagonal(&external_product(&i, &i), 2);
        assert!(are_isomorphic(&d, &product(&i, &i, 2)));
    }

    #[test]
    fn non_isomorphic_sets() {
        // both have two edges, but only one is a composable path
        assert!(!are_isomorphic(&horn(2, 0).unwrap(), &horn(2, 1).unwrap()));
        assert!(!are_isomorphic(&boundary_simplex(2), &horn(2, 1).unwrap()));
    }

    #[test]
    fn reordered_generators_are_isomorphic() {
        for x in [minimal_torus(), crate::poset::sd_simplex(2)] {
            let mut json = crate::json::SimplicialSetJson::from(&x);
            json.generators.iter_mut().for_each(|g| g.reverse());
            let y = json.build().unwrap();
            assert_ne!(x, y);
            let f = find_isomorphism(&Arc::new(x), &Arc::new(y)).unwrap();
            assert!(is_isomorphism(&f));
        }
    }
}
