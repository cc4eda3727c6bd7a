//! Standard simplices and their subcomplexes, built from ordered vertex sets.

use std::collections::{BTreeSet, HashMap};

use crate::error::{invalid, Result};
use crate::simplicial::sset::{GenId, SimplexRef, SimplicialSet};

/// Label of the face spanned by sorted vertices, e.g. `[0,2]`.
pub fn vertex_label(vertices: &[usize]) -> String {
    let parts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// The simplicial set of an ordered simplicial complex: every simplex is a strictly increasing
/// vertex list, `d_i` deletes the `i`-th vertex. `simplices` must be closed under nonempty
/// subsets.
pub fn ordered_complex(simplices: &BTreeSet<Vec<usize>>, d_max: usize) -> Result<SimplicialSet> {
    let mut by_dim: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); d_max + 1];
    for s in simplices {
        if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!("simplex {s:?} is not a strictly increasing vertex list")));
        }
        let dim = s.len() - 1;
        if dim > d_max {
            return Err(invalid(format!("simplex {s:?} exceeds d_max {d_max}")));
        }
        by_dim[dim].push(s);
    }
    let mut x = SimplicialSet::new(d_max);
    let mut ids: HashMap<Vec<usize>, GenId> = HashMap::new();
    for (dim, level) in by_dim.iter().enumerate() {
        for s in level {
            let faces = if dim == 0 {
                Vec::new()
            } else {
                let mut faces = Vec::with_capacity(dim + 1);
                for i in 0..=dim {
                    let mut f = (*s).clone();
                    f.remove(i);
                    let id = ids
                        .get(&f)
                        .ok_or_else(|| invalid(format!("face {f:?} of {s:?} missing: not closed")))?;
                    faces.push(SimplexRef::generator(*id));
                }
                faces
            };
            let id = x.add_generator(vertex_label(s), dim, faces)?;
            ids.insert((*s).clone(), id);
        }
    }
    Ok(x)
}

fn subsets_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        out.push((0..=n).filter(|v| mask & (1 << v) != 0).collect());
    }
    out
}

/// Δ^n: one nondegenerate `k`-simplex per `(k+1)`-element subset of `{0,…,n}`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    let all: BTreeSet<Vec<usize>> = subsets_of(n).into_iter().collect();
    ordered_complex(&all, n).expect("subsets of [n] form a complex")
}

/// ∂Δ^n with `d_max = n - 1`. For `n = 0` this is the empty simplicial set.
pub fn boundary_simplex(n: usize) -> SimplicialSet {
    if n == 0 {
        return SimplicialSet::new(0);
    }
    let faces: BTreeSet<Vec<usize>> = subsets_of(n).into_iter().filter(|s| s.len() <= n).collect();
    ordered_complex(&faces, n - 1).expect("boundary is a complex")
}

/// The horn Λ^n_k: ∂Δ^n without its `k`-th face.
pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
    if n == 0 || k > n {
        return Err(invalid(format!("horn({n}, {k}) needs 0 ≤ k ≤ n and n ≥ 1")));
    }
    let missing: Vec<usize> = (0..=n).filter(|&v| v != k).collect();
    let faces: BTreeSet<Vec<usize>> =
        subsets_of(n).into_iter().filter(|s| s.len() <= n && *s != missing).collect();
    ordered_complex(&faces, n - 1)
}

/// The 7-vertex minimal triangulation of the torus (Möbius–Császár).
pub fn torus_triangles() -> Vec<[usize; 3]> {
    let mut tris = Vec::new();
    for i in 0..7 {
        let mut a = [i, (i + 1) % 7, (i + 3) % 7];
        let mut b = [i, (i + 2) % 7, (i + 3) % 7];
        a.sort_unstable();
        b.sort_unstable();
        tris.push(a);
        tris.push(b);
    }
    tris.sort_unstable();
    tris.dedup();
    tris
}

/// Closes a family of facets under nonempty subsets.
pub fn downward_closure<I: IntoIterator<Item = Vec<usize>>>(facets: I) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for f in facets {
        let k = f.len();
        for mask in 1u64..(1u64 << k) {
            out.insert((0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect::<Vec<_>>());
        }
    }
    out
}

/// The 7-vertex torus as a simplicial set.
pub fn minimal_torus() -> SimplicialSet {
    let complex = downward_closure(torus_triangles().into_iter().map(|t| t.to_vec()));
    ordered_complex(&complex, 2).expect("torus triangulation is a complex")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        assert_eq!(standard_simplex(0).generator_counts(), vec![1]);
        assert_eq!(standard_simplex(2).generator_counts(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(3).generator_counts(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn boundary_and_horn_counts() {
        assert_eq!(boundary_simplex(2).generator_counts(), vec![3, 3]);
        assert_eq!(boundary_simplex(3).generator_counts(), vec![4, 6, 4]);
        assert_eq!(horn(2, 1).unwrap().generator_counts(), vec![3, 2]);
        assert_eq!(boundary_simplex(0).generator_counts(), vec![0]);
        assert!(horn(2, 3).is_err());
    }

    #[test]
    fn faces_delete_vertices() {
        let x = standard_simplex(2);
        let top = x.find("[0,1,2]").unwrap();
        let d1 = &x.generator_faces(top)[1];
        assert_eq!(x.label(d1.gen), "[0,2]");
        x.validate().unwrap();
    }

    #[test]
    fn torus_has_euler_characteristic_zero() {
        let t = minimal_torus();
        assert_eq!(t.generator_counts(), vec![7, 21, 14]);
        assert_eq!(t.euler_characteristic(), 0);
    }
}
