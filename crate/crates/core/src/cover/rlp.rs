use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::simplicial::{SimplicialMap, TabularMap, TabularSimplicialSet};

/// An explicit lift: `(n, boundary ids at level n - 1, target simplex id)` to a source `n`-simplex.
pub type LiftFn<'a> = dyn Fn(usize, &[u32], u32) -> Option<u32> + 'a;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RlpFailure {
    pub n: usize,
    /// Target simplex id at level `n`.
    pub target: u32,
    /// Source ids `x_0, …, x_n` at level `n - 1`; empty for `n = 0`.
    pub boundary: Vec<u32>,
    /// `true` when a lift exists but the explicit construction missed it.
    pub lift_exists: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RlpLevel {
    pub n: usize,
    pub squares: usize,
    pub lifted: usize,
    /// Squares on which an explicit lift was tried, and how many produced a genuine lift.
    pub constructive_checked: usize,
    pub constructive_valid: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RlpReport {
    pub passed: bool,
    /// Every square has a lift.
    pub lifts_exist: bool,
    /// Every explicit lift was genuine; `None` without a construction.
    pub constructive_valid: Option<bool>,
    pub levels: Vec<RlpLevel>,
    /// First failures, at most [`MAX_LISTED`].
    pub failures: Vec<RlpFailure>,
}

pub const MAX_LISTED: usize = 16;

/// Right lifting property of `f` against `∂Δ^n → Δ^n` for `0 ≤ n ≤ n_max`, by exhaustive
/// enumeration of commutative squares: a square is a simplex `v` of the target with a
/// compatible boundary `x_0, …, x_n` in the source over the faces of `v` (for `n = 0`, just a
/// vertex). At most `cap` squares per level.
pub fn check_rlp_tables(
    src: &TabularSimplicialSet,
    tgt: &TabularSimplicialSet,
    f: &TabularMap,
    n_max: usize,
    cap: usize,
    lift: Option<&LiftFn>,
) -> Result<RlpReport> {
    if n_max > src.d_max() || n_max > tgt.d_max() || f.images.len() <= n_max {
        return Err(invalid(format!("lifting up to n = {n_max} needs both sides tabulated that far")));
    }
    let mut levels = Vec::with_capacity(n_max + 1);
    let mut failures = Vec::new();
    let mut push_failure = |fail: RlpFailure| {
        if failures.len() < MAX_LISTED {
            failures.push(fail);
        }
    };

    let mut hit = vec![false; tgt.count(0)];
    for &y in &f.images[0] {
        hit[y as usize] = true;
    }
    for (v, _) in hit.iter().enumerate().filter(|(_, h)| !**h) {
        push_failure(RlpFailure { n: 0, target: v as u32, boundary: Vec::new(), lift_exists: false });
    }
    let lifted = hit.iter().filter(|h| **h).count();
    levels.push(RlpLevel { n: 0, squares: hit.len(), lifted, constructive_checked: 0, constructive_valid: 0 });
    let mut all_lift = lifted == hit.len();
    let mut all_valid = true;

    for n in 1..=n_max {
        let mut fibers: Vec<Vec<u32>> = vec![Vec::new(); tgt.count(n - 1)];
        for (x, &y) in f.images[n - 1].iter().enumerate() {
            fibers[y as usize].push(x as u32);
        }
        let mut by_boundary: FxHashMap<&[u32], Vec<u32>> = FxHashMap::default();
        for x in 0..src.count(n) {
            by_boundary.entry(src.faces_of(n, x)).or_default().push(x as u32);
        }
        let mut level = RlpLevel { n, squares: 0, lifted: 0, constructive_checked: 0, constructive_valid: 0 };
        let mut boundary = Vec::with_capacity(n + 1);
        for v in 0..tgt.count(n) {
            let faces: Vec<usize> = (0..=n).map(|i| tgt.face(n, v, i)).collect();
            let mut on_square = |boundary: &[u32]| -> Result<()> {
                level.squares += 1;
                if level.squares > cap {
                    return Err(Error::CapExceeded { what: format!("lifting squares at n = {n}"), cap });
                }
                let exists = by_boundary
                    .get(boundary)
                    .is_some_and(|xs| xs.iter().any(|&x| f.image(n, x as usize) == v));
                if exists {
                    level.lifted += 1;
                }
                let mut built_ok = true;
                if let Some(lift) = lift {
                    level.constructive_checked += 1;
                    built_ok = lift(n, boundary, v as u32).is_some_and(|x| {
                        (x as usize) < src.count(n)
                            && src.faces_of(n, x as usize) == boundary
                            && f.image(n, x as usize) == v
                    });
                    if built_ok {
                        level.constructive_valid += 1;
                    }
                }
                if !exists || !built_ok {
                    push_failure(RlpFailure { n, target: v as u32, boundary: boundary.to_vec(), lift_exists: exists });
                }
                Ok(())
            };
            boundaries(src, n, &faces, &fibers, &mut boundary, &mut on_square)?;
        }
        all_lift &= level.lifted == level.squares;
        all_valid &= level.constructive_valid == level.constructive_checked;
        levels.push(level);
    }
    let constructive_valid = lift.map(|_| all_valid);
    Ok(RlpReport {
        passed: all_lift && constructive_valid.unwrap_or(true),
        lifts_exist: all_lift,
        constructive_valid,
        levels,
        failures,
    })
}

/// Compatible boundaries over `faces`: `x_i` over `faces[i]` with `d_j x_i = d_{i-1} x_j` for `j < i`.
fn boundaries(
    src: &TabularSimplicialSet,
    n: usize,
    faces: &[usize],
    fibers: &[Vec<u32>],
    chosen: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    let i = chosen.len();
    if i == n + 1 {
        return visit(chosen);
    }
    for &x in &fibers[faces[i]] {
        let fits = n < 2
            || (0..i).all(|j| src.face(n - 1, x as usize, j) == src.face(n - 1, chosen[j] as usize, i - 1));
        if fits {
            chosen.push(x);
            boundaries(src, n, faces, fibers, chosen, visit)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// [`check_rlp_tables`] for a generator-form map, tabulating both sides up to `n_max`.
pub fn check_rlp(f: &SimplicialMap, n_max: usize, cap: usize) -> Result<RlpReport> {
    let (src, tgt, map) = f.tabulate(n_max);
    check_rlp_tables(&src.table, &tgt.table, &map, n_max, cap, None)
}
