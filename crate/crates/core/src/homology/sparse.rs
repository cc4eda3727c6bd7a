use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::homology::matrix::{invariant_factors, IntMatrix};

/// Sparse integer matrix stored by columns; each column is sorted by row with no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, cols: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Appends a column, summing duplicate rows and dropping zeros.
    pub fn push_col(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut col: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            debug_assert!((r as usize) < self.rows);
            match col.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => col.push((r, v)),
            }
        }
        col.retain(|e| e.1 != 0);
        self.cols.push(col);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j].binary_search_by_key(&(i as u32), |e| e.0).map_or(0, |k| self.cols[j][k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i as usize].push((j as u32, v));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols }
    }

    /// Exact product; `None` if an entry leaves the 64-bit range.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols.len(), other.rows, "dimension mismatch");
        let mut out = SparseMatrix::new(self.rows);
        let mut acc: std::collections::BTreeMap<u32, i128> = Default::default();
        for col in &other.cols {
            acc.clear();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k as usize] {
                    *acc.entry(i).or_default() += a as i128 * b as i128;
                }
            }
            let mut entries = Vec::with_capacity(acc.len());
            for (&i, &v) in &acc {
                if v != 0 {
                    entries.push((i, i64::try_from(v).ok()?));
                }
            }
            out.cols.push(entries);
        }
        Some(out)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m.set(i as usize, j, BigInt::from(v));
            }
        }
        m
    }

    /// Horizontal block `[self | other]`.
    pub fn hcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        SparseMatrix { rows: self.rows, cols }
    }

    /// Vertical block `[self; other]`.
    pub fn vcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), other.cols.len());
        let shift = self.rows as u32;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&(i, v)| (i + shift, v))).collect())
            .collect();
        SparseMatrix { rows: self.rows + other.rows, cols }
    }

    pub fn scaled(&self, s: i64) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|&(i, v)| (i, v * s)).collect()).collect(),
        }
    }

    /// Rank and the invariant factors greater than one.
    pub fn smith_summary(&self) -> SmithSummary {
        let m = if self.cols.len() > self.rows { self.transpose() } else { self.clone() };
        if let Some(done) = reduce::<i64>(&m) {
            return done;
        }
        reduce::<BigInt>(&m).expect("arbitrary precision cannot overflow")
    }
}

impl Serialize for SparseMatrix {
    /// Dense row arrays, for external verification.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_dense().serialize(s)
    }
}

/// Rank of a matrix together with its nontrivial invariant factors (each > 1, ascending,
/// each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

trait Coeff: Clone + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `a - f * b`
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(f.checked_mul(*b)?)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        Some(a - f * b)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Col<T> = Vec<(u32, T)>;

/// `c - f * p` for sorted sparse columns.
fn axpy<T: Coeff>(c: &Col<T>, f: &T, p: &Col<T>) -> Option<Col<T>> {
    let mut out = Vec::with_capacity(c.len() + p.len());
    let (mut a, mut b) = (0, 0);
    let zero = T::from_i64(0);
    while a < c.len() || b < p.len() {
        let ra = c.get(a).map_or(u32::MAX, |e| e.0);
        let rb = p.get(b).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(c[a].clone());
            a += 1;
        } else if rb < ra {
            let v = T::sub_mul(&zero, f, &p[b].1)?;
            out.push((rb, v));
            b += 1;
        } else {
            let v = T::sub_mul(&c[a].1, f, &p[b].1)?;
            if !v.is_zero() {
                out.push((ra, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some(out)
}

/// Column reduction by unit pivots on the lowest entry. Columns whose lowest entry cannot be
/// cleared by a unit are set aside; after full reduction against all pivots their restriction
/// to non-pivot rows carries the remaining invariant factors, which a dense Smith normal form
/// extracts. Returns `None` on 64-bit overflow.
fn reduce<T: Coeff>(m: &SparseMatrix) -> Option<SmithSummary> {
    let mut pivot_of_row: Vec<u32> = vec![u32::MAX; m.rows];
    let mut pivots: Vec<Col<T>> = Vec::new();
    let mut residual: Vec<Col<T>> = Vec::new();
    for col in &m.cols {
        let mut c: Col<T> = col.iter().map(|&(i, v)| (i, T::from_i64(v))).collect();
        while let Some((low, v)) = c.last().cloned() {
            let p = pivot_of_row[low as usize];
            if p != u32::MAX {
                let pc = &pivots[p as usize];
                // unit pivot: v / u = v * u
                let f = T::mul(&v, &pc.last().expect("pivot column").1)?;
                c = axpy(&c, &f, pc)?;
            } else if v.is_unit() {
                pivot_of_row[low as usize] = pivots.len() as u32;
                pivots.push(c);
                break;
            } else {
                residual.push(c);
                break;
            }
        }
    }
    let mut torsion = Vec::new();
    let mut rank = pivots.len();
    if !residual.is_empty() {
        let mut free_rows: Vec<u32> = Vec::new();
        let mut row_pos = vec![u32::MAX; m.rows];
        for r in 0..m.rows {
            if pivot_of_row[r] == u32::MAX {
                row_pos[r] = free_rows.len() as u32;
                free_rows.push(r as u32);
            }
        }
        let mut dense = IntMatrix::zeros(free_rows.len(), residual.len());
        for (j, mut c) in residual.into_iter().enumerate() {
            // clear every pivot-row entry, highest first
            loop {
                let hit = c.iter().rev().find(|e| pivot_of_row[e.0 as usize] != u32::MAX).cloned();
                let Some((r, v)) = hit else { break };
                let pc = &pivots[pivot_of_row[r as usize] as usize];
                let f = T::mul(&v, &pc.last().expect("pivot column").1)?;
                c = axpy(&c, &f, pc)?;
            }
            for (r, v) in c {
                dense.set(row_pos[r as usize] as usize, j, v.to_big());
            }
        }
        let factors = invariant_factors(&dense);
        rank += factors.len();
        torsion = factors.into_iter().filter(|f| f.to_i64() != Some(1)).collect();
    }
    Some(SmithSummary { rank, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[Vec<i64>]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(r);
        for j in 0..c {
            m.push_col((0..r).map(|i| (i as u32, rows[i][j])).collect());
        }
        m
    }

    #[test]
    fn torsion_of_two_by_two() {
        let m = from_dense(&[vec![2, 0], vec![0, 3]]);
        let s = m.smith_summary();
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, vec![BigInt::from(6)]);
    }

    #[test]
    fn matches_dense_on_small_cases() {
        let cases = [
            vec![vec![1, 1, 0], vec![-1, 0, 1], vec![0, -1, -1]],
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![3, 0, 0, 1], vec![0, 3, 0, 1]],
        ];
        for case in cases {
            let m = from_dense(&case);
            let s = m.smith_summary();
            let dense = invariant_factors(&m.to_dense());
            assert_eq!(s.rank, dense.len());
            let nontrivial: Vec<BigInt> = dense.into_iter().filter(|f| f.to_i64() != Some(1)).collect();
            assert_eq!(s.torsion, nontrivial);
        }
    }

    #[test]
    fn product_and_blocks() {
        let a = from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = a.mul(&a).unwrap();
        assert_eq!(b.get(0, 1), 4);
        assert_eq!(a.vcat(&a).rows(), 4);
        assert_eq!(a.hcat(&a).cols(), 4);
        assert_eq!(a.transpose().get(1, 0), 2);
    }
}
