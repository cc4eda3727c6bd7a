use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Dense matrix with arbitrary-precision integer entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Whether every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_a -= q * row_b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self.data[b * self.cols + j] * q;
            if !t.is_zero() {
                self.data[a * self.cols + j] -= t;
            }
        }
    }

    /// col_a -= q * col_b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self.data[i * self.cols + b] * q;
            if !t.is_zero() {
                self.data[i * self.cols + a] -= t;
            }
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[a * self.cols + j]);
            self.data[a * self.cols + j] = -v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())).finish()
    }
}

/// Serializes an integer as a JSON number when it fits in 64 bits, as a decimal string otherwise.
pub(crate) fn serialize_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        struct Big<'a>(&'a BigInt);
        impl Serialize for Big<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_big(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<Big> = (0..self.cols).map(|j| Big(self.get(i, j))).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ⋯`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with transforms. Pivots on the smallest nonzero absolute value in the
/// remaining block, ties broken by row-major position.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let d = reduce(m.clone(), Some((&mut u, &mut v)));
    SmithForm { u, d, v }
}

/// Invariant factors only (no transforms).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let d = reduce(m.clone(), None);
    (0..d.rows.min(d.cols)).map(|i| d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
}

fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn reduce(mut a: IntMatrix, mut track: Option<(&mut IntMatrix, &mut IntMatrix)>) -> IntMatrix {
    let steps = a.rows.min(a.cols);
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = smallest_pivot(&a, t) else {
                return a;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if let Some((u, v)) = track.as_mut() {
                u.swap_rows(t, pi);
                v.swap_cols(t, pj);
            }
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(&p);
                a.row_sub(i, t, &q);
                if let Some((u, _)) = track.as_mut() {
                    u.row_sub(i, t, &q);
                }
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..a.cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(&p);
                a.col_sub(j, t, &q);
                if let Some((_, v)) = track.as_mut() {
                    v.col_sub(j, t, &q);
                }
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending =
                (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.row_sub(t, i, &minus_one);
                    if let Some((u, _)) = track.as_mut() {
                        u.row_sub(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = track.as_mut() {
                u.negate_row(t);
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&m);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn boundary_of_triangle() {
        // ∂_1 of ∂Δ^2: rank 2, unit factors
        let m = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(1)]);
        assert!(s.d.is_diagonal());
    }
}
