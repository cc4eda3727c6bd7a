//! Extended simplices `Δ_e^n = {t ∈ R^{n+1} : Σ tⁱ = 1}` as exact rational affine data.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

/// `t ↦ M t + b` from `R^source_dim` to `R^target_dim`; `matrix` is `target_dim × source_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Vec<Vec<BigRational>>,
    pub offset: Vec<BigRational>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<BigRational>>, offset: Vec<BigRational>, source_dim: usize) -> Result<Self> {
        if matrix.len() != offset.len() || matrix.iter().any(|r| r.len() != source_dim) {
            return Err(invalid("affine map has inconsistent shapes"));
        }
        Ok(AffineMap { source_dim, target_dim: matrix.len(), matrix, offset })
    }

    /// The linear map sending basis vector `e_j` to `e_{images[j]}`.
    pub fn of_vertices(images: &[usize], target_dim: usize) -> Result<Self> {
        if images.iter().any(|&v| v >= target_dim) {
            return Err(invalid("vertex image out of range"));
        }
        let matrix = (0..target_dim)
            .map(|r| images.iter().map(|&c| if c == r { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        Self::new(matrix, vec![BigRational::zero(); target_dim], images.len())
    }

    pub fn identity(dim: usize) -> Self {
        Self::of_vertices(&(0..dim).collect::<Vec<_>>(), dim).expect("identity is well formed")
    }

    pub fn apply(&self, t: &[BigRational]) -> Result<Vec<BigRational>> {
        if t.len() != self.source_dim {
            return Err(invalid("point has the wrong dimension"));
        }
        Ok(self
            .matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| row.iter().zip(t).fold(b.clone(), |acc, (m, x)| acc + m * x))
            .collect())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AffineMap) -> Result<AffineMap> {
        if first.target_dim != self.source_dim {
            return Err(invalid("affine maps are not composable"));
        }
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..first.source_dim)
                    .map(|c| row.iter().zip(&first.matrix).fold(BigRational::zero(), |acc, (a, r)| acc + a * &r[c]))
                    .collect()
            })
            .collect();
        let offset = self.apply(&first.offset)?;
        AffineMap::new(matrix, offset, first.source_dim)
    }

    /// Whether `Σ tⁱ = 1` implies `Σ (M t + b)ⁱ = 1`: all column sums agree with some `c` and
    /// `c + Σ b = 1`.
    pub fn preserves_hyperplane(&self) -> bool {
        let sums: Vec<BigRational> = (0..self.source_dim)
            .map(|c| self.matrix.iter().fold(BigRational::zero(), |acc, r| acc + &r[c]))
            .collect();
        let offset: BigRational = self.offset.iter().fold(BigRational::zero(), |acc, b| acc + b);
        match sums.first() {
            Some(c) => sums.iter().all(|s| s == c) && c + offset == BigRational::one(),
            None => offset == BigRational::one(),
        }
    }
}

/// `d^i: Δ_e^{n-1} → Δ_e^n`, inserting a zero coordinate at position `i`.
pub fn coface(n: usize, i: usize) -> Result<AffineMap> {
    if n == 0 || i > n {
        return Err(invalid(format!("coface d^{i} into dimension {n} is out of range")));
    }
    let images: Vec<usize> = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
    AffineMap::of_vertices(&images, n + 1)
}

/// `s^i: Δ_e^{n+1} → Δ_e^n`, adding coordinates `i` and `i + 1`.
pub fn codegeneracy(n: usize, i: usize) -> Result<AffineMap> {
    if i > n {
        return Err(invalid(format!("codegeneracy s^{i} onto dimension {n} is out of range")));
    }
    let images: Vec<usize> = (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
    AffineMap::of_vertices(&images, n + 1)
}

/// Structure maps to check; lets tests substitute broken ones.
pub struct CosimplicialMaps<'a> {
    pub coface: &'a dyn Fn(usize, usize) -> Result<AffineMap>,
    pub codegeneracy: &'a dyn Fn(usize, usize) -> Result<AffineMap>,
}

impl Default for CosimplicialMaps<'_> {
    fn default() -> Self {
        CosimplicialMaps { coface: &coface, codegeneracy: &codegeneracy }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosimplicialReport {
    pub passed: bool,
    pub checked: usize,
    pub hyperplane_checked: usize,
    /// Failed instances, e.g. `d^2 d^0 = d^0 d^1 on [1]`.
    pub failures: Vec<String>,
}

/// Verifies exactly, for every `n ≤ n_max` where both sides are defined:
/// `d^j d^i = d^i d^{j-1}` (`i < j`), `s^j s^i = s^i s^{j+1}` (`i ≤ j`),
/// `s^j d^i = d^i s^{j-1}` (`i < j`), `s^j d^j = s^j d^{j+1} = id` and
/// `s^j d^i = d^{i-1} s^j` (`i > j + 1`), and that every structure map preserves `Σ t = 1`.
pub fn check_cosimplicial_identities(n_max: usize) -> Result<CosimplicialReport> {
    check_cosimplicial_identities_with(n_max, &CosimplicialMaps::default())
}

pub fn check_cosimplicial_identities_with(n_max: usize, maps: &CosimplicialMaps) -> Result<CosimplicialReport> {
    if n_max == 0 {
        return Err(invalid("n_max must be at least 1"));
    }
    let d = |n: usize, i: usize| (maps.coface)(n, i);
    let s = |n: usize, i: usize| (maps.codegeneracy)(n, i);
    let mut report = CosimplicialReport { passed: true, checked: 0, hyperplane_checked: 0, failures: Vec::new() };
    let mut expect = |lhs: AffineMap, rhs: AffineMap, what: String| {
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(what);
        }
    };
    // the composites below run from dimension n - 1 or n + 1 through n
    for n in 1..=n_max {
        for j in 0..=n {
            for i in 0..j {
                // d^j d^i = d^i d^{j-1}: [n-2] → [n]
                if n >= 2 {
                    expect(d(n, j)?.after(&d(n - 1, i)?)?, d(n, i)?.after(&d(n - 1, j - 1)?)?, format!("d^{j} d^{i} = d^{i} d^{} on [{}]", j - 1, n - 2));
                }
            }
        }
        for j in 0..n {
            for i in 0..=j {
                // s^j s^i = s^i s^{j+1}: [n+1] → [n-1]
                expect(s(n - 1, j)?.after(&s(n, i)?)?, s(n - 1, i)?.after(&s(n, j + 1)?)?, format!("s^{j} s^{i} = s^{i} s^{} on [{}]", j + 1, n + 1));
            }
        }
    }
    // mixed identities on [n] → [n]
    for n in 0..=n_max {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = s(n, j)?.after(&d(n + 1, i)?)?;
                let (rhs, what) = if i < j {
                    (d(n, i)?.after(&s(n - 1, j - 1)?)?, format!("s^{j} d^{i} = d^{i} s^{} on [{n}]", j - 1))
                } else if i == j || i == j + 1 {
                    (AffineMap::identity(n + 1), format!("s^{j} d^{i} = id on [{n}]"))
                } else {
                    (d(n, i - 1)?.after(&s(n - 1, j)?)?, format!("s^{j} d^{i} = d^{} s^{j} on [{n}]", i - 1))
                };
                expect(lhs, rhs, what);
            }
        }
    }
    for n in 1..=n_max {
        for i in 0..=n {
            report.hyperplane_checked += 1;
            if !d(n, i)?.preserves_hyperplane() {
                report.failures.push(format!("d^{i} into [{n}] leaves the hyperplane"));
            }
        }
    }
    for n in 0..n_max {
        for i in 0..=n {
            report.hyperplane_checked += 1;
            if !s(n, i)?.preserves_hyperplane() {
                report.failures.push(format!("s^{i} onto [{n}] leaves the hyperplane"));
            }
        }
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}

/// Vertices of `ι^n: |Δ^n| ↪ Δ_e^n`: the standard basis vectors of `R^{n+1}`.
pub fn standard_inclusion(n: usize) -> Vec<Vec<BigRational>> {
    (0..=n).map(|i| (0..=n).map(|j| if i == j { int(1) } else { int(0) }).collect()).collect()
}

/// `Δ_e(σ)` for monotone `σ: [n] → [k]`, assembled from its epi-mono factorization into
/// codegeneracies and cofaces.
pub fn structure_map(sigma: &[usize], k: usize) -> Result<AffineMap> {
    if sigma.is_empty() || sigma.windows(2).any(|w| w[0] > w[1]) || sigma.iter().any(|&v| v > k) {
        return Err(invalid("σ must be a monotone map [n] → [k]"));
    }
    let n = sigma.len() - 1;
    let mut map = AffineMap::identity(n + 1);
    // collapse repeated values, highest first
    let mut dim = n;
    for j in (0..n).rev() {
        if sigma[j] == sigma[j + 1] {
            map = codegeneracy(dim - 1, j)?.after(&map)?;
            dim -= 1;
        }
    }
    let mut image: Vec<usize> = sigma.to_vec();
    image.dedup();
    // insert missed vertices, lowest first
    let mut present = image.clone();
    for v in 0..=k {
        if !present.contains(&v) {
            map = coface(dim + 1, v)?.after(&map)?;
            dim += 1;
            present.push(v);
        }
    }
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityVerdict {
    pub sigma: Vec<usize>,
    pub k: usize,
    pub commutes: bool,
}

/// `Δ_e(σ) ∘ ι^n = ι^k ∘ |Δ|(σ)`, checked on vertices (both sides are affine).
pub fn naturality_check(sigma: &[usize], k: usize) -> Result<NaturalityVerdict> {
    let map = structure_map(sigma, k)?;
    let target = standard_inclusion(k);
    let mut commutes = true;
    for (i, v) in standard_inclusion(sigma.len() - 1).iter().enumerate() {
        commutes &= map.apply(v)? == target[sigma[i]];
    }
    Ok(NaturalityVerdict { sigma: sigma.to_vec(), k, commutes })
}

/// Every monotone `σ: [n] → [k]` with `n, k ≤ bound`, in lex order per `(n, k)`.
pub fn monotone_sequences(bound: usize) -> Vec<(Vec<usize>, usize)> {
    (0..=bound)
        .flat_map(|n| (0..=bound).map(move |k| (n, k)))
        .flat_map(|(n, k)| (0..=k).combinations_with_replacement(n + 1).map(move |s| (s, k)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineCheckReport {
    pub passed: bool,
    pub identities: CosimplicialReport,
    pub naturality_bound: usize,
    pub naturality_checked: usize,
    pub naturality_failures: Vec<NaturalityVerdict>,
}

/// Cosimplicial identities up to `n_max` and naturality for all monotone maps between
/// `[n]` and `[k]` with `n, k ≤ bound`.
pub fn affine_check(n_max: usize, bound: usize) -> Result<AffineCheckReport> {
    let identities = check_cosimplicial_identities(n_max)?;
    let sigmas = monotone_sequences(bound);
    let mut naturality_failures = Vec::new();
    for (sigma, k) in &sigmas {
        let v = naturality_check(sigma, *k)?;
        if !v.commutes {
            naturality_failures.push(v);
        }
    }
    Ok(AffineCheckReport {
        passed: identities.passed && naturality_failures.is_empty(),
        identities,
        naturality_bound: bound,
        naturality_checked: sigmas.len(),
        naturality_failures,
    })
}

fn rational_pair(q: &BigRational) -> [serde_json::Value; 2] {
    let part = |b: &BigInt| {
        i64::try_from(b).map_or_else(|_| serde_json::Value::String(b.to_string()), |v| serde_json::Value::from(v))
    };
    [part(q.numer()), part(q.denom())]
}

fn parse_rational(v: &serde_json::Value) -> std::result::Result<BigRational, String> {
    let part = |x: &serde_json::Value| -> std::result::Result<BigInt, String> {
        match x {
            serde_json::Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| format!("not an integer: {n}")),
            serde_json::Value::String(s) => s.parse().map_err(|_| format!("not an integer: {s}")),
            other => Err(format!("not an integer: {other}")),
        }
    };
    match v.as_array().map(Vec::as_slice) {
        Some([n, d]) => {
            let d = part(d)?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(part(n)?, d))
        }
        _ => Err(format!("expected [numerator, denominator], got {v}")),
    }
}

impl Serialize for AffineMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let matrix: Vec<Vec<[serde_json::Value; 2]>> =
            self.matrix.iter().map(|r| r.iter().map(rational_pair).collect()).collect();
        let offset: Vec<[serde_json::Value; 2]> = self.offset.iter().map(rational_pair).collect();
        let mut st = s.serialize_struct("AffineMap", 4)?;
        st.serialize_field("source_dim", &self.source_dim)?;
        st.serialize_field("target_dim", &self.target_dim)?;
        st.serialize_field("matrix", &matrix)?;
        st.serialize_field("offset", &offset)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AffineMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            source_dim: usize,
            target_dim: usize,
            matrix: Vec<Vec<serde_json::Value>>,
            offset: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(d)?;
        let matrix = raw
            .matrix
            .iter()
            .map(|r| r.iter().map(parse_rational).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let offset = raw.offset.iter().map(parse_rational).collect::<std::result::Result<Vec<_>, _>>().map_err(D::Error::custom)?;
        let map = AffineMap::new(matrix, offset, raw.source_dim).map_err(D::Error::custom)?;
        if map.target_dim != raw.target_dim {
            return Err(D::Error::custom("target_dim does not match the matrix"));
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn full_check_counts() {
        let r = super::affine_check(5, 3).unwrap();
        assert!(r.passed);
        // Σ_{n,k ≤ 3} C(n + k + 1, n + 1)
        let expected: usize = (0..=3u32)
            .flat_map(|n| (0..=3u32).map(move |k| (n, k)))
            .map(|(n, k)| (1..=n + 1).fold(1usize, |acc, i| acc * (k + i) as usize / i as usize))
            .sum();
        assert_eq!(r.naturality_checked, expected);
    }

    use super::*;

    fn q(v: i64) -> BigRational {
        int(v)
    }

    #[test]
    fn coface_inserts_a_zero() {
        let d = coface(1, 0).unwrap();
        assert_eq!(d.apply(&[q(1)]).unwrap(), vec![q(0), q(1)]);
        let t = BigRational::new(3.into(), 7.into());
        assert_eq!(coface(2, 1).unwrap().apply(&[t.clone(), q(1) - &t]).unwrap(), vec![t.clone(), q(0), q(1) - t]);
    }

    #[test]
    fn codegeneracy_adds_neighbours() {
        let s = codegeneracy(0, 0).unwrap();
        let (a, b) = (BigRational::new(1.into(), 3.into()), BigRational::new(2.into(), 3.into()));
        assert_eq!(s.apply(&[a, b]).unwrap(), vec![q(1)]);
        assert!(s.preserves_hyperplane());
    }

    #[test]
    fn identities_hold() {
        let r = check_cosimplicial_identities(2).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        assert!(r.checked > 0);
    }

    #[test]
    fn off_by_one_coface_is_caught() {
        let broken = |n: usize, i: usize| coface(n, if i == 0 { 1 } else { i });
        let maps = CosimplicialMaps { coface: &broken, codegeneracy: &codegeneracy };
        let r = check_cosimplicial_identities_with(2, &maps).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn naturality_for_small_maps() {
        assert!(naturality_check(&[0, 1, 2], 2).unwrap().commutes);
        let collapse = structure_map(&[0, 0], 0).unwrap();
        assert_eq!(collapse, codegeneracy(0, 0).unwrap());
        assert!(naturality_check(&[0, 0], 0).unwrap().commutes);
        assert!(naturality_check(&[1, 0], 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = structure_map(&[0, 2, 2], 3).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: AffineMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(text.contains("[1,1]"));
    }
}
