use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A composite of degeneracy operators `s_{j_1} ∘ ⋯ ∘ s_{j_r}` kept in the normal form
/// `j_1 > j_2 > ⋯ > j_r`. The empty word is the identity.
///
/// Equivalently, the index set of a word is the set of positions `p` at which the underlying
/// monotone surjection repeats a value (`θ(p) = θ(p + 1)`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DegeneracyWord(Vec<usize>);

/// Result of pushing a face operator `d_i` through a degeneracy word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordFace {
    /// `d_i ∘ w = w'`: a cancelling pair `d_j s_j` or `d_{j+1} s_j` removed the face.
    Absorbed(DegeneracyWord),
    /// `d_i ∘ w = w' ∘ d_k`: the face reaches the underlying simplex as `d_k`.
    Through { prefix: DegeneracyWord, index: usize },
}

impl DegeneracyWord {
    pub fn identity() -> Self {
        DegeneracyWord(Vec::new())
    }

    /// Wraps an index sequence that is already strictly decreasing.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(invalid(format!("degeneracy word {indices:?} is not strictly decreasing")));
        }
        Ok(DegeneracyWord(indices))
    }

    /// Normalizes an arbitrary composite `s_{j_1} ∘ ⋯ ∘ s_{j_r}`.
    pub fn normalize(sequence: &[usize]) -> Self {
        sequence.iter().rev().fold(Self::identity(), |w, &j| w.prepend(j))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_i ∘ self`, renormalized with `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
    pub fn prepend(&self, i: usize) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut placed = false;
        for &j in &self.0 {
            if !placed && i <= j {
                out.push(j + 1);
            } else {
                if !placed {
                    out.push(i);
                    placed = true;
                }
                out.push(j);
            }
        }
        if !placed {
            out.push(i);
        }
        DegeneracyWord(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &DegeneracyWord) -> Self {
        self.0.iter().rev().fold(inner.clone(), |w, &j| w.prepend(j))
    }

    /// Pushes `d_i` through the word using the simplicial identities
    /// `d_i s_j = s_{j-1} d_i` (i < j), `d_j s_j = d_{j+1} s_j = id`,
    /// `d_i s_j = s_j d_{i-1}` (i > j + 1).
    pub fn face(&self, i: usize) -> WordFace {
        let mut prefix = Vec::with_capacity(self.0.len());
        let mut i = i;
        for (k, &j) in self.0.iter().enumerate() {
            if i < j {
                prefix.push(j - 1);
            } else if i == j || i == j + 1 {
                prefix.extend_from_slice(&self.0[k + 1..]);
                return WordFace::Absorbed(DegeneracyWord(prefix));
            } else {
                prefix.push(j);
                i -= 1;
            }
        }
        WordFace::Through { prefix: DegeneracyWord(prefix), index: i }
    }

    /// Checks that the word may act on a simplex of dimension `base_dim`.
    pub fn fits(&self, base_dim: usize) -> bool {
        match self.0.first() {
            None => true,
            Some(&top) => top < base_dim + self.0.len(),
        }
    }

    /// The monotone surjection `[base_dim + len] → [base_dim]` represented by the word.
    pub fn to_surjection(&self, base_dim: usize) -> Vec<usize> {
        let total = base_dim + self.0.len();
        let mut theta = Vec::with_capacity(total + 1);
        let mut value = 0;
        theta.push(0);
        for p in 0..total {
            if !self.0.contains(&p) {
                value += 1;
            }
            theta.push(value);
        }
        theta
    }

    /// Inverse of [`DegeneracyWord::to_surjection`]; `theta` must be a monotone surjection.
    pub fn from_surjection(theta: &[usize]) -> Self {
        let mut repeats: Vec<usize> =
            theta.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(p, _)| p).collect();
        repeats.reverse();
        DegeneracyWord(repeats)
    }
}

impl TryFrom<Vec<usize>> for DegeneracyWord {
    type Error = crate::Error;

    fn try_from(value: Vec<usize>) -> Result<Self> {
        DegeneracyWord::new(value)
    }
}

impl From<DegeneracyWord> for Vec<usize> {
    fn from(value: DegeneracyWord) -> Self {
        value.0
    }
}

impl fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.0.iter().map(|j| format!("s{j}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> DegeneracyWord {
        DegeneracyWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn repeated_s0_normalizes() {
        assert_eq!(DegeneracyWord::normalize(&[0, 0]), w(&[1, 0]));
        assert_eq!(w(&[0]).prepend(1), w(&[1, 0]));
        assert_eq!(w(&[2]).prepend(0), w(&[3, 0]));
    }

    #[test]
    fn rejects_unsorted_words() {
        assert!(DegeneracyWord::new(vec![0, 1]).is_err());
        assert!(DegeneracyWord::new(vec![1, 1]).is_err());
    }

    #[test]
    fn face_cases() {
        // d_0 s_0 = id
        assert_eq!(w(&[0]).face(0), WordFace::Absorbed(w(&[])));
        // d_2 s_0 = s_0 d_1
        assert_eq!(w(&[0]).face(2), WordFace::Through { prefix: w(&[0]), index: 1 });
        // d_1 s_1 s_0 = s_0
        assert_eq!(w(&[1, 0]).face(1), WordFace::Absorbed(w(&[0])));
        // d_0 s_2 = s_1 d_0
        assert_eq!(w(&[2]).face(0), WordFace::Through { prefix: w(&[1]), index: 0 });
    }

    #[test]
    fn surjection_round_trip() {
        let word = w(&[3, 0]);
        let theta = word.to_surjection(2);
        assert_eq!(theta, vec![0, 0, 1, 2, 2]);
        assert_eq!(DegeneracyWord::from_surjection(&theta), word);
    }

    #[test]
    fn fits_checks_top_index() {
        assert!(w(&[0]).fits(0));
        assert!(!w(&[1]).fits(0));
        assert!(w(&[1, 0]).fits(0));
    }
}
