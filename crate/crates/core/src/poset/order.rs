use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{invalid, Result};

/// A finite partial order; elements are indices `0..len` with unique labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `leq[a][b]` iff `a ≤ b`.
    leq: Vec<Vec<bool>>,
    index: HashMap<String, usize>,
}

impl FinitePoset {
    /// Builds a poset from a relation that must already be reflexive, antisymmetric and
    /// transitive.
    pub fn new(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let p = Self::raw(labels, relation)?;
        p.check_axioms()?;
        Ok(p)
    }

    /// The partial order generated by `relation` (reflexive-transitive closure); fails when the
    /// closure is not antisymmetric.
    pub fn generated(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let mut p = Self::raw(labels, relation)?;
        let n = p.len();
        for a in 0..n {
            p.leq[a][a] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if p.leq[a][k] {
                    for b in 0..n {
                        if p.leq[k][b] {
                            p.leq[a][b] = true;
                        }
                    }
                }
            }
        }
        p.check_axioms()?;
        Ok(p)
    }

    fn raw(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(invalid(format!("duplicate poset element `{l}`")));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(invalid(format!("relation pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        Ok(FinitePoset { labels, leq, index })
    }

    /// Checks the three axioms by enumeration.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.leq[a][a] {
                return Err(invalid(format!("not reflexive at `{}`", self.labels[a])));
            }
            for b in 0..n {
                if a != b && self.leq[a][b] && self.leq[b][a] {
                    return Err(invalid(format!(
                        "not antisymmetric: `{}` and `{}`",
                        self.labels[a], self.labels[b]
                    )));
                }
                for c in 0..n {
                    if self.leq[a][b] && self.leq[b][c] && !self.leq[a][c] {
                        return Err(invalid(format!(
                            "not transitive: `{}` ≤ `{}` ≤ `{}`",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The total order `{0 < 1 < ⋯ < n}`.
    pub fn ordinal(n: usize) -> Self {
        let labels = (0..=n).map(|i| i.to_string()).collect();
        let rel: Vec<_> = (0..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect();
        Self::new(labels, &rel).expect("total order")
    }

    /// The discrete poset on the given labels.
    pub fn discrete(labels: Vec<String>) -> Result<Self> {
        let rel: Vec<_> = (0..labels.len()).map(|a| (a, a)).collect();
        Self::new(labels, &rel)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// All pairs `a ≤ b`, including the reflexive ones.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| (0..self.len()).map(move |b| (a, b))).filter(|&(a, b)| self.leq[a][b]).collect()
    }

    /// Strict pairs `a < b`.
    pub fn strict_relation(&self) -> Vec<(usize, usize)> {
        self.relation().into_iter().filter(|(a, b)| a != b).collect()
    }

    /// Covering pairs `a ⋖ b`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_relation()
            .into_iter()
            .filter(|&(a, b)| !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    /// The opposite order, same labels.
    pub fn opposite(&self) -> Self {
        let rel: Vec<_> = self.relation().into_iter().map(|(a, b)| (b, a)).collect();
        Self::new(self.labels.clone(), &rel).expect("opposite of a poset")
    }

    /// Whether the elements (any order) are pairwise comparable.
    pub fn is_chain(&self, elems: &[usize]) -> bool {
        elems.iter().tuple_combinations().all(|(&a, &b)| self.leq[a][b] || self.leq[b][a])
    }

    /// Sorts a chain increasingly.
    pub fn sort_chain(&self, chain: &mut [usize]) {
        chain.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.leq[a][b] {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
    }

    /// Length of the longest strict chain, minus one (`None` for the empty poset).
    pub fn height(&self) -> Option<usize> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let order = self.linear_extension();
        let mut best = vec![0usize; n];
        for (pos, &b) in order.iter().enumerate() {
            for &a in &order[..pos] {
                if self.lt(a, b) {
                    best[b] = best[b].max(best[a] + 1);
                }
            }
        }
        best.into_iter().max()
    }

    /// Elements sorted so that `a < b` implies `a` comes first (stable on indices).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&b| (0..self.len()).filter(|&a| self.lt(a, b)).count());
        order
    }
}

/// An order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    assignment: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Arc<FinitePoset>, target: Arc<FinitePoset>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(invalid("assignment must cover every source element"));
        }
        if let Some(&t) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(invalid(format!("assignment value {t} out of range")));
        }
        for (a, b) in source.relation() {
            if !target.leq(assignment[a], assignment[b]) {
                return Err(invalid(format!(
                    "not monotone: `{}` ≤ `{}` but their images are not ordered",
                    source.label(a),
                    source.label(b)
                )));
            }
        }
        Ok(MonotoneMap { source, target, assignment })
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, a: usize) -> usize {
        self.assignment[a]
    }

    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap> {
        if first.target != self.source {
            return Err(invalid("composite of non-composable monotone maps"));
        }
        let assignment = first.assignment.iter().map(|&a| self.assignment[a]).collect();
        MonotoneMap::new(first.source.clone(), self.target.clone(), assignment)
    }
}

/// Every monotone map `P → Q`, lexicographic in the images of `P`'s elements in index order.
pub fn monotone_maps(p: &Arc<FinitePoset>, q: &Arc<FinitePoset>) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p.len());
    fn go(p: &FinitePoset, q: &FinitePoset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let a = cur.len();
        if a == p.len() {
            out.push(cur.clone());
            return;
        }
        for t in 0..q.len() {
            let ok = (0..a).all(|b| {
                (!p.leq(b, a) || q.leq(cur[b], t)) && (!p.leq(a, b) || q.leq(t, cur[b]))
            });
            if ok {
                cur.push(t);
                go(p, q, cur, out);
                cur.pop();
            }
        }
    }
    let mut raw = Vec::new();
    go(p, q, &mut cur, &mut raw);
    for assignment in raw {
        out.push(MonotoneMap { source: p.clone(), target: q.clone(), assignment });
    }
    out
}

/// Label of a finite set of labels, e.g. `{a,b}`.
pub fn set_label<S: AsRef<str>>(items: &[S]) -> String {
    format!("{{{}}}", items.iter().map(AsRef::as_ref).join(","))
}

/// Nonempty subsets of `{0,…,n-1}` ordered by size, then lexicographically.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|k| (0..n).combinations(k)).collect()
}

/// `sA`: nonempty subsets of `A` under inclusion, ordered by size and then lexicographically in
/// the order of `A`. Also returns the subsets as index lists into `A`.
pub fn subset_poset_with_sets<S: AsRef<str>>(a: &[S]) -> Result<(FinitePoset, Vec<Vec<usize>>)> {
    if a.is_empty() {
        return Err(invalid("subset poset of the empty set"));
    }
    let sets = nonempty_subsets(a.len());
    let labels = sets.iter().map(|s| set_label(&s.iter().map(|&i| a[i].as_ref()).collect::<Vec<_>>())).collect();
    let rel: Vec<_> = (0..sets.len())
        .flat_map(|x| (0..sets.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| sets[x].iter().all(|e| sets[y].contains(e)))
        .collect();
    Ok((FinitePoset::new(labels, &rel)?, sets))
}

pub fn subset_poset<S: AsRef<str>>(a: &[S]) -> Result<FinitePoset> {
    Ok(subset_poset_with_sets(a)?.0)
}

/// `s_<P`: nonempty chains of `P` under inclusion, ordered by size and then lexicographically
/// in element indices. Each chain is returned sorted increasingly.
pub fn chain_poset_with_chains(p: &FinitePoset) -> (FinitePoset, Vec<Vec<usize>>) {
    let mut chains: Vec<Vec<usize>> =
        (1..=p.len()).flat_map(|k| (0..p.len()).combinations(k)).filter(|c| p.is_chain(c)).collect();
    let labels = chains
        .iter()
        .map(|c| {
            let mut sorted = c.clone();
            p.sort_chain(&mut sorted);
            set_label(&sorted.iter().map(|&i| p.label(i)).collect::<Vec<_>>())
        })
        .collect();
    let rel: Vec<_> = (0..chains.len())
        .flat_map(|x| (0..chains.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| chains[x].iter().all(|e| chains[y].contains(e)))
        .collect();
    for c in &mut chains {
        p.sort_chain(c);
    }
    (FinitePoset::new(labels, &rel).expect("inclusion of chains"), chains)
}

pub fn chain_poset(p: &FinitePoset) -> FinitePoset {
    chain_poset_with_chains(p).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_posets() {
        assert_eq!(subset_poset(&["a"]).unwrap().len(), 1);
        let ab = subset_poset(&["a", "b"]).unwrap();
        assert_eq!(ab.len(), 3);
        assert_eq!(ab.covers().len(), 2);
        assert_eq!(ab.labels(), &["{a}", "{b}", "{a,b}"]);
        assert_eq!(subset_poset(&["a", "b", "c"]).unwrap().len(), 7);
        assert!(subset_poset::<&str>(&[]).is_err());
    }

    #[test]
    fn chain_posets() {
        let c = chain_poset(&FinitePoset::ordinal(1));
        assert_eq!(c.labels(), &["{0}", "{1}", "{0,1}"]);
        let disc = FinitePoset::discrete(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(chain_poset(&disc).len(), 2);
        assert_eq!(chain_poset(&FinitePoset::ordinal(2)).len(), 7);
    }

    #[test]
    fn axioms_are_enforced() {
        let l = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(FinitePoset::new(l(&["a", "b"]), &[(0, 1)]).is_err());
        assert!(FinitePoset::generated(l(&["a", "b"]), &[(0, 1), (1, 0)]).is_err());
        let p = FinitePoset::generated(l(&["a", "b", "c"]), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.height(), Some(2));
    }

    #[test]
    fn monotone_maps_of_small_posets() {
        let sd1 = Arc::new(chain_poset(&FinitePoset::ordinal(1)));
        let i = Arc::new(FinitePoset::ordinal(1));
        // {0},{1} ≤ {0,1}: top 1 leaves 4 choices below, top 0 forces both to 0
        assert_eq!(monotone_maps(&sd1, &i).len(), 5);
    }
}
