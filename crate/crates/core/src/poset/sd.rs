//! Combinatorics of `s_<[n]`, the poset of nonempty subsets of `[n]`, and of the maps
//! `Sd(δ^i)`, `Sd(σ^i)` between them.

use std::collections::HashMap;

use crate::poset::order::nonempty_subsets;

/// `[n-1] → [n]` skipping `i`, on bitmasks.
pub(crate) fn coface_mask(mask: u32, i: usize) -> u32 {
    let low = mask & ((1 << i) - 1);
    let high = mask >> i;
    low | (high << (i + 1))
}

/// `[n+1] → [n]` hitting `i` twice, on bitmasks.
pub(crate) fn codegeneracy_mask(mask: u32, i: usize) -> u32 {
    let low = mask & ((1 << (i + 1)) - 1);
    let high = mask >> (i + 1);
    low | (high << i)
}

pub(crate) fn max_vertex(mask: u32) -> usize {
    31 - mask.leading_zeros() as usize
}

/// `s_<[n]` with its Hasse diagram and strict chains.
#[derive(Clone, Debug)]
pub(crate) struct SdLevel {
    /// Elements as bitmasks, by size and then lexicographically.
    pub masks: Vec<u32>,
    pub pos: HashMap<u32, u16>,
    /// Covering pairs `(lower, upper)`, grouped by `upper` in element order.
    pub hasse: Vec<(u16, u16)>,
    pub hasse_pos: HashMap<(u16, u16), u16>,
    /// Per element: incoming Hasse edges as `(edge, lower)`.
    pub preds: Vec<Vec<(u16, u16)>>,
    /// `chains[k]`: strict chains with `k + 1` elements, increasing, lexicographic.
    pub chains: Vec<Vec<Vec<u16>>>,
    pub chain_pos: Vec<HashMap<Vec<u16>, u32>>,
}

impl SdLevel {
    pub fn new(n: usize) -> Self {
        assert!(n < 30, "s_<[n] needs n < 30");
        let masks: Vec<u32> = nonempty_subsets(n + 1)
            .into_iter()
            .map(|s| s.into_iter().fold(0u32, |m, v| m | (1 << v)))
            .collect();
        let pos: HashMap<u32, u16> = masks.iter().enumerate().map(|(i, &m)| (m, i as u16)).collect();
        let mut hasse = Vec::new();
        let mut preds = vec![Vec::new(); masks.len()];
        for (u, &m) in masks.iter().enumerate() {
            if m.count_ones() < 2 {
                continue;
            }
            for v in 0..=n {
                if m & (1 << v) != 0 {
                    let lower = pos[&(m & !(1 << v))];
                    preds[u].push((hasse.len() as u16, lower));
                    hasse.push((lower, u as u16));
                }
            }
        }
        let hasse_pos = hasse.iter().enumerate().map(|(e, &p)| (p, e as u16)).collect();
        let mut chains: Vec<Vec<Vec<u16>>> = vec![(0..masks.len() as u16).map(|a| vec![a]).collect()];
        for _ in 0..n {
            let mut next = Vec::new();
            for c in chains.last().expect("nonempty") {
                let top = masks[*c.last().expect("nonempty") as usize];
                for (b, &mb) in masks.iter().enumerate() {
                    if mb != top && mb & top == top {
                        let mut d = c.clone();
                        d.push(b as u16);
                        next.push(d);
                    }
                }
            }
            next.sort();
            chains.push(next);
        }
        let chain_pos = chains
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect())
            .collect();
        SdLevel { masks, pos, hasse, hasse_pos, preds, chains, chain_pos }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn elem(&self, mask: u32) -> u16 {
        self.pos[&mask]
    }

}

/// How `Sd(σ^i)` acts on a strict chain: the image chain `(k', index)` and the surjection
/// `[k] → [k']` collapsing repeated elements.
#[derive(Clone, Debug)]
pub(crate) struct ChainImage {
    pub dim: usize,
    pub index: u32,
    pub theta: Vec<usize>,
}

/// `s_<[0..=top]` with the structure maps between consecutive levels.
#[derive(Clone, Debug)]
pub(crate) struct SdTower {
    pub levels: Vec<SdLevel>,
    /// `face_elem[n][i][e]`: `Sd(δ^i)` from level `n - 1` to level `n` (empty for `n = 0`).
    pub face_elem: Vec<Vec<Vec<u16>>>,
    /// `degen_elem[n][i][e]`: `Sd(σ^i)` from level `n + 1` to level `n` (`n < top`).
    pub degen_elem: Vec<Vec<Vec<u16>>>,
    pub face_edge: Vec<Vec<Vec<u16>>>,
    /// `None` when both endpoints collapse to one element.
    pub degen_edge: Vec<Vec<Vec<Option<u16>>>>,
}

impl SdTower {
    pub fn new(top: usize) -> Self {
        let levels: Vec<SdLevel> = (0..=top).map(SdLevel::new).collect();
        let mut face_elem = vec![Vec::new()];
        let mut face_edge = vec![Vec::new()];
        for n in 1..=top {
            let (lo, hi) = (&levels[n - 1], &levels[n]);
            let elems: Vec<Vec<u16>> =
                (0..=n).map(|i| lo.masks.iter().map(|&m| hi.elem(coface_mask(m, i))).collect()).collect();
            let edges = (0..=n)
                .map(|i| lo.hasse.iter().map(|&(a, b)| hi.hasse_pos[&(elems[i][a as usize], elems[i][b as usize])]).collect())
                .collect();
            face_elem.push(elems);
            face_edge.push(edges);
        }
        let mut degen_elem = Vec::new();
        let mut degen_edge = Vec::new();
        for n in 0..top {
            let (lo, hi) = (&levels[n], &levels[n + 1]);
            let elems: Vec<Vec<u16>> =
                (0..=n).map(|i| hi.masks.iter().map(|&m| lo.elem(codegeneracy_mask(m, i))).collect()).collect();
            let edges = (0..=n)
                .map(|i| {
                    hi.hasse
                        .iter()
                        .map(|&(a, b)| {
                            let (x, y) = (elems[i][a as usize], elems[i][b as usize]);
                            (x != y).then(|| lo.hasse_pos[&(x, y)])
                        })
                        .collect()
                })
                .collect();
            degen_elem.push(elems);
            degen_edge.push(edges);
        }
        SdTower { levels, face_elem, degen_elem, face_edge, degen_edge }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// `Sd(δ^i)` on the chain `(k, c)` of level `n - 1`: a chain of level `n` of the same length.
    pub fn face_chain(&self, n: usize, i: usize, k: usize, c: usize) -> u32 {
        let chain = &self.levels[n - 1].chains[k][c];
        let image: Vec<u16> = chain.iter().map(|&e| self.face_elem[n][i][e as usize]).collect();
        self.levels[n].chain_pos[k][&image]
    }

    /// `Sd(σ^i)` on the chain `(k, c)` of level `n + 1`.
    pub fn degen_chain(&self, n: usize, i: usize, k: usize, c: usize) -> ChainImage {
        let chain = &self.levels[n + 1].chains[k][c];
        let mut image: Vec<u16> = Vec::with_capacity(chain.len());
        let mut theta = Vec::with_capacity(chain.len());
        for &e in chain {
            let t = self.degen_elem[n][i][e as usize];
            if image.last() != Some(&t) {
                image.push(t);
            }
            theta.push(image.len() - 1);
        }
        let dim = image.len() - 1;
        ChainImage { dim, index: self.levels[n].chain_pos[dim][&image], theta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_maps() {
        // δ^1: {0,1} ↦ {0,2}
        assert_eq!(coface_mask(0b11, 1), 0b101);
        assert_eq!(coface_mask(0b11, 0), 0b110);
        // σ^0 on [2] → [1]: {1,2} ↦ {0,1}, {0,1} ↦ {0}
        assert_eq!(codegeneracy_mask(0b110, 0), 0b11);
        assert_eq!(codegeneracy_mask(0b011, 0), 0b1);
    }

    #[test]
    fn chain_counts_match_subdivided_simplices() {
        let counts: Vec<Vec<usize>> = (0..=3).map(|n| SdLevel::new(n).chains.iter().map(Vec::len).collect()).collect();
        assert_eq!(counts[1], vec![3, 2]);
        assert_eq!(counts[2], vec![7, 12, 6]);
        assert_eq!(counts[3], vec![15, 50, 60, 24]);
    }

    #[test]
    fn tower_maps_are_well_defined() {
        let t = SdTower::new(3);
        assert_eq!(t.top(), 3);
        assert_eq!(t.levels[2].hasse.len(), 9);
        let img = t.degen_chain(1, 0, 1, 0);
        assert!(img.dim <= 1);
    }
}
