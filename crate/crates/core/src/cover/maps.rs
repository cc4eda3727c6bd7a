use std::sync::Arc;

use crate::bar::{BarEx, Diagram, SetFunctor, Variance, Weight};
use crate::cover::cech::{cech_closure_tabulated, cech_tabulated, sample_points, SamplePoint, Sections};
use crate::cover::complex::{mask_elements, CoverComplex};
use crate::error::{invalid, Error, Result};
use crate::poset::order::{nonempty_subsets, subset_poset};
use crate::poset::MonotoneMap;
use crate::simplicial::{SimplicialMap, TabularMap, Tabulated};

fn ordinal_subsets(n: usize) -> Result<FinitePosetArc> {
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    Ok(Arc::new(subset_poset(&labels)?))
}

type FinitePosetArc = Arc<crate::poset::FinitePoset>;

/// `σ_A(a_0, …, a_n): s_<[n] → sA`, `S ↦ {a_i : i ∈ S}`, for patches `0..patch_count`.
pub fn sigma_a(patch_count: usize, tuple: &[usize]) -> Result<MonotoneMap> {
    if tuple.is_empty() {
        return Err(invalid("σ_A needs a nonempty tuple"));
    }
    if patch_count == 0 || patch_count > 16 {
        return Err(invalid("σ_A targets sA with 1 to 16 patches"));
    }
    if let Some(a) = tuple.iter().find(|&&a| a >= patch_count) {
        return Err(invalid(format!("patch index {a} out of range")));
    }
    let n = tuple.len() - 1;
    let source = ordinal_subsets(n)?;
    let target = ordinal_subsets(patch_count - 1)?;
    let position: std::collections::HashMap<Vec<usize>, usize> =
        nonempty_subsets(patch_count).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    let assignment = nonempty_subsets(n + 1)
        .into_iter()
        .map(|s| {
            let mut image: Vec<usize> = s.iter().map(|&i| tuple[i]).collect();
            image.sort_unstable();
            image.dedup();
            position[&image]
        })
        .collect();
    MonotoneMap::new(source, target, assignment)
}

fn subset_exponent(len: usize) -> Option<usize> {
    let k = (len + 1).trailing_zeros() as usize;
    (len + 1 == 1 << k && k > 0).then_some(k)
}

/// `ρ_A(α) = (α({0}), …, α({n}))` for `α: s_<[n] → sA`, as sorted patch index lists.
pub fn rho_a(alpha: &MonotoneMap) -> Result<Vec<Vec<usize>>> {
    let n = subset_exponent(alpha.source().len()).ok_or_else(|| invalid("source is not some s_<[n]"))? - 1;
    let patches = subset_exponent(alpha.target().len()).ok_or_else(|| invalid("target is not some sA"))?;
    let sets = nonempty_subsets(patches);
    // singletons come first in the size-then-lex order
    Ok((0..=n).map(|i| sets[alpha.apply(i)].clone()).collect())
}

/// `ČU`, `ČU^cl` and `B_Ex(*, Σ^op, U)` under one sampling, with the maps
/// `ψ: ČU → B_Ex` (induced by `σ_A`) and `φ: B_Ex → ČU^cl` (induced by `ρ_A`).
///
/// The bar side is built with `U` as a weight on `Σ` ordered by inclusion, so its cells are
/// functors `s_<[n] → Σ_{*⫽U}`: monotone maps into `Σ` with a point of `U` over the top.
pub struct CoverMaps {
    pub sections: Sections,
    pub points: Vec<SamplePoint>,
    pub cech: Tabulated<Box<[u32]>>,
    pub closure: Tabulated<Box<[u32]>>,
    pub bar_ex: BarEx,
    masks: Vec<u64>,
    /// `members[α]`: points lying in `U_α`, increasing.
    members: Vec<Vec<u32>>,
    /// `local[α][p]`: position of `p` in `members[α]`.
    local: Vec<Vec<Option<u32>>>,
    singleton: Vec<u32>,
    pos: rustc_hash::FxHashMap<u64, u32>,
}

impl CoverMaps {
    pub fn new(cov: &CoverComplex, sections: Sections, trunc: usize, cap: usize) -> Result<Self> {
        let points = sample_points(cov, sections);
        let masks = cov.masks().to_vec();
        let members: Vec<Vec<u32>> = masks
            .iter()
            .map(|&m| (0..points.len() as u32).filter(|&p| points[p as usize].lies_in(m)).collect())
            .collect();
        let local = members
            .iter()
            .map(|ms| {
                let mut l = vec![None; points.len()];
                for (q, &p) in ms.iter().enumerate() {
                    l[p as usize] = Some(q as u32);
                }
                l
            })
            .collect::<Vec<_>>();
        let shape = Arc::new(cov.category());
        let weight = match sections {
            Sections::Collapsed => Weight::point(shape.clone()),
            Sections::Witnessed => {
                let sizes = members.iter().map(Vec::len).collect();
                // α ⊆ β restricts U_β → U_α
                let maps = shape
                    .morphisms()
                    .iter()
                    .map(|u| {
                        members[u.target]
                            .iter()
                            .map(|&p| local[u.source][p as usize].expect("U_β ⊆ U_α"))
                            .collect()
                    })
                    .collect();
                let f = SetFunctor::new(&shape, Variance::Contravariant, sizes, maps)?;
                Weight::discrete(shape.clone(), &f, |a, q| points[members[a][q] as usize].label.clone())?
            }
        };
        let bar_ex = BarEx::new(&weight, &Diagram::point(shape), trunc, cap)?;
        let singleton = (0..cov.patch_count()).map(|a| cov.position(1 << a).expect("singletons") as u32).collect();
        let pos = masks.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        Ok(CoverMaps {
            sections,
            cech: cech_tabulated(cov, sections, trunc)?,
            closure: cech_closure_tabulated(cov, sections, trunc)?,
            points,
            bar_ex,
            masks,
            members,
            local,
            singleton,
            pos,
        })
    }

    /// The bar cell with `Σ`-element `alphas[e]` on element `e` of `s_<[n]` and section `p`;
    /// `None` when some `α` misses `p`.
    pub fn encode(&self, n: usize, alphas: &[usize], p: usize) -> Option<Box<[u32]>> {
        let model = &self.bar_ex.model;
        alphas
            .iter()
            .map(|&a| {
                let q = self.local[a][p]? as usize;
                model.vertex_object(n, a, 0, q).map(|o| o as u32)
            })
            .collect()
    }

    /// Inverse of [`Self::encode`]: `Σ`-elements per element of `s_<[n]`, and the section over the
    /// top element.
    pub fn decode(&self, n: usize, cell: &[u32]) -> (Vec<usize>, usize) {
        let model = &self.bar_ex.model;
        let count = model.tower().levels[n].len();
        let alphas: Vec<usize> = cell[..count].iter().map(|&o| model.object_vertices(n, o as usize).0).collect();
        let (a, _, q) = model.object_vertices(n, cell[count - 1] as usize);
        (alphas, self.members[a][q] as usize)
    }

    fn mask_position(&self, mask: u64) -> Option<usize> {
        self.pos.get(&mask).map(|&i| i as usize)
    }

    /// `ψ` on cells: `(a_0, …, a_n)` at `p` goes to `σ_A(a_0, …, a_n)` with section `p`.
    pub fn psi_cell(&self, n: usize, cell: &[u32]) -> Option<Box<[u32]>> {
        let p = cell[0] as usize;
        let alphas = self.bar_ex.model.tower().levels[n]
            .masks
            .iter()
            .map(|&s| {
                let union = mask_elements(s as u64).into_iter().fold(0u64, |u, i| u | 1 << cell[i + 1]);
                self.mask_position(union)
            })
            .collect::<Option<Vec<_>>>()?;
        self.encode(n, &alphas, p)
    }

    /// `φ` on cells: `α` with section `p` goes to `ρ_A(α)` at `p`.
    pub fn phi_cell(&self, n: usize, cell: &[u32]) -> Box<[u32]> {
        let (alphas, p) = self.decode(n, cell);
        std::iter::once(p as u32).chain(alphas[..=n].iter().map(|&a| a as u32)).collect()
    }

    /// `ČU ↪ ČU^cl`, `(a_0, …, a_n) ↦ ({a_0}, …, {a_n})`.
    pub fn inclusion_cell(&self, cell: &[u32]) -> Box<[u32]> {
        std::iter::once(cell[0]).chain(cell[1..].iter().map(|&a| self.singleton[a as usize])).collect()
    }

    pub fn psi(&self) -> Result<SimplicialMap> {
        let missing = std::cell::Cell::new(false);
        let map = self.cech.map_to(&self.bar_ex.tab, |n, c| {
            self.psi_cell(n, c).unwrap_or_else(|| {
                missing.set(true);
                Box::new([])
            })
        });
        if missing.get() {
            return Err(Error::Invariant("σ_A left Σ or the section".into()));
        }
        map
    }

    pub fn phi(&self) -> Result<SimplicialMap> {
        self.bar_ex.tab.map_to(&self.closure, |n, c| self.phi_cell(n, c))
    }

    pub fn inclusion(&self) -> Result<SimplicialMap> {
        self.cech.map_to(&self.closure, |_, c| self.inclusion_cell(c))
    }

    /// `φ` between the tabulations, every simplex included.
    pub fn phi_table(&self) -> Result<TabularMap> {
        let table = self.bar_ex.tab.table();
        let images = (0..=table.d_max())
            .map(|n| {
                self.bar_ex.tab.assembled.cells(n)
                    .iter()
                    .map(|c| {
                        self.closure
                            .assembled
                            .id(n, &self.phi_cell(n, c))
                            .map(|y| y as u32)
                            .ok_or_else(|| Error::Invariant(format!("φ leaves ČU^cl in dimension {n}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TabularMap { images })
    }

    /// The explicit lift for `φ` against `∂Δ^n → Δ^n`: given the boundary `x_0, …, x_n`
    /// (ids in `B_Ex` at level `n - 1`) over the simplex `v` of `ČU^cl`, the cell `β̂` that agrees
    /// with `x_j` on subsets missing `j` and sends `[n]` to `∪_j x_j([n] ∖ j)`, with the section of
    /// `v`. `None` if that union is not in `Σ` or misses the section.
    pub fn constructive_lift(&self, n: usize, boundary: &[u32], v: u32) -> Option<u32> {
        let p = self.closure.assembled.cell(n, v as usize)[0] as usize;
        let tower = self.bar_ex.model.tower();
        let faces: Vec<Vec<usize>> = boundary
            .iter()
            .map(|&x| self.decode(n - 1, self.bar_ex.tab.assembled.cell(n - 1, x as usize)).0)
            .collect();
        let lower = &tower.levels[n - 1];
        let full = (1u32 << (n + 1)) - 1;
        let alphas = tower.levels[n]
            .masks
            .iter()
            .map(|&s| {
                if s == full {
                    let top = lower.len() - 1;
                    let union = faces.iter().fold(0u64, |u, f| u | self.masks[f[top]]);
                    self.mask_position(union)
                } else {
                    let j = (!s).trailing_zeros() as usize;
                    // S as a subset of [n] ∖ j, renumbered
                    let low = s & ((1 << j) - 1);
                    let shrunk = low | ((s >> (j + 1)) << j);
                    Some(faces[j][lower.elem(shrunk) as usize])
                }
            })
            .collect::<Option<Vec<_>>>()?;
        let cell = self.encode(n, &alphas, p)?;
        self.bar_ex.tab.assembled.id(n, &cell).map(|x| x as u32)
    }
}

/// `ψ: ČU → B_Ex(*, Σ^op, U)` in the collapsed model.
pub fn psi_map(cov: &CoverComplex, trunc: usize, cap: usize) -> Result<SimplicialMap> {
    CoverMaps::new(cov, Sections::Collapsed, trunc, cap)?.psi()
}

/// `φ: B_Ex(*, Σ^op, U) → ČU^cl` in the collapsed model.
pub fn phi_map(cov: &CoverComplex, trunc: usize, cap: usize) -> Result<SimplicialMap> {
    CoverMaps::new(cov, Sections::Collapsed, trunc, cap)?.phi()
}
