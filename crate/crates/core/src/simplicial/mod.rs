//! Finitely generated simplicial and bisimplicial sets.

pub mod bisimplicial;
pub mod map;
pub mod ops;
pub mod sset;
pub mod standard;
pub mod tabular;
pub mod word;

pub use bisimplicial::{diagonal, external_product, BiGenId, BiRef, BisimplicialModel, BisimplicialSet};
pub use map::{is_simplicial_map, MapReport, MapViolation, SimplicialMap, TabularMap};
pub use ops::{are_isomorphic, find_isomorphism, is_isomorphism, product};
pub use sset::{GenId, SimplexRef, SimplicialSet};
pub use standard::{boundary_simplex, horn, minimal_torus, standard_simplex};
pub use tabular::{Assembled, OperatorSteps, SimplicialModel, Tabulated, TabularSimplicialSet};
pub use word::DegeneracyWord;
