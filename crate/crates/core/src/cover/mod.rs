//! Combinatorial good covers: Čech nerves, closure under intersections, the comparison maps
//! `ψ`, `φ` through the `Ex`-bar construction, lifting checks and the nerve-theorem pipeline.

pub mod cech;
pub mod complex;
pub mod maps;
pub mod pipeline;
pub mod rlp;

pub use cech::{cech_closure_tabulated, cech_nerve, cech_tabulated, sample_points, SamplePoint, Sections};
pub use complex::{builtin_cover, closure, reference_spaces, CoverComplex, ReferenceGroup};
pub use maps::{phi_map, psi_map, rho_a, sigma_a, CoverMaps};
pub use rlp::{check_rlp, check_rlp_tables, LiftFn, RlpFailure, RlpLevel, RlpReport};
pub use pipeline::{whitehead_pipeline, whitehead_report, PipelineMismatch, PipelineReport, PipelineStage, WhiteheadReport};
