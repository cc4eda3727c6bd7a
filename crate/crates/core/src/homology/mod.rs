//! Integer homology of truncated simplicial sets and the weak-equivalence certificate.

pub mod certificate;
pub mod chains;
pub mod matrix;
pub mod sparse;

pub use certificate::{
    chain_map, induced_map, pi0, pi0_bijection, weq_certificate, InducedMap, WeqCertificate, PROXY_DISCLAIMER,
};
pub use chains::{homology, homology_of, normalized_chains, ChainComplex, DegreeHomology, HomologyResult};
pub use matrix::{invariant_factors, smith_normal_form, IntMatrix, SmithForm};
pub use sparse::{SmithSummary, SparseMatrix};
