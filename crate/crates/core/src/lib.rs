//! Finite simplicial homotopy at desk scale.
//!
//! The crate builds finitely generated, dimension-truncated simplicial sets and the
//! combinatorial constructions that act on them: nerves of finite categories and posets,
//! barycentric subdivision and `Ex`, two-sided bar constructions (plain and `Ex`-modified),
//! Čech nerves of combinatorial good covers, Segal and completeness checks, and exact affine
//! models of extended simplices. Integer homology via Smith normal form is the common
//! verification backend: every "weak equivalence" produced here is certified by a
//! π0-bijection plus homology-isomorphism check below the truncation level.

pub mod affine;
pub mod bar;
pub mod cover;
pub mod error;
pub mod homology;
pub mod json;
pub mod poset;
pub mod segal;
pub mod simplicial;

pub use error::{Error, Result};

/// Default cap on the number of enumerated candidates (maps, squares, cells) per level.
pub const DEFAULT_CAP: usize = 1_000_000;
