//! Finite multiset topology.
//!
//! Exact M-set algebra ([`mset`]), M-topologies with interior, closure,
//! subspaces and bases ([`topology`]), semi-open and semi-closed M-sets
//! ([`semi`]), covers and the semi-compactness deciders ([`cover`]), and a
//! harness that checks the theory's claims over generated and exhaustively
//! enumerated spaces ([`harness`]).
//!
//! With the default `parallel` feature, corpus sweeps run on rayon; without
//! it every [`Exec`] strategy runs sequentially.

mod combinatorics;
pub mod cover;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod harness;
pub mod io;
pub mod mset;
pub mod semi;
pub mod topology;

pub use cover::{
    check_fip_scl, check_fip_scm, decide_compactness, find_subcover, has_fip, is_semi_open_cover,
    subspace_compact_equiv, CompactnessVerdict, Cover, SubcoverFilter, Variant,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use mset::{classify_sub, combine, complement_in, enumerate_power, CombineOp, MSet, MSpace, PowerKind, SubRelation};
pub use semi::{condition_checklist, enumerate_semi, is_semi_closed, is_semi_open, SemiAlgorithm, SemiFamily};
pub use topology::{topology_from_basis, validate_basis, validate_topology, MTopology, ValidationReport};
