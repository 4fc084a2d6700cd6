//! Corpus generation, the theorem catalogue and counterexample mining.

pub mod claims;
pub mod corpus;
pub mod gen;
pub mod mine;
pub mod report;

pub use claims::{verify_property, Claim};
pub use corpus::{Corpus, CorpusInfo, CorpusSpec};
pub use gen::{enumerate_topologies, generate_topology, generate_trial, GenConfig};
pub use mine::{mine, recheck, MineReport, Remark, TopologyCell};
pub use report::{AgreementTable, Counterexample, TheoremReport};
