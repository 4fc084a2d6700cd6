use serde::{Deserialize, Serialize};

use crate::harness::corpus::CorpusInfo;
use crate::io::TopologyFile;
use crate::topology::MTopology;

/// A concrete violating (or remarkable) configuration, replayable from its
/// serialized fixture alone via [`crate::harness::recheck`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub claim: String,
    pub fixture: TopologyFile,
    /// Groups of canonical M-set text forms; the meaning of each group is
    /// fixed by `recheck`.
    pub offending: Vec<Vec<String>>,
    pub recheck: String,
    pub detail: String,
}

impl Counterexample {
    pub(crate) fn new(
        claim: &str,
        t: &MTopology,
        offending: Vec<Vec<String>>,
        recheck: &str,
        detail: impl Into<String>,
    ) -> Self {
        Counterexample {
            claim: claim.into(),
            fixture: TopologyFile::from_topology(t),
            offending,
            recheck: recheck.into(),
            detail: detail.into(),
        }
    }
}

/// Counts of `(left, right)` outcomes of a biconditional.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AgreementTable {
    pub both_true: usize,
    pub left_only: usize,
    pub right_only: usize,
    pub both_false: usize,
}

impl AgreementTable {
    pub fn record(&mut self, left: bool, right: bool) {
        match (left, right) {
            (true, true) => self.both_true += 1,
            (true, false) => self.left_only += 1,
            (false, true) => self.right_only += 1,
            (false, false) => self.both_false += 1,
        }
    }

    pub fn disagreements(&self) -> usize {
        self.left_only + self.right_only
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub claim: String,
    pub corpus: CorpusInfo,
    /// Corpus members on which the claim was evaluated.
    pub trials: usize,
    /// Members skipped because an enumeration exceeded its budget.
    pub skipped: usize,
    /// Individual assertions evaluated across all trials.
    pub checks: u64,
    pub violations: Vec<Counterexample>,
    pub findings: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<AgreementTable>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with wall-clock timing removed; everything else is a pure
    /// function of the claim and corpus.
    pub fn without_timing(&self) -> Self {
        TheoremReport {
            elapsed_ms: None,
            ..self.clone()
        }
    }
}
