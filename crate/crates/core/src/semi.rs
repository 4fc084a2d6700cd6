//! Semi-open and semi-closed M-sets.
//!
//! Two independent deciders exist for each predicate: a witness search over
//! the open (closed) family, and the `cl ∘ int` (`int ∘ cl`) criterion. The
//! criterion is the default; the witness search backs explanations and the
//! `Both` cross-check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::topology_to_json_string;
use crate::mset::{enumerate_power, MSet, PowerKind, DEFAULT_ENUMERATION_BUDGET};
use crate::topology::MTopology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SemiAlgorithm {
    Witness,
    #[default]
    Criterion,
    Both,
}

/// Outcome of a semi-open or semi-closed membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiVerdict {
    pub holds: bool,
    /// The open (closed) set that sandwiches the candidate, when one exists.
    pub witness: Option<MSet>,
}

pub(crate) fn witness_open(t: &MTopology, s: &MSet) -> Option<MSet> {
    t.open_sets()
        .iter()
        .find(|o| o.is_sub(s) && s.is_sub(&t.cl(o)))
        .cloned()
}

pub(crate) fn witness_closed(t: &MTopology, s: &MSet) -> Option<MSet> {
    t.closed_sets()
        .iter()
        .find(|p| t.int(p).is_sub(s) && s.is_sub(p))
        .cloned()
}

pub(crate) fn som_criterion(t: &MTopology, s: &MSet) -> bool {
    s.is_sub(&t.cl(&t.int(s)))
}

pub(crate) fn scm_criterion(t: &MTopology, s: &MSet) -> bool {
    t.int(&t.cl(s)).is_sub(s)
}

fn divergence(t: &MTopology, s: &MSet, detail: &str) -> Error {
    Error::EquivalenceViolation {
        topology: topology_to_json_string(t),
        set: s.to_text(),
        detail: detail.into(),
    }
}

/// Is `s` semi-open: some open `O` with `O ≤ s ≤ cl(O)`.
pub fn is_semi_open(t: &MTopology, s: &MSet, algorithm: SemiAlgorithm) -> Result<SemiVerdict> {
    t.require_sub(s)?;
    Ok(match algorithm {
        SemiAlgorithm::Witness => {
            let witness = witness_open(t, s);
            SemiVerdict {
                holds: witness.is_some(),
                witness,
            }
        }
        SemiAlgorithm::Criterion => {
            let holds = som_criterion(t, s);
            SemiVerdict {
                holds,
                witness: holds.then(|| t.int(s)),
            }
        }
        SemiAlgorithm::Both => {
            let witness = witness_open(t, s);
            if witness.is_some() != som_criterion(t, s) {
                return Err(divergence(t, s, "witness search and cl(int(S)) criterion disagree"));
            }
            SemiVerdict {
                holds: witness.is_some(),
                witness,
            }
        }
    })
}

/// Is `s` semi-closed: some closed `P` with `int(P) ≤ s ≤ P`.
///
/// `Both` additionally checks agreement with semi-openness of the complement.
pub fn is_semi_closed(t: &MTopology, s: &MSet, algorithm: SemiAlgorithm) -> Result<SemiVerdict> {
    t.require_sub(s)?;
    Ok(match algorithm {
        SemiAlgorithm::Witness => {
            let witness = witness_closed(t, s);
            SemiVerdict {
                holds: witness.is_some(),
                witness,
            }
        }
        SemiAlgorithm::Criterion => {
            let holds = scm_criterion(t, s);
            SemiVerdict {
                holds,
                witness: holds.then(|| t.cl(s)),
            }
        }
        SemiAlgorithm::Both => {
            let witness = witness_closed(t, s);
            let holds = witness.is_some();
            if holds != scm_criterion(t, s) {
                return Err(divergence(t, s, "witness search and int(cl(T)) criterion disagree"));
            }
            if holds != som_criterion(t, &t.comp(s)) {
                return Err(divergence(t, s, "semi-closedness disagrees with semi-openness of the complement"));
            }
            SemiVerdict { holds, witness }
        }
    })
}

/// Every semi-open and semi-closed sub-M-set of a topology's ground.
#[derive(Debug, Clone)]
pub struct SemiFamily {
    topology: MTopology,
    som: Vec<MSet>,
    scm: Vec<MSet>,
}

/// Enumerates `som` over `P(M)` with the default budget.
pub fn enumerate_semi(t: &MTopology) -> Result<SemiFamily> {
    SemiFamily::new(t, DEFAULT_ENUMERATION_BUDGET)
}

impl SemiFamily {
    /// Candidates with empty interior are pruned (except φ); every accepted
    /// candidate is re-checked by the witness search.
    pub fn new(t: &MTopology, budget: u64) -> Result<Self> {
        let power = enumerate_power(t.ground(), PowerKind::All, budget)?;
        let mut som = Vec::new();
        for s in power {
            if !s.is_empty() && t.int(&s).is_empty() {
                continue;
            }
            if som_criterion(t, &s) {
                if witness_open(t, &s).is_none() {
                    return Err(divergence(t, &s, "criterion accepted a set with no open witness"));
                }
                som.push(s);
            }
        }
        Ok(Self::from_som(t.clone(), som))
    }

    /// Builds from a canonical `som` list; `scm` is the family of complements.
    pub(crate) fn from_som(topology: MTopology, som: Vec<MSet>) -> Self {
        let mut scm: Vec<MSet> = som.iter().map(|s| topology.comp(s)).collect();
        scm.sort();
        SemiFamily { topology, som, scm }
    }

    pub fn topology(&self) -> &MTopology {
        &self.topology
    }

    pub fn som(&self) -> &[MSet] {
        &self.som
    }

    pub fn scm(&self) -> &[MSet] {
        &self.scm
    }

    pub fn is_som(&self, s: &MSet) -> bool {
        self.som.binary_search(s).is_ok()
    }

    pub fn is_scm(&self, s: &MSet) -> bool {
        self.scm.binary_search(s).is_ok()
    }

    /// Union of every semi-open subset of `a`.
    pub fn semi_interior(&self, a: &MSet) -> Result<MSet> {
        self.topology.require_sub(a)?;
        Ok(self.sint(a))
    }

    /// Intersection of every semi-closed superset of `a`.
    pub fn semi_closure(&self, a: &MSet) -> Result<MSet> {
        self.topology.require_sub(a)?;
        Ok(self.scl(a))
    }

    pub(crate) fn sint(&self, a: &MSet) -> MSet {
        let mut acc = MSet::empty(a.space());
        for s in self.som.iter().filter(|s| s.is_sub(a)) {
            acc = acc.union(s);
        }
        acc
    }

    pub(crate) fn scl(&self, a: &MSet) -> MSet {
        let mut acc = self.topology.ground().clone();
        for s in self.scm.iter().filter(|s| a.is_sub(s)) {
            acc = acc.intersect(s);
        }
        acc
    }
}

/// Each sufficient condition for semi-openness and semi-closedness, evaluated
/// on its own, with a soundness check against the deciders.
#[derive(Debug, Clone, Serialize)]
pub struct ChecklistReport {
    pub set: String,
    pub som_conditions: Vec<(&'static str, bool)>,
    pub scm_conditions: Vec<(&'static str, bool)>,
    pub is_som: bool,
    pub is_scm: bool,
    /// Any SOM condition true implies `is_som`, and likewise for SCM.
    pub sound: bool,
}

pub fn condition_checklist(sf: &SemiFamily, a: &MSet) -> Result<ChecklistReport> {
    let t = sf.topology();
    t.require_sub(a)?;
    let power = enumerate_power(t.ground(), PowerKind::All, DEFAULT_ENUMERATION_BUDGET)?;
    let open = t.is_open(a);
    let closed = t.is_closed(a);

    let som_conditions = vec![
        ("open", open),
        ("clopen", open && closed),
        ("closure of an open M-set", t.open_sets().iter().any(|o| &t.cl(o) == a)),
        ("interior of some M-set", power.iter().any(|b| &t.int(b) == a)),
        ("below cl(int(A))", a.is_sub(&t.cl(&t.int(a)))),
        (
            "between a SOM-set S and cl(S)",
            sf.som().iter().any(|s| s.is_sub(a) && a.is_sub(&t.cl(s))),
        ),
    ];
    let scm_conditions = vec![
        ("closed", closed),
        ("clopen", open && closed),
        ("closure of some M-set", power.iter().any(|b| &t.cl(b) == a)),
        ("interior of a closed M-set", t.closed_sets().iter().any(|p| &t.int(p) == a)),
        ("above int(cl(B))", t.int(&t.cl(a)).is_sub(a)),
        (
            "between int(T) and T for a SCM-set T",
            sf.scm().iter().any(|s| t.int(s).is_sub(a) && a.is_sub(s)),
        ),
    ];
    let is_som = sf.is_som(a);
    let is_scm = sf.is_scm(a);
    let sound = (!som_conditions.iter().any(|c| c.1) || is_som)
        && (!scm_conditions.iter().any(|c| c.1) || is_scm);
    Ok(ChecklistReport {
        set: a.to_text(),
        som_conditions,
        scm_conditions,
        is_som,
        is_scm,
        sound,
    })
}
