//! Corpora of topologies that claims are verified against.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::exec::Exec;
use crate::harness::gen::{all_grounds, enumerate_topologies, generate_trial, GenConfig, EXHAUSTIVE_POWER_CAP};
use crate::io::topology_to_json_string;
use crate::mset::{power_cardinality, PowerKind};
use crate::topology::MTopology;

#[derive(Debug, Clone)]
pub enum CorpusSpec {
    /// Named, explicitly given topologies.
    Fixture { name: String, topologies: Vec<MTopology> },
    /// Every topology on every ground of each `(|X|, w)` space. Grounds with
    /// `|P(M)|` above the exhaustive cap are skipped and counted.
    Exhaustive { spaces: Vec<(usize, u32)> },
    Random(GenConfig),
    /// Concatenation, in order.
    Union(Vec<CorpusSpec>),
}

impl CorpusSpec {
    pub fn fixture(name: impl Into<String>, t: MTopology) -> Self {
        CorpusSpec::Fixture {
            name: name.into(),
            topologies: vec![t],
        }
    }

    /// All topologies for `|X| = 2, w = 1` and `|X| = 1, w = 2`.
    pub fn exhaustive_small() -> Self {
        CorpusSpec::Exhaustive {
            spaces: vec![(2, 1), (1, 2)],
        }
    }

    /// All topologies for `|X| ≤ 2, w ≤ 2`.
    pub fn exhaustive_default() -> Self {
        CorpusSpec::Exhaustive {
            spaces: vec![(1, 1), (1, 2), (2, 1), (2, 2)],
        }
    }

    /// Search space for counterexample mining: exhaustive small spaces plus
    /// seeded random topologies with `|X| ≤ 3, w ≤ 5`.
    pub fn mining_default(seed: u64) -> Self {
        CorpusSpec::Union(vec![
            CorpusSpec::Exhaustive {
                spaces: vec![(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)],
            },
            CorpusSpec::Random(GenConfig {
                max_domain: 3,
                max_w: 5,
                seed,
                density: 0.3,
                trials: 500,
            }),
        ])
    }

    fn kind(&self) -> String {
        match self {
            CorpusSpec::Fixture { .. } => "fixture".into(),
            CorpusSpec::Exhaustive { .. } => "exhaustive".into(),
            CorpusSpec::Random(_) => "random".into(),
            CorpusSpec::Union(parts) => {
                let kinds: Vec<String> = parts.iter().map(CorpusSpec::kind).collect();
                kinds.join("+")
            }
        }
    }

    fn bounds(&self) -> String {
        match self {
            CorpusSpec::Fixture { name, .. } => name.clone(),
            CorpusSpec::Exhaustive { spaces } => {
                let parts: Vec<String> = spaces.iter().map(|(d, w)| format!("|X|={d},w={w}")).collect();
                parts.join(";")
            }
            CorpusSpec::Random(cfg) => format!(
                "|X|<={},w<={},density={},trials={}",
                cfg.max_domain, cfg.max_w, cfg.density, cfg.trials
            ),
            CorpusSpec::Union(parts) => {
                let b: Vec<String> = parts.iter().map(CorpusSpec::bounds).collect();
                b.join(" + ")
            }
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            CorpusSpec::Random(cfg) => Some(cfg.seed),
            CorpusSpec::Union(parts) => parts.iter().find_map(CorpusSpec::seed),
            _ => None,
        }
    }

    pub fn materialize(&self, exec: Exec) -> Result<Corpus> {
        let mut members = Vec::new();
        let mut skipped_grounds = 0;
        self.collect(exec, &mut members, &mut skipped_grounds)?;
        let info = CorpusInfo {
            kind: self.kind(),
            bounds: self.bounds(),
            seed: self.seed(),
            members: members.len(),
            skipped_grounds,
            fingerprint: fingerprint(&members),
        };
        Ok(Corpus { info, members })
    }

    fn collect(&self, exec: Exec, out: &mut Vec<MTopology>, skipped: &mut usize) -> Result<()> {
        match self {
            CorpusSpec::Fixture { topologies, .. } => out.extend(topologies.iter().cloned()),
            CorpusSpec::Exhaustive { spaces } => {
                for &(d, w) in spaces {
                    for ground in all_grounds(d, w)? {
                        if power_cardinality(&ground, PowerKind::All) > EXHAUSTIVE_POWER_CAP {
                            *skipped += 1;
                            continue;
                        }
                        out.extend(enumerate_topologies(&ground)?);
                    }
                }
            }
            CorpusSpec::Random(cfg) => {
                let idx: Vec<u64> = (0..cfg.trials as u64).collect();
                for t in exec.map(&idx, |&i| generate_trial(cfg, i)) {
                    out.push(t?);
                }
            }
            CorpusSpec::Union(parts) => {
                for p in parts {
                    p.collect(exec, out, skipped)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusInfo {
    pub kind: String,
    pub bounds: String,
    pub seed: Option<u64>,
    pub members: usize,
    pub skipped_grounds: usize,
    pub fingerprint: String,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub info: CorpusInfo,
    pub members: Vec<MTopology>,
}

/// SHA-256 over the canonical JSON of every member, one per line.
pub fn fingerprint(members: &[MTopology]) -> String {
    let mut h = Sha256::new();
    for t in members {
        h.update(topology_to_json_string(t).as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// A per-member seed derived from the member's canonical form.
pub(crate) fn member_seed(t: &MTopology) -> u64 {
    let digest = Sha256::digest(topology_to_json_string(t).as_bytes());
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small_counts() {
        // |X|=2,w=1: grounds φ,{a},{b},{a,b} give 1+1+1+4; |X|=1,w=2: φ,{1a},{2a} give 1+1+2
        let c = CorpusSpec::exhaustive_small().materialize(Exec::Sequential).unwrap();
        assert_eq!(c.info.members, 11);
        assert_eq!(c.info.skipped_grounds, 0);
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let spec = CorpusSpec::Random(GenConfig { trials: 40, seed: 5, ..GenConfig::default() });
        let a = spec.materialize(Exec::Parallel).unwrap();
        let b = spec.materialize(Exec::Sequential).unwrap();
        assert_eq!(a.info, b.info);
        assert_eq!(a.members, b.members);
        let other = CorpusSpec::Random(GenConfig { trials: 40, seed: 6, ..GenConfig::default() })
            .materialize(Exec::Sequential)
            .unwrap();
        assert_ne!(a.info.fingerprint, other.info.fingerprint);
    }
}
