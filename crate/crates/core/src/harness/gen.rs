//! Seeded random topologies and exhaustive topology enumeration.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mset::{enumerate_power, power_cardinality, MSet, MSpace, PowerKind, DEFAULT_ENUMERATION_BUDGET};
use crate::topology::{is_topology_family, MTopology};

/// Largest `|P(M)|` whose topologies are enumerated exhaustively.
pub const EXHAUSTIVE_POWER_CAP: u128 = 12;

/// Largest family a random closure may grow to before density is lowered.
pub const FAMILY_BUDGET: usize = 4096;

const MAX_RETRIES: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub max_domain: usize,
    pub max_w: u32,
    pub seed: u64,
    /// Probability of seeding each proper non-empty sub-M-set before closure.
    pub density: f64,
    pub trials: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_domain: 3,
            max_w: 3,
            seed: 0,
            density: 0.3,
            trials: 500,
        }
    }
}

impl GenConfig {
    fn check(&self) -> Result<()> {
        if self.max_domain == 0 || self.max_w == 0 {
            return Err(Error::InvalidSpace("generator bounds must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::InvalidSpace(format!(
                "density {} outside [0, 1]",
                self.density
            )));
        }
        Ok(())
    }
}

/// The first topology of the stream described by `cfg`.
pub fn generate_topology(cfg: &GenConfig) -> Result<MTopology> {
    generate_trial(cfg, 0)
}

/// Trial `index` of the stream; each trial has its own ChaCha stream, so
/// trials can be generated in any order.
pub fn generate_trial(cfg: &GenConfig, index: u64) -> Result<MTopology> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);

    let d = rng.random_range(1..=cfg.max_domain);
    let w = rng.random_range(1..=cfg.max_w);
    let space = MSpace::standard(d, w)?;
    let counts: Vec<u32> = (0..d).map(|_| rng.random_range(1..=w)).collect();
    let ground = MSet::from_counts(&space, counts)?;
    let power = enumerate_power(&ground, PowerKind::All, DEFAULT_ENUMERATION_BUDGET)?;
    let empty = MSet::empty(&space);

    let mut density = cfg.density;
    for _ in 0..MAX_RETRIES {
        let mut seeds = vec![empty.clone(), ground.clone()];
        for s in &power {
            if s != &empty && s != &ground && rng.random_bool(density) {
                seeds.push(s.clone());
            }
        }
        if let Some(family) = close_family(seeds, FAMILY_BUDGET) {
            return Ok(MTopology::from_canonical(ground, family));
        }
        density /= 2.0;
    }
    Err(Error::Budget {
        what: "random topology closure",
        needed: power.len() as u128,
        budget: FAMILY_BUDGET as u128,
    })
}

/// Closes a family under pairwise union and intersection; `None` if it grows
/// past `budget`.
pub(crate) fn close_family(seeds: Vec<MSet>, budget: usize) -> Option<Vec<MSet>> {
    let mut family: BTreeSet<MSet> = BTreeSet::new();
    let mut pending: Vec<MSet> = Vec::new();
    for s in seeds {
        if family.insert(s.clone()) {
            pending.push(s);
        }
    }
    let mut members: Vec<MSet> = family.iter().cloned().collect();
    while let Some(x) = pending.pop() {
        let mut fresh = Vec::new();
        for y in &members {
            for z in [x.union(y), x.intersect(y)] {
                if family.insert(z.clone()) {
                    fresh.push(z);
                }
            }
        }
        if family.len() > budget {
            return None;
        }
        members.extend(fresh.iter().cloned());
        pending.extend(fresh);
    }
    Some(family.into_iter().collect())
}

/// Every M-topology on `ground`, in a fixed canonical order: subsets of the
/// proper non-empty sub-M-sets, taken by increasing bitmask over their
/// canonical order.
pub fn enumerate_topologies(ground: &MSet) -> Result<TopologyEnumerator> {
    let needed = power_cardinality(ground, PowerKind::All);
    if needed > EXHAUSTIVE_POWER_CAP {
        return Err(Error::Budget {
            what: "exhaustive topology enumeration (|P(M)|)",
            needed,
            budget: EXHAUSTIVE_POWER_CAP,
        });
    }
    let power = enumerate_power(ground, PowerKind::All, DEFAULT_ENUMERATION_BUDGET)?;
    let empty = MSet::empty(ground.space());
    let inner: Vec<MSet> = power
        .into_iter()
        .filter(|s| s != &empty && s != ground)
        .collect();
    Ok(TopologyEnumerator {
        ground: ground.clone(),
        end: 1u32 << inner.len(),
        inner,
        next: 0,
    })
}

#[derive(Debug)]
pub struct TopologyEnumerator {
    ground: MSet,
    inner: Vec<MSet>,
    next: u32,
    end: u32,
}

impl Iterator for TopologyEnumerator {
    type Item = MTopology;

    fn next(&mut self) -> Option<MTopology> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let mut family = vec![MSet::empty(self.ground.space()), self.ground.clone()];
            family.extend(
                self.inner
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, s)| s.clone()),
            );
            family.sort();
            family.dedup();
            if is_topology_family(&self.ground, &family) {
                return Some(MTopology::from_canonical(self.ground.clone(), family));
            }
        }
        None
    }
}

/// Every ground M-set of `[X]^w` over `size` standard symbols.
pub fn all_grounds(size: usize, w: u32) -> Result<Vec<MSet>> {
    let space = MSpace::standard(size, w)?;
    enumerate_power(&MSet::top(&space), PowerKind::All, DEFAULT_ENUMERATION_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::validate_topology;

    /// Independent count: every subset of `P(M)` holding φ and M that is
    /// closed under pairwise ∪ and ∩, by plain bitmask enumeration.
    fn brute_force_count(ground: &MSet) -> usize {
        let power = enumerate_power(ground, PowerKind::All, 1000).unwrap();
        let n = power.len();
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            let fam: Vec<&MSet> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &power[i]).collect();
            let has = |s: &MSet| fam.contains(&s);
            if !has(&MSet::empty(ground.space())) || !has(ground) {
                continue;
            }
            if fam.iter().all(|a| fam.iter().all(|b| has(&a.union(b)) && has(&a.intersect(b)))) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        let ab = MSpace::new(["a", "b"], 1).unwrap();
        let a2 = MSpace::new(["a"], 2).unwrap();
        let ab2 = MSpace::new(["a", "b"], 2).unwrap();
        let cases = [
            (MSet::parse(&a2, "{1/a}").unwrap(), 1),
            (MSet::parse(&ab, "{1/a, 1/b}").unwrap(), 4),
            (MSet::parse(&a2, "{2/a}").unwrap(), 2),
            (MSet::parse(&ab2, "{2/a, 1/b}").unwrap(), 12),
            (MSet::parse(&ab2, "{2/a, 2/b}").unwrap(), 49),
        ];
        for (ground, pinned) in cases {
            let n = enumerate_topologies(&ground).unwrap().count();
            assert_eq!(n, brute_force_count(&ground), "{ground}");
            assert_eq!(n, pinned, "{ground}");
        }
    }

    #[test]
    fn enumeration_budget() {
        let x = MSpace::new(["a", "b"], 3).unwrap();
        let g = MSet::parse(&x, "{3/a, 3/b}").unwrap();
        assert!(enumerate_topologies(&g).unwrap_err().is_budget());
    }

    #[test]
    fn enumerated_topologies_are_valid_and_distinct() {
        let x = MSpace::new(["a", "b"], 2).unwrap();
        let g = MSet::parse(&x, "{2/a, 1/b}").unwrap();
        let all: Vec<MTopology> = enumerate_topologies(&g).unwrap().collect();
        for t in &all {
            assert!(validate_topology(t.ground(), t.open_sets()).unwrap().is_valid());
        }
        let distinct: BTreeSet<Vec<MSet>> = all.iter().map(|t| t.open_sets().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn single_point_space_has_one_topology() {
        let cfg = GenConfig { max_domain: 1, max_w: 1, seed: 99, ..GenConfig::default() };
        let t = generate_topology(&cfg).unwrap();
        assert_eq!(t.open_sets().len(), 2);
        assert_eq!(t.ground().to_text(), "{1/a}");
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig { max_domain: 2, max_w: 1, seed: 7, ..GenConfig::default() };
        for i in 0..20 {
            assert_eq!(generate_trial(&cfg, i).unwrap(), generate_trial(&cfg, i).unwrap());
        }
    }

    #[test]
    fn full_density_gives_discrete_topology() {
        let cfg = GenConfig { max_domain: 3, max_w: 3, seed: 3, density: 1.0, trials: 1 };
        for i in 0..10 {
            let t = generate_trial(&cfg, i).unwrap();
            let power = enumerate_power(t.ground(), PowerKind::All, 1000).unwrap();
            assert_eq!(t.open_sets(), power.as_slice());
        }
    }

    #[test]
    fn generated_topologies_validate() {
        let cfg = GenConfig { seed: 11, ..GenConfig::default() };
        for i in 0..50 {
            let t = generate_trial(&cfg, i).unwrap();
            assert!(validate_topology(t.ground(), t.open_sets()).unwrap().is_valid());
        }
    }

    #[test]
    fn bad_config_rejected() {
        let cfg = GenConfig { density: 1.5, ..GenConfig::default() };
        assert!(generate_topology(&cfg).is_err());
        let cfg = GenConfig { max_w: 0, ..GenConfig::default() };
        assert!(generate_topology(&cfg).is_err());
    }
}
