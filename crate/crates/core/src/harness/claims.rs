//! The theorem catalogue and its corpus-wide verification.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{
    check_fip_scl, check_fip_scm, subspace_compact_equiv_with, DEFAULT_SEARCH_BUDGET,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::harness::corpus::{member_seed, Corpus};
use crate::harness::report::{AgreementTable, Counterexample, TheoremReport};
use crate::mset::{enumerate_power, interval, MSet, PowerKind, DEFAULT_ENUMERATION_BUDGET};
use crate::semi::{scm_criterion, som_criterion, witness_closed, witness_open, SemiFamily};
use crate::topology::MTopology;

/// Families up to this size have every subfamily checked for union
/// (intersection) closure; larger ones are checked pairwise.
pub const SUBFAMILY_SWEEP_CAP: usize = 12;

/// Number of `(N, A)` chains sampled per member when `P(M)` is too large to
/// sweep every chain.
pub const SAMPLED_CHAINS: usize = 8;

const CHAIN_SWEEP_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// Arbitrary unions of semi-open sets are semi-open.
    SomUnion,
    /// A semi-open set united with an open set is semi-open.
    SomUnionOpen,
    /// Anything between a semi-open `S` and `cl(S)` is semi-open.
    SomSandwich,
    /// Anything between `int(T)` and a semi-closed `T` is semi-closed.
    ScmSandwich,
    /// The four characterizations of semi-openness agree.
    SemiEquivalence,
    /// Arbitrary intersections of semi-closed sets are semi-closed.
    ScmIntersection,
    /// Semi compact iff every FIP family of semi-closed sets has non-empty meet.
    FipScm,
    /// Semi compact iff every FIP family has non-empty meet of semi closures.
    FipScl,
    /// Semi compactness of `A ⊆ N` agrees in `τ` and in `τ_N`.
    SubspaceCompact,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::SomUnion,
        Claim::SomUnionOpen,
        Claim::SomSandwich,
        Claim::ScmSandwich,
        Claim::SemiEquivalence,
        Claim::ScmIntersection,
        Claim::FipScm,
        Claim::FipScl,
        Claim::SubspaceCompact,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::SomUnion => "T3.6",
            Claim::SomUnionOpen => "T3.9",
            Claim::SomSandwich => "T3.10",
            Claim::ScmSandwich => "T3.11",
            Claim::SemiEquivalence => "T3.12",
            Claim::ScmIntersection => "SCM-intersection",
            Claim::FipScm => "T4.11",
            Claim::FipScl => "T4.12",
            Claim::SubspaceCompact => "T4.15",
        }
    }

    fn recheck_name(self) -> &'static str {
        match self {
            Claim::SomUnion => "som-union",
            Claim::SomUnionOpen => "som-union-open",
            Claim::SomSandwich => "som-sandwich",
            Claim::ScmSandwich => "scm-sandwich",
            Claim::SemiEquivalence => "semi-equivalence",
            Claim::ScmIntersection => "scm-intersection",
            Claim::FipScm => "fip-scm",
            Claim::FipScl => "fip-scl",
            Claim::SubspaceCompact => "subspace-compact",
        }
    }

    /// Claims whose two sides are tabulated and whose disagreements are
    /// reported as findings rather than violations.
    pub fn is_experiment(self) -> bool {
        matches!(self, Claim::FipScl)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

#[derive(Default)]
struct Outcome {
    checks: u64,
    violations: Vec<Counterexample>,
    findings: Vec<Counterexample>,
    skipped: bool,
    cell: Option<(bool, bool)>,
    exhaustive: Option<bool>,
}

impl Outcome {
    fn violation(&mut self, claim: Claim, t: &MTopology, offending: Vec<Vec<String>>, detail: String) {
        self.violations
            .push(Counterexample::new(claim.id(), t, offending, claim.recheck_name(), detail));
    }
}

fn texts(sets: &[MSet]) -> Vec<String> {
    sets.iter().map(MSet::to_text).collect()
}

/// Runs `claim` over every member of `corpus`.
pub fn verify_property(claim: Claim, corpus: &Corpus, exec: Exec) -> Result<TheoremReport> {
    let start = Instant::now();
    let outcomes = exec.map(&corpus.members, |t| check_member(claim, t));
    let mut report = TheoremReport {
        claim: claim.id().into(),
        corpus: corpus.info.clone(),
        trials: 0,
        skipped: 0,
        checks: 0,
        violations: Vec::new(),
        findings: Vec::new(),
        table: None,
        notes: Vec::new(),
        elapsed_ms: None,
    };
    let mut table = AgreementTable::default();
    let (mut exhaustive, mut partial) = (0usize, 0usize);
    for outcome in outcomes {
        let outcome = outcome?;
        if outcome.skipped {
            report.skipped += 1;
            continue;
        }
        report.trials += 1;
        report.checks += outcome.checks;
        report.violations.extend(outcome.violations);
        report.findings.extend(outcome.findings);
        if let Some((l, r)) = outcome.cell {
            table.record(l, r);
        }
        match outcome.exhaustive {
            Some(true) => exhaustive += 1,
            Some(false) => partial += 1,
            None => {}
        }
    }
    if matches!(claim, Claim::FipScm | Claim::FipScl) {
        report.table = Some(table);
        report.notes.push(
            "table: left = space is semi compact, right = every FIP collection in the swept family has non-empty meet"
                .into(),
        );
    }
    match claim {
        Claim::SomUnion | Claim::ScmIntersection => report.notes.push(format!(
            "{exhaustive} members swept over every subfamily (family size <= {SUBFAMILY_SWEEP_CAP}), \
             {partial} members checked pairwise (sufficient for finite families)"
        )),
        Claim::SubspaceCompact => report.notes.push(format!(
            "{exhaustive} members swept over every chain A <= N <= M, \
             {partial} members over {SAMPLED_CHAINS} seeded chains"
        )),
        _ => {}
    }
    if report.skipped > 0 {
        report.notes.push(format!(
            "{} members skipped: sub-collection sweep above its enumeration cap",
            report.skipped
        ));
    }
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

fn check_member(claim: Claim, t: &MTopology) -> Result<Outcome> {
    let sf = match SemiFamily::new(t, DEFAULT_ENUMERATION_BUDGET) {
        Ok(sf) => sf,
        Err(e) if e.is_budget() => {
            return Ok(Outcome {
                skipped: true,
                ..Outcome::default()
            })
        }
        Err(e) => return Err(e),
    };
    let mut out = Outcome::default();
    match claim {
        Claim::SomUnion => closure_sweep(claim, &sf, sf.som(), MSet::union, |s| sf.is_som(s), &mut out),
        Claim::ScmIntersection => {
            closure_sweep(claim, &sf, sf.scm(), MSet::intersect, |s| sf.is_scm(s), &mut out)
        }
        Claim::SomUnionOpen => {
            for s in sf.som() {
                for o in t.open_sets() {
                    out.checks += 1;
                    let u = s.union(o);
                    if !sf.is_som(&u) {
                        out.violation(claim, t, vec![vec![s.to_text()], vec![o.to_text()]], format!("{u} is not semi-open"));
                    }
                }
            }
        }
        Claim::SomSandwich => {
            for s in sf.som() {
                for n in interval(s.space(), s.counts(), t.cl(s).counts()) {
                    out.checks += 1;
                    if !sf.is_som(&n) {
                        out.violation(claim, t, vec![vec![s.to_text()], vec![n.to_text()]], format!("{n} is not semi-open"));
                    }
                }
            }
        }
        Claim::ScmSandwich => {
            for s in sf.scm() {
                for r in interval(s.space(), t.int(s).counts(), s.counts()) {
                    out.checks += 1;
                    if !sf.is_scm(&r) {
                        out.violation(claim, t, vec![vec![s.to_text()], vec![r.to_text()]], format!("{r} is not semi-closed"));
                    }
                }
            }
        }
        Claim::SemiEquivalence => {
            for s in enumerate_power(t.ground(), PowerKind::All, DEFAULT_ENUMERATION_BUDGET)? {
                out.checks += 1;
                let conditions = semi_conditions(t, &s);
                if conditions.iter().any(|&c| c != conditions[0]) {
                    out.violation(claim, t, vec![vec![s.to_text()]], format!("conditions (i)-(iv) evaluate to {conditions:?}"));
                }
            }
        }
        Claim::FipScm | Claim::FipScl => {
            let r = if claim == Claim::FipScm {
                check_fip_scm(&sf)
            } else {
                check_fip_scl(&sf)
            };
            let r = match r {
                Ok(r) => r,
                Err(e) if e.is_budget() => {
                    out.skipped = true;
                    return Ok(out);
                }
                Err(e) => return Err(e),
            };
            out.checks += r.collections_checked;
            out.cell = Some((r.left, r.right));
            if !r.agree {
                let offending = r.violating_collection.iter().cloned().map(|c| vec![c]).collect();
                let ce = Counterexample::new(
                    claim.id(),
                    t,
                    offending,
                    claim.recheck_name(),
                    format!("semi compact = {}, FIP side = {}", r.left, r.right),
                );
                if claim.is_experiment() {
                    out.findings.push(ce);
                } else {
                    out.violations.push(ce);
                }
            }
        }
        Claim::SubspaceCompact => subspace_sweep(claim, &sf, &mut out)?,
    }
    Ok(out)
}

/// The four equivalent characterizations of semi-openness of `s`:
/// open witness, `s ≤ cl(int(s))`, `int(cl(sᶜ)) ≤ sᶜ`, closed witness for `sᶜ`.
pub(crate) fn semi_conditions(t: &MTopology, s: &MSet) -> [bool; 4] {
    let c = t.comp(s);
    [
        witness_open(t, s).is_some(),
        som_criterion(t, s),
        scm_criterion(t, &c),
        witness_closed(t, &c).is_some(),
    ]
}

fn closure_sweep(
    claim: Claim,
    sf: &SemiFamily,
    family: &[MSet],
    op: fn(&MSet, &MSet) -> MSet,
    member: impl Fn(&MSet) -> bool,
    out: &mut Outcome,
) {
    let t = sf.topology();
    if family.len() <= SUBFAMILY_SWEEP_CAP {
        out.exhaustive = Some(true);
        for mask in 1u32..(1 << family.len()) {
            let chosen: Vec<MSet> = (0..family.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| family[i].clone())
                .collect();
            let combined = chosen[1..].iter().fold(chosen[0].clone(), |acc, s| op(&acc, s));
            out.checks += 1;
            if !member(&combined) {
                out.violation(claim, t, vec![texts(&chosen)], format!("{combined} falls outside the family"));
            }
        }
    } else {
        out.exhaustive = Some(false);
        for (i, a) in family.iter().enumerate() {
            for b in &family[i + 1..] {
                let combined = op(a, b);
                out.checks += 1;
                if !member(&combined) {
                    out.violation(
                        claim,
                        t,
                        vec![vec![a.to_text(), b.to_text()]],
                        format!("{combined} falls outside the family"),
                    );
                }
            }
        }
    }
}

fn subspace_sweep(claim: Claim, sf: &SemiFamily, out: &mut Outcome) -> Result<()> {
    let t = sf.topology();
    let power = enumerate_power(t.ground(), PowerKind::All, DEFAULT_ENUMERATION_BUDGET)?;
    let chains: Vec<(MSet, MSet)> = if power.len() <= CHAIN_SWEEP_CAP {
        out.exhaustive = Some(true);
        let mut v = Vec::new();
        for n in &power {
            for a in power.iter().filter(|a| a.is_sub(n)) {
                v.push((n.clone(), a.clone()));
            }
        }
        v
    } else {
        out.exhaustive = Some(false);
        let mut rng = ChaCha8Rng::seed_from_u64(member_seed(t));
        (0..SAMPLED_CHAINS)
            .map(|_| {
                let n = power[rng.random_range(0..power.len())].clone();
                let below: Vec<&MSet> = power.iter().filter(|a| a.is_sub(&n)).collect();
                let a = below[rng.random_range(0..below.len())].clone();
                (n, a)
            })
            .collect()
    };
    let mut cached: Option<(MSet, SemiFamily)> = None;
    for (n, a) in chains {
        if cached.as_ref().is_none_or(|(cn, _)| cn != &n) {
            let sub = SemiFamily::new(&t.subspace(&n)?, DEFAULT_ENUMERATION_BUDGET)?;
            cached = Some((n.clone(), sub));
        }
        let sub = &cached.as_ref().expect("cached above").1;
        out.checks += 1;
        let r = subspace_compact_equiv_with(sf, sub, &a, DEFAULT_SEARCH_BUDGET)?;
        if !r.agree {
            out.violation(
                claim,
                t,
                vec![vec![n.to_text()], vec![a.to_text()]],
                format!("tau: {}, tau_N: {}", r.compact_in_tau, r.compact_in_subspace),
            );
        }
    }
    Ok(())
}
