//! M-topologies: axiom validation, interior and closure, subspaces and bases.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mset::{canonical_family, family_text, MSet};

/// A ground M-set together with a valid family of open sub-M-sets.
///
/// Both the open family and the derived closed family are kept in canonical
/// order, so membership tests are binary searches.
#[derive(Clone, PartialEq, Eq)]
pub struct MTopology {
    ground: MSet,
    open: Vec<MSet>,
    closed: Vec<MSet>,
}

/// One failed axiom, with the witness that shows it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    GroundAbsent,
    EmptyAbsent,
    UnionMissing { left: MSet, right: MSet, union: MSet },
    IntersectionMissing { left: MSet, right: MSet, meet: MSet },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GroundAbsent => f.write_str("ground M-set absent"),
            Violation::EmptyAbsent => f.write_str("empty M-set absent"),
            Violation::UnionMissing { left, right, union } => {
                write!(f, "union of {left} and {right} absent: {union}")
            }
            Violation::IntersectionMissing { left, right, meet } => {
                write!(f, "intersection of {left} and {right} absent: {meet}")
            }
        }
    }
}

impl Serialize for Violation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub const PAIRWISE_NOTE: &str = "closure under arbitrary unions and finite intersections certified by \
pairwise closure: the family is finite and both operations are associative and idempotent";

/// Result of checking a candidate family against the M-topology axioms.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub ground: String,
    pub members: usize,
    pub duplicates: usize,
    pub violations: Vec<Violation>,
    pub note: &'static str,
    #[serde(skip)]
    pub topology: Option<MTopology>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `family` against the axioms on `ground`. Duplicates are dropped and
/// counted. A member outside `ground` is a malformed family, not a violation.
pub fn validate_topology(ground: &MSet, family: &[MSet]) -> Result<ValidationReport> {
    for member in family {
        if !member.same_space(ground) {
            return Err(Error::MalformedFamily(format!(
                "{member} is drawn from a different M-space"
            )));
        }
        if !member.is_sub(ground) {
            return Err(Error::MalformedFamily(format!(
                "{member} is not a sub-M-set of {ground}"
            )));
        }
    }
    let canonical = canonical_family(family.iter().cloned());
    let duplicates = family.len() - canonical.len();
    let violations = axiom_violations(ground, &canonical);
    let topology = violations
        .is_empty()
        .then(|| MTopology::from_canonical(ground.clone(), canonical.clone()));
    Ok(ValidationReport {
        ground: ground.to_text(),
        members: canonical.len(),
        duplicates,
        violations,
        note: PAIRWISE_NOTE,
        topology,
    })
}

fn axiom_violations(ground: &MSet, family: &[MSet]) -> Vec<Violation> {
    let mut out = Vec::new();
    let contains = |s: &MSet| family.binary_search(s).is_ok();
    if !contains(&MSet::empty(ground.space())) {
        out.push(Violation::EmptyAbsent);
    }
    if !contains(ground) {
        out.push(Violation::GroundAbsent);
    }
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let u = a.union(b);
            if !contains(&u) {
                out.push(Violation::UnionMissing {
                    left: a.clone(),
                    right: b.clone(),
                    union: u,
                });
            }
            let m = a.intersect(b);
            if !contains(&m) {
                out.push(Violation::IntersectionMissing {
                    left: a.clone(),
                    right: b.clone(),
                    meet: m,
                });
            }
        }
    }
    out
}

/// True when a canonical family on `ground` satisfies the axioms.
pub(crate) fn is_topology_family(ground: &MSet, family: &[MSet]) -> bool {
    let contains = |s: &MSet| family.binary_search(s).is_ok();
    contains(&MSet::empty(ground.space()))
        && contains(ground)
        && family.iter().enumerate().all(|(i, a)| {
            family[i + 1..]
                .iter()
                .all(|b| contains(&a.union(b)) && contains(&a.intersect(b)))
        })
}

impl MTopology {
    /// Validates and builds; fails with the first violated axiom.
    pub fn new(ground: MSet, family: Vec<MSet>) -> Result<Self> {
        let report = validate_topology(&ground, &family)?;
        match report.topology {
            Some(t) => Ok(t),
            None => Err(Error::InvalidTopology(report.violations[0].to_string())),
        }
    }

    /// `family` must already be canonical and valid.
    pub(crate) fn from_canonical(ground: MSet, open: Vec<MSet>) -> Self {
        debug_assert!(is_topology_family(&ground, &open));
        let closed = canonical_family(open.iter().map(|o| ground.subtract(o)));
        MTopology {
            ground,
            open,
            closed,
        }
    }

    /// The indiscrete topology `{φ, M}`.
    pub fn indiscrete(ground: MSet) -> Self {
        let open = canonical_family([MSet::empty(ground.space()), ground.clone()]);
        Self::from_canonical(ground, open)
    }

    pub fn ground(&self) -> &MSet {
        &self.ground
    }

    pub fn open_sets(&self) -> &[MSet] {
        &self.open
    }

    pub fn closed_sets(&self) -> &[MSet] {
        &self.closed
    }

    pub fn is_open(&self, s: &MSet) -> bool {
        self.open.binary_search(s).is_ok()
    }

    pub fn is_closed(&self, s: &MSet) -> bool {
        self.closed.binary_search(s).is_ok()
    }

    pub(crate) fn require_sub(&self, a: &MSet) -> Result<()> {
        if a.is_sub(&self.ground) {
            Ok(())
        } else {
            Err(Error::NotSubset {
                sub: a.to_text(),
                sup: self.ground.to_text(),
            })
        }
    }

    /// Union of every open set contained in `a`.
    pub fn interior(&self, a: &MSet) -> Result<MSet> {
        self.require_sub(a)?;
        Ok(self.int(a))
    }

    /// Intersection of every closed set containing `a`.
    pub fn closure(&self, a: &MSet) -> Result<MSet> {
        self.require_sub(a)?;
        Ok(self.cl(a))
    }

    pub(crate) fn int(&self, a: &MSet) -> MSet {
        let mut acc = MSet::empty(a.space());
        for g in self.open.iter().filter(|g| g.is_sub(a)) {
            acc = acc.union(g);
        }
        acc
    }

    pub(crate) fn cl(&self, a: &MSet) -> MSet {
        let mut acc = self.ground.clone();
        for k in self.closed.iter().filter(|k| a.is_sub(k)) {
            acc = acc.intersect(k);
        }
        acc
    }

    /// `M ⊖ a`; the caller guarantees `a ⊆ M`.
    pub(crate) fn comp(&self, a: &MSet) -> MSet {
        self.ground.subtract(a)
    }

    /// The subspace topology `{N ∩ U : U ∈ τ}` on `n`.
    pub fn subspace(&self, n: &MSet) -> Result<MTopology> {
        self.require_sub(n)?;
        let family = canonical_family(self.open.iter().map(|u| n.intersect(u)));
        MTopology::new(n.clone(), family)
    }
}

impl fmt::Debug for MTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MTopology({} ; {})", self.ground, family_text(&self.open))
    }
}

/// A failed basis clause with its witness point `m/x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisViolation {
    /// No basis element reaches the ground multiplicity of `x`.
    Uncovered { symbol: String, multiplicity: u32 },
    /// `m/x` lies in `P ∩ Q` but no element `R ⊆ P ∩ Q` has `C_R(x) = m`.
    NoRefinement {
        symbol: String,
        multiplicity: u32,
        p: MSet,
        q: MSet,
    },
}

impl fmt::Display for BasisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisViolation::Uncovered { symbol, multiplicity } => {
                write!(f, "no basis element contains {multiplicity}/{symbol}")
            }
            BasisViolation::NoRefinement {
                symbol,
                multiplicity,
                p,
                q,
            } => write!(
                f,
                "{multiplicity}/{symbol} lies in {p} ∩ {q} but no basis element R ⊆ {} has count {multiplicity} at {symbol}",
                p.intersect(q)
            ),
        }
    }
}

impl Serialize for BasisViolation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    pub members: usize,
    pub violations: Vec<BasisViolation>,
}

impl BasisReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_members(ground: &MSet, basis: &[MSet]) -> Result<()> {
    for b in basis {
        if !b.is_sub(ground) {
            return Err(Error::MalformedFamily(format!(
                "{b} is not a sub-M-set of {ground}"
            )));
        }
    }
    Ok(())
}

/// Checks both basis clauses. A point `m/x` of `M` is taken at its full
/// ground multiplicity for the covering clause and at its multiplicity in
/// `P ∩ Q` for the refinement clause.
pub fn validate_basis(ground: &MSet, basis: &[MSet]) -> Result<BasisReport> {
    check_members(ground, basis)?;
    let basis = canonical_family(basis.iter().cloned());
    let space = ground.space();
    let mut violations = Vec::new();
    for x in ground.support() {
        let m = ground.counts()[x];
        if !basis.iter().any(|b| b.counts()[x] >= m) {
            violations.push(BasisViolation::Uncovered {
                symbol: space.domain()[x].clone(),
                multiplicity: m,
            });
        }
    }
    for (i, p) in basis.iter().enumerate() {
        for q in &basis[i + 1..] {
            let meet = p.intersect(q);
            for x in meet.support() {
                let m = meet.counts()[x];
                let refined = basis
                    .iter()
                    .any(|r| r.is_sub(&meet) && r.counts()[x] == m);
                if !refined {
                    violations.push(BasisViolation::NoRefinement {
                        symbol: space.domain()[x].clone(),
                        multiplicity: m,
                        p: p.clone(),
                        q: q.clone(),
                    });
                }
            }
        }
    }
    Ok(BasisReport {
        members: basis.len(),
        violations,
    })
}

/// The family of all unions of sub-collections of `basis` (the empty
/// sub-collection giving φ), validated post hoc as an M-topology on `ground`.
pub fn topology_from_basis(ground: &MSet, basis: &[MSet]) -> Result<MTopology> {
    check_members(ground, basis)?;
    let mut family: BTreeSet<MSet> = basis.iter().cloned().collect();
    family.insert(MSet::empty(ground.space()));
    let mut frontier: Vec<MSet> = family.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in basis {
                let u = a.union(b);
                if family.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    let family: Vec<MSet> = family.into_iter().collect();
    let report = validate_topology(ground, &family)?;
    match report.topology {
        Some(t) => Ok(t),
        None => Err(Error::BasisGeneration(report.violations[0].to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_3_3;
    use crate::mset::MSpace;

    fn parse(t: &MTopology, s: &str) -> MSet {
        MSet::parse(t.ground().space(), s).unwrap()
    }

    #[test]
    fn example_validates() {
        let t = example_3_3();
        let report = validate_topology(t.ground(), t.open_sets()).unwrap();
        assert!(report.is_valid());
        assert_eq!(report.members, 6);
        assert_eq!(
            family_text(t.closed_sets()),
            "[{}, {3/c}, {4/a}, {4/a, 3/c}, {5/a, 2/b}, {5/a, 2/b, 3/c}]"
        );
    }

    #[test]
    fn missing_empty_reported() {
        let t = example_3_3();
        let family: Vec<MSet> = t.open_sets().iter().filter(|s| !s.is_empty()).cloned().collect();
        let report = validate_topology(t.ground(), &family).unwrap();
        assert_eq!(report.violations[0], Violation::EmptyAbsent);
        assert!(report.violations[1..]
            .iter()
            .all(|v| matches!(v, Violation::IntersectionMissing { meet, .. } if meet.is_empty())));
        assert_eq!(report.violations[0].to_string(), "empty M-set absent");
    }

    #[test]
    fn pair_witness_when_empty_removed() {
        let x = MSpace::new(["a", "b"], 1).unwrap();
        let m = MSet::parse(&x, "{1/a, 1/b}").unwrap();
        let a = MSet::parse(&x, "{1/a}").unwrap();
        let b = MSet::parse(&x, "{1/b}").unwrap();
        let full = vec![m.clone(), MSet::empty(&x), a.clone(), b.clone()];
        assert!(validate_topology(&m, &full).unwrap().is_valid());
        let report = validate_topology(&m, &[m.clone(), a.clone(), b.clone()]).unwrap();
        assert!(report.violations.contains(&Violation::EmptyAbsent));
        assert!(report.violations.contains(&Violation::IntersectionMissing {
            left: b,
            right: a,
            meet: MSet::empty(&x)
        }));
    }

    #[test]
    fn duplicates_counted_and_outsiders_rejected() {
        let t = example_3_3();
        let mut family = t.open_sets().to_vec();
        family.push(t.ground().clone());
        let report = validate_topology(t.ground(), &family).unwrap();
        assert_eq!(report.duplicates, 1);
        assert!(report.is_valid());
        let x = t.ground().space();
        family.push(MSet::parse(x, "{5/a, 5/b}").unwrap());
        assert!(matches!(
            validate_topology(t.ground(), &family),
            Err(Error::MalformedFamily(_))
        ));
    }

    #[test]
    fn interior_examples() {
        let t = example_3_3();
        assert_eq!(t.interior(&parse(&t, "{4/a, 2/b}")).unwrap().to_text(), "{1/a, 2/b}");
        assert_eq!(&t.interior(t.ground()).unwrap(), t.ground());
        assert!(t.interior(&parse(&t, "{}")).unwrap().is_empty());
        assert!(t.interior(&parse(&t, "{4/a}")).unwrap().is_empty());
        assert!(matches!(
            t.interior(&MSet::top(t.ground().space())),
            Err(Error::NotSubset { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let t = example_3_3();
        assert_eq!(t.closure(&parse(&t, "{1/a, 2/b}")).unwrap().to_text(), "{5/a, 2/b}");
        assert_eq!(&t.closure(t.ground()).unwrap(), t.ground());
        assert!(t.closure(&parse(&t, "{}")).unwrap().is_empty());
        assert_eq!(t.closure(&parse(&t, "{3/c}")).unwrap().to_text(), "{3/c}");
    }

    #[test]
    fn subspace_examples() {
        let t = example_3_3();
        let n = parse(&t, "{1/a, 2/b, 3/c}");
        let sub = t.subspace(&n).unwrap();
        assert_eq!(
            family_text(sub.open_sets()),
            "[{}, {3/c}, {1/a, 2/b}, {1/a, 2/b, 3/c}]"
        );
        assert_eq!(t.subspace(t.ground()).unwrap(), t);
        let e = t.subspace(&parse(&t, "{}")).unwrap();
        assert_eq!(family_text(e.open_sets()), "[{}]");
    }

    #[test]
    fn topology_is_its_own_basis() {
        let t = example_3_3();
        assert!(validate_basis(t.ground(), t.open_sets()).unwrap().is_valid());
        assert_eq!(topology_from_basis(t.ground(), t.open_sets()).unwrap(), t);
    }

    #[test]
    fn basis_of_points() {
        let x = MSpace::new(["a", "b"], 1).unwrap();
        let m = MSet::parse(&x, "{1/a, 1/b}").unwrap();
        let basis = vec![MSet::parse(&x, "{1/a}").unwrap(), MSet::parse(&x, "{1/b}").unwrap()];
        assert!(validate_basis(&m, &basis).unwrap().is_valid());
        let t = topology_from_basis(&m, &basis).unwrap();
        assert_eq!(family_text(t.open_sets()), "[{}, {1/b}, {1/a}, {1/a, 1/b}]");
    }

    #[test]
    fn basis_refinement_failure() {
        let x = MSpace::new(["a", "b"], 2).unwrap();
        let m = MSet::parse(&x, "{2/a, 1/b}").unwrap();
        let p = MSet::parse(&x, "{2/a}").unwrap();
        let q = MSet::parse(&x, "{1/a, 1/b}").unwrap();
        let report = validate_basis(&m, &[p.clone(), q.clone()]).unwrap();
        assert_eq!(
            report.violations,
            vec![BasisViolation::NoRefinement {
                symbol: "a".into(),
                multiplicity: 1,
                p: q.clone(),
                q: p.clone(),
            }]
        );
        assert!(matches!(
            topology_from_basis(&m, &[p, q]),
            Err(Error::BasisGeneration(_))
        ));
    }

    #[test]
    fn uncovered_basis() {
        let x = MSpace::new(["a", "b"], 2).unwrap();
        let m = MSet::parse(&x, "{2/a, 1/b}").unwrap();
        let report = validate_basis(&m, &[MSet::parse(&x, "{1/a, 1/b}").unwrap()]).unwrap();
        assert_eq!(
            report.violations,
            vec![BasisViolation::Uncovered { symbol: "a".into(), multiplicity: 2 }]
        );
    }
}
