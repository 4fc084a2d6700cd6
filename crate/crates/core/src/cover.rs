//! Covers, subcover search and the semi-compactness deciders.
//!
//! Every semi-open cover of a finite presentation is, after dropping repeats,
//! a subfamily of the finite `som` family, so the deciders work over
//! subfamilies of `som`. A cover fails a variant exactly when its
//! filter-passing members do not cover; picking one maximal member per
//! support point of the target shrinks any failing cover to one with at most
//! `|support|` members, which bounds the search.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::mset::{classify_unchecked, family_text, intersect_all, MSet};
use crate::semi::SemiFamily;
use crate::topology::MTopology;

/// Default cap on the number of subfamilies a cover search may examine.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Cap on the family size whose sub-collections the FIP sweeps enumerate.
pub const FIP_SCM_FAMILY_CAP: usize = 16;
pub const FIP_POWER_FAMILY_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Semi,
    SemiWhole,
    SemiPartialWhole,
    SemiFull,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Semi,
        Variant::SemiWhole,
        Variant::SemiPartialWhole,
        Variant::SemiFull,
    ];

    pub fn filter(self) -> SubcoverFilter {
        match self {
            Variant::Semi => SubcoverFilter::Any,
            Variant::SemiWhole => SubcoverFilter::Whole,
            Variant::SemiPartialWhole => SubcoverFilter::PartialWhole,
            Variant::SemiFull => SubcoverFilter::Full,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Semi => "semi",
            Variant::SemiWhole => "semi_whole",
            Variant::SemiPartialWhole => "semi_partial_whole",
            Variant::SemiFull => "semi_full",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s || v.as_str().replace('_', "-") == s)
            .ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

/// Which members a subcover may use, classified against the ground M-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubcoverFilter {
    Any,
    Whole,
    PartialWhole,
    Full,
}

impl SubcoverFilter {
    pub fn passes(self, member: &MSet, ground: &MSet) -> bool {
        let r = classify_unchecked(member, ground);
        match self {
            SubcoverFilter::Any => r.is_sub,
            SubcoverFilter::Whole => r.is_whole,
            SubcoverFilter::PartialWhole => r.is_partial_whole,
            SubcoverFilter::Full => r.is_full,
        }
    }
}

impl FromStr for SubcoverFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "any" => Ok(SubcoverFilter::Any),
            "whole" => Ok(SubcoverFilter::Whole),
            "partial_whole" | "partial-whole" => Ok(SubcoverFilter::PartialWhole),
            "full" => Ok(SubcoverFilter::Full),
            _ => Err(format!("unknown filter `{s}`")),
        }
    }
}

/// Does the pointwise max of `family` dominate `target`?
pub fn covers<'a>(target: &MSet, family: impl IntoIterator<Item = &'a MSet>) -> bool {
    let mut best = vec![0u32; target.counts().len()];
    for s in family {
        for (b, &c) in best.iter_mut().zip(s.counts()) {
            *b = (*b).max(c);
        }
    }
    target.counts().iter().zip(&best).all(|(t, b)| t <= b)
}

/// A family asserted to cover a target M-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    target: MSet,
    members: Vec<MSet>,
}

impl Cover {
    pub fn new(target: MSet, members: impl IntoIterator<Item = MSet>) -> Result<Self> {
        let members = crate::mset::canonical_family(members);
        if members.iter().any(|m| !m.same_space(&target)) {
            return Err(Error::SpaceMismatch);
        }
        if !covers(&target, &members) {
            return Err(Error::NotACover {
                target: target.to_text(),
            });
        }
        Ok(Cover { target, members })
    }

    pub fn target(&self) -> &MSet {
        &self.target
    }

    pub fn members(&self) -> &[MSet] {
        &self.members
    }
}

/// Every member semi-open and the family covers the ground.
pub fn is_semi_open_cover(sf: &SemiFamily, family: &[MSet]) -> Result<bool> {
    let t = sf.topology();
    for m in family {
        t.require_sub(m)?;
    }
    Ok(covers(t.ground(), family) && family.iter().all(|m| sf.is_som(m)))
}

/// A minimum-cardinality sub-collection of `cover` whose members all pass
/// `filter` and which still covers the target. `None` when no such
/// sub-collection exists.
pub fn find_subcover(
    sf: &SemiFamily,
    cover: &Cover,
    filter: SubcoverFilter,
    budget: u64,
) -> Result<Option<Vec<MSet>>> {
    let t = sf.topology();
    for m in cover.members() {
        t.require_sub(m)?;
        if !sf.is_som(m) {
            return Err(Error::NotSemiOpenCover(format!("{m} is not semi-open")));
        }
    }
    minimum_subcover(t.ground(), cover.target(), cover.members(), filter, budget)
}

fn minimum_subcover(
    ground: &MSet,
    target: &MSet,
    members: &[MSet],
    filter: SubcoverFilter,
    budget: u64,
) -> Result<Option<Vec<MSet>>> {
    let passing: Vec<&MSet> = members.iter().filter(|m| filter.passes(m, ground)).collect();
    if !covers(target, passing.iter().copied()) {
        return Ok(None);
    }
    let max_k = passing.len().min(target.support_len());
    let frontier: u128 = (0..=max_k).map(|k| binomial(passing.len(), k)).sum();
    if frontier > budget as u128 {
        return Err(Error::Budget {
            what: "subcover search frontier",
            needed: frontier,
            budget: budget as u128,
        });
    }
    for k in 0..=max_k {
        let mut found = None;
        for_each_combination(passing.len(), k, |idx| {
            if covers(target, idx.iter().map(|&i| passing[i])) {
                found = Some(idx.iter().map(|&i| passing[i].clone()).collect());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    unreachable!("passing members cover the target, so a subcover of size <= |support| exists")
}

/// What an exhaustive compactness search examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub som_size: usize,
    /// Covers of every size up to this bound were examined.
    pub max_cover_size: usize,
    pub covers_examined: u64,
    pub note: &'static str,
}

const CERTIFICATE_NOTE: &str = "every semi-open cover is a finite subfamily of som, so any \
qualifying sub-collection is a finite subcover; a failing cover shrinks to one with at most \
|support| members";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactnessVerdict {
    pub variant: Variant,
    pub holds: bool,
    /// A semi-open cover without a qualifying subcover, when `holds` is false.
    pub witness: Option<Vec<MSet>>,
    pub certificate: Certificate,
}

impl Serialize for CompactnessVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CompactnessVerdict", 4)?;
        st.serialize_field("variant", &self.variant)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field(
            "witness",
            &self
                .witness
                .as_ref()
                .map(|w| w.iter().map(MSet::to_text).collect::<Vec<_>>()),
        )?;
        st.serialize_field("certificate", &self.certificate)?;
        st.end()
    }
}

/// Decides a compactness variant for the whole space.
pub fn decide_compactness(sf: &SemiFamily, variant: Variant, budget: u64) -> Result<CompactnessVerdict> {
    let t = sf.topology();
    search_failing_cover(sf.som(), t.ground(), t.ground(), variant, budget)
}

/// Decides whether `target ⊆ M` is compact for `variant`: every family of
/// members of `som` covering `target` has a qualifying finite subcover of
/// `target`. Members are classified against `ground`.
pub fn target_compactness(
    som: &[MSet],
    target: &MSet,
    ground: &MSet,
    variant: Variant,
    budget: u64,
) -> Result<CompactnessVerdict> {
    search_failing_cover(som, target, ground, variant, budget)
}

fn search_failing_cover(
    som: &[MSet],
    target: &MSet,
    ground: &MSet,
    variant: Variant,
    budget: u64,
) -> Result<CompactnessVerdict> {
    let filter = variant.filter();
    let passes: Vec<bool> = som.iter().map(|s| filter.passes(s, ground)).collect();
    let max_k = target.support_len().min(som.len());
    let frontier: u128 = (1..=max_k).map(|k| binomial(som.len(), k)).sum();
    if frontier > budget as u128 {
        return Err(Error::Budget {
            what: "cover search frontier",
            needed: frontier,
            budget: budget as u128,
        });
    }
    let mut examined = 0u64;
    let mut witness = None;
    for k in 1..=max_k {
        let stopped = for_each_combination(som.len(), k, |idx| {
            examined += 1;
            if !covers(target, idx.iter().map(|&i| &som[i])) {
                return false;
            }
            let qualifying = idx.iter().filter(|&&i| passes[i]).map(|&i| &som[i]);
            if covers(target, qualifying) {
                false
            } else {
                witness = Some(idx.iter().map(|&i| som[i].clone()).collect());
                true
            }
        });
        if stopped {
            break;
        }
    }
    Ok(CompactnessVerdict {
        variant,
        holds: witness.is_none(),
        witness,
        certificate: Certificate {
            som_size: som.len(),
            max_cover_size: max_k,
            covers_examined: examined,
            note: CERTIFICATE_NOTE,
        },
    })
}

/// Re-checks a failing verdict's witness from scratch: it must be a
/// semi-open cover with no qualifying subcover.
pub fn witness_revalidates(sf: &SemiFamily, variant: Variant, witness: &[MSet]) -> Result<bool> {
    if !is_semi_open_cover(sf, witness)? {
        return Ok(false);
    }
    let cover = Cover::new(sf.topology().ground().clone(), witness.iter().cloned())?;
    Ok(find_subcover(sf, &cover, variant.filter(), DEFAULT_SEARCH_BUDGET)?.is_none())
}

/// Finite intersection property. For a finite family every sub-collection's
/// meet contains the meet of the whole family, so the whole meet decides it.
pub fn has_fip(family: &[MSet]) -> bool {
    intersect_all(family).is_none_or(|m| !m.is_empty())
}

/// Both sides of a compactness/FIP biconditional, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FipReport {
    pub theorem: &'static str,
    /// The space is semi compact.
    pub left: bool,
    /// Every FIP collection in the swept family has non-empty total meet.
    pub right: bool,
    pub agree: bool,
    pub collections_checked: u64,
    pub violating_collection: Option<String>,
}

/// Depth-first walk over non-empty sub-collections of `family`, passing each
/// collection's FIP status and mapped meet to `check`. Stops at the first
/// collection for which `check` returns false and returns it.
fn sweep_collections(
    family: &[MSet],
    image: impl Fn(&MSet) -> MSet,
    checked: &mut u64,
    check: impl Fn(bool, &MSet) -> bool,
) -> Option<Vec<MSet>> {
    let images: Vec<MSet> = family.iter().map(&image).collect();
    let mut chosen = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn walk(
        start: usize,
        family: &[MSet],
        images: &[MSet],
        meet: Option<&MSet>,
        image_meet: Option<&MSet>,
        chosen: &mut Vec<usize>,
        checked: &mut u64,
        check: &dyn Fn(bool, &MSet) -> bool,
    ) -> bool {
        for i in start..family.len() {
            let m = meet.map_or_else(|| family[i].clone(), |m| m.intersect(&family[i]));
            let im = image_meet.map_or_else(|| images[i].clone(), |m| m.intersect(&images[i]));
            chosen.push(i);
            *checked += 1;
            // FIP of the chosen collection: its smallest sub-collection meet is `m`.
            if !check(!m.is_empty(), &im) {
                return true;
            }
            if walk(i + 1, family, images, Some(&m), Some(&im), chosen, checked, check) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if walk(0, family, &images, None, None, &mut chosen, checked, &check) {
        Some(chosen.into_iter().map(|i| family[i].clone()).collect())
    } else {
        None
    }
}

/// Semi compactness against "every FIP collection of SCM-sets has non-empty
/// intersection".
pub fn check_fip_scm(sf: &SemiFamily) -> Result<FipReport> {
    let scm = sf.scm();
    if scm.len() > FIP_SCM_FAMILY_CAP {
        return Err(Error::Budget {
            what: "SCM sub-collections",
            needed: 1u128 << scm.len().min(127),
            budget: 1u128 << FIP_SCM_FAMILY_CAP,
        });
    }
    let left = decide_compactness(sf, Variant::Semi, DEFAULT_SEARCH_BUDGET)?.holds;
    let mut checked = 0;
    let violating = sweep_collections(scm, MSet::clone, &mut checked, |fip, meet| {
        !fip || !meet.is_empty()
    });
    Ok(fip_report("T4.11", left, violating, checked))
}

/// Semi compactness against "every FIP collection of M-sets has non-empty
/// intersection of semi closures", swept over `P(M)`.
pub fn check_fip_scl(sf: &SemiFamily) -> Result<FipReport> {
    let t = sf.topology();
    let power = crate::mset::enumerate_power(
        t.ground(),
        crate::mset::PowerKind::All,
        FIP_POWER_FAMILY_CAP as u64,
    )?;
    let left = decide_compactness(sf, Variant::Semi, DEFAULT_SEARCH_BUDGET)?.holds;
    let mut checked = 0;
    let violating = sweep_collections(&power, |n| sf.scl(n), &mut checked, |fip, scl_meet| {
        !fip || !scl_meet.is_empty()
    });
    Ok(fip_report("T4.12", left, violating, checked))
}

fn fip_report(theorem: &'static str, left: bool, violating: Option<Vec<MSet>>, checked: u64) -> FipReport {
    let right = violating.is_none();
    FipReport {
        theorem,
        left,
        right,
        agree: left == right,
        collections_checked: checked,
        violating_collection: violating.map(|v| family_text(&v)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceReport {
    pub a: String,
    pub n: String,
    pub compact_in_tau: bool,
    pub compact_in_subspace: bool,
    pub agree: bool,
}

/// Compares semi compactness of `a` in `τ` and in the subspace `τ_N`.
pub fn subspace_compact_equiv(t: &MTopology, n: &MSet, a: &MSet, budget: u64) -> Result<SubspaceReport> {
    if !(a.is_sub(n) && n.is_sub(t.ground())) {
        return Err(Error::ChainOfSubsets {
            a: a.to_text(),
            n: n.to_text(),
            m: t.ground().to_text(),
        });
    }
    let full = SemiFamily::new(t, crate::mset::DEFAULT_ENUMERATION_BUDGET)?;
    let sub = SemiFamily::new(&t.subspace(n)?, crate::mset::DEFAULT_ENUMERATION_BUDGET)?;
    subspace_compact_equiv_with(&full, &sub, a, budget)
}

pub(crate) fn subspace_compact_equiv_with(
    full: &SemiFamily,
    sub: &SemiFamily,
    a: &MSet,
    budget: u64,
) -> Result<SubspaceReport> {
    let in_tau = target_compactness(full.som(), a, full.topology().ground(), Variant::Semi, budget)?.holds;
    let in_sub = target_compactness(sub.som(), a, sub.topology().ground(), Variant::Semi, budget)?.holds;
    Ok(SubspaceReport {
        a: a.to_text(),
        n: sub.topology().ground().to_text(),
        compact_in_tau: in_tau,
        compact_in_subspace: in_sub,
        agree: in_tau == in_sub,
    })
}
