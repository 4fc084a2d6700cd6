//! Bounded multisets over a finite, ordered domain.
//!
//! An [`MSet`] is a total count function from the domain of its [`MSpace`]
//! into `0..=w`. Equality and ordering are pointwise on the count vector;
//! the canonical order is lexicographic in domain order, which is also the
//! order every family in this crate is kept in.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Default cap on the number of members any single enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// The M-space `[X]^w`: a finite ordered domain and a multiplicity bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MSpace {
    domain: Vec<String>,
    w: u32,
}

impl MSpace {
    pub fn new<S: Into<String>>(domain: impl IntoIterator<Item = S>, w: u32) -> Result<Arc<Self>> {
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        if domain.is_empty() {
            return Err(Error::InvalidSpace("domain is empty".into()));
        }
        if w == 0 {
            return Err(Error::InvalidSpace("multiplicity bound w must be at least 1".into()));
        }
        for (i, sym) in domain.iter().enumerate() {
            if !is_symbol(sym) {
                return Err(Error::InvalidSpace(format!("`{sym}` is not a valid symbol")));
            }
            if domain[..i].contains(sym) {
                return Err(Error::InvalidSpace(format!("duplicate symbol `{sym}`")));
            }
        }
        Ok(Arc::new(MSpace { domain, w }))
    }

    /// Space over the first `size` symbols `a, b, c, ...`.
    pub fn standard(size: usize, w: u32) -> Result<Arc<Self>> {
        Self::new((0..size).map(standard_symbol), w)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.domain.iter().position(|s| s == symbol)
    }
}

fn standard_symbol(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("x{i}")
    }
}

fn is_symbol(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

/// A multiset drawn from an [`MSpace`], stored as its total count function.
#[derive(Clone)]
pub struct MSet {
    space: Arc<MSpace>,
    counts: Box<[u32]>,
}

impl MSet {
    pub fn from_counts(space: &Arc<MSpace>, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != space.len() {
            return Err(Error::InvalidSpace(format!(
                "expected {} counts, got {}",
                space.len(),
                counts.len()
            )));
        }
        for (sym, &c) in space.domain.iter().zip(&counts) {
            if c > space.w {
                return Err(Error::CountOutOfRange {
                    symbol: sym.clone(),
                    count: c as u64,
                    w: space.w,
                });
            }
        }
        Ok(Self::raw(space, counts.into_boxed_slice()))
    }

    /// Builds from `(symbol, count)` pairs; symbols not listed get count 0.
    pub fn from_pairs<'a>(
        space: &Arc<MSpace>,
        pairs: impl IntoIterator<Item = (&'a str, u32)>,
    ) -> Result<Self> {
        let mut counts = vec![0; space.len()];
        for (sym, c) in pairs {
            let i = space
                .index_of(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
            counts[i] = c;
        }
        Self::from_counts(space, counts)
    }

    pub fn empty(space: &Arc<MSpace>) -> Self {
        Self::raw(space, vec![0; space.len()].into_boxed_slice())
    }

    /// The M-set with every element at multiplicity `w`.
    pub fn top(space: &Arc<MSpace>) -> Self {
        Self::raw(space, vec![space.w; space.len()].into_boxed_slice())
    }

    pub(crate) fn raw(space: &Arc<MSpace>, counts: Box<[u32]>) -> Self {
        MSet {
            space: Arc::clone(space),
            counts,
        }
    }

    pub fn space(&self) -> &Arc<MSpace> {
        &self.space
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, symbol: &str) -> Option<u32> {
        self.space.index_of(symbol).map(|i| self.counts[i])
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Indices of the support (root set).
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    pub fn support_len(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn same_space(&self, other: &MSet) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    fn check_space(&self, other: &MSet) -> Result<()> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn zip_with(&self, other: &MSet, f: impl Fn(u32, u32) -> u32) -> MSet {
        assert!(self.same_space(other), "M-sets belong to different M-spaces");
        let counts = self
            .counts
            .iter()
            .zip(other.counts.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        MSet::raw(&self.space, counts)
    }

    /// Pointwise max. Panics if the spaces differ; see [`combine`] for the
    /// checked form.
    pub fn union(&self, other: &MSet) -> MSet {
        self.zip_with(other, u32::max)
    }

    /// Pointwise min.
    pub fn intersect(&self, other: &MSet) -> MSet {
        self.zip_with(other, u32::min)
    }

    /// Saturating addition `min(w, a + b)`.
    pub fn add(&self, other: &MSet) -> MSet {
        let w = self.space.w;
        self.zip_with(other, |a, b| a.saturating_add(b).min(w))
    }

    /// Truncated subtraction `max(a - b, 0)`.
    pub fn subtract(&self, other: &MSet) -> MSet {
        self.zip_with(other, u32::saturating_sub)
    }

    /// `self ⊆ other`, pointwise. False across spaces.
    pub fn is_sub(&self, other: &MSet) -> bool {
        self.same_space(other) && self.counts.iter().zip(other.counts.iter()).all(|(a, b)| a <= b)
    }

    /// Canonical text form, e.g. `{5/a, 2/b}`; the empty M-set is `{}`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(space: &Arc<MSpace>, text: &str) -> Result<Self> {
        parse_text(space, text)
    }

    /// JSON form: an object mapping symbol to count, zero counts omitted.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for i in self.support() {
            map.insert(self.space.domain[i].clone(), Value::from(self.counts[i]));
        }
        Value::Object(map)
    }

    pub fn from_json(space: &Arc<MSpace>, value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse {
            line: 0,
            column: 0,
            message: "an M-set must be a JSON object mapping symbol to count".into(),
        })?;
        let mut counts = vec![0u32; space.len()];
        for (sym, v) in obj {
            let i = space
                .index_of(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.clone()))?;
            let c = v.as_u64().ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("count for `{sym}` must be a non-negative integer"),
            })?;
            if c > space.w as u64 {
                return Err(Error::CountOutOfRange {
                    symbol: sym.clone(),
                    count: c,
                    w: space.w,
                });
            }
            counts[i] = c as u32;
        }
        Ok(MSet::raw(space, counts.into_boxed_slice()))
    }
}

impl PartialEq for MSet {
    fn eq(&self, other: &Self) -> bool {
        self.counts == other.counts && self.same_space(other)
    }
}

impl Eq for MSet {}

impl Hash for MSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.counts.hash(state);
    }
}

impl PartialOrd for MSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.counts.cmp(&other.counts).then_with(|| {
            if Arc::ptr_eq(&self.space, &other.space) {
                Ordering::Equal
            } else {
                (&self.space.domain, self.space.w).cmp(&(&other.space.domain, other.space.w))
            }
        })
    }
}

impl fmt::Display for MSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for i in self.support() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{}/{}", self.counts[i], self.space.domain[i])?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for MSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn parse_text(space: &Arc<MSpace>, text: &str) -> Result<MSet> {
    let trimmed = text.trim();
    if trimmed == "φ" || trimmed == "∅" {
        return Ok(MSet::empty(space));
    }
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut pos = 0;
    let col = |pos: usize| pos + 1;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].1.is_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if chars.get(pos).map(|c| c.1) != Some('{') {
        return Err(parse_err(col(pos), "expected `{`"));
    }
    pos += 1;
    let mut counts = vec![0u32; space.len()];
    let mut seen = vec![false; space.len()];
    skip_ws(&mut pos);
    if chars.get(pos).map(|c| c.1) == Some('}') {
        pos += 1;
    } else {
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < chars.len() && chars[pos].1.is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(parse_err(col(pos), "expected a count"));
            }
            let digits: String = chars[start..pos].iter().map(|c| c.1).collect();
            let count: u64 = digits
                .parse()
                .map_err(|_| parse_err(start + 1, "count does not fit in an integer"))?;
            skip_ws(&mut pos);
            if chars.get(pos).map(|c| c.1) != Some('/') {
                return Err(parse_err(col(pos), "expected `/`"));
            }
            pos += 1;
            skip_ws(&mut pos);
            let sym_start = pos;
            while pos < chars.len() && (chars[pos].1.is_alphanumeric() || chars[pos].1 == '_') {
                pos += 1;
            }
            if sym_start == pos {
                return Err(parse_err(col(pos), "expected a symbol"));
            }
            let sym: String = chars[sym_start..pos].iter().map(|c| c.1).collect();
            let i = space
                .index_of(&sym)
                .ok_or_else(|| parse_err(sym_start + 1, format!("unknown symbol `{sym}`")))?;
            if seen[i] {
                return Err(parse_err(sym_start + 1, format!("symbol `{sym}` listed twice")));
            }
            if count > space.w as u64 {
                return Err(Error::CountOutOfRange {
                    symbol: sym,
                    count,
                    w: space.w,
                });
            }
            seen[i] = true;
            counts[i] = count as u32;
            skip_ws(&mut pos);
            match chars.get(pos).map(|c| c.1) {
                Some(',') => pos += 1,
                Some('}') => {
                    pos += 1;
                    break;
                }
                _ => return Err(parse_err(col(pos), "expected `,` or `}`")),
            }
        }
    }
    skip_ws(&mut pos);
    if pos != chars.len() {
        return Err(parse_err(col(pos), "trailing characters after `}`"));
    }
    Ok(MSet::raw(space, counts.into_boxed_slice()))
}

/// The four binary M-set operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CombineOp {
    Union,
    Intersect,
    Add,
    Subtract,
}

/// Checked binary operation; fails with [`Error::SpaceMismatch`] when the
/// operands come from different M-spaces.
pub fn combine(op: CombineOp, a: &MSet, b: &MSet) -> Result<MSet> {
    a.check_space(b)?;
    Ok(match op {
        CombineOp::Union => a.union(b),
        CombineOp::Intersect => a.intersect(b),
        CombineOp::Add => a.add(b),
        CombineOp::Subtract => a.subtract(b),
    })
}

/// Which sub-M-set relations hold between `N` and `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SubRelation {
    pub is_sub: bool,
    pub is_whole: bool,
    pub is_partial_whole: bool,
    pub is_full: bool,
}

/// Classifies `n` against `m`. Quantifiers range over the support of `n`;
/// "full" means equal supports.
pub fn classify_sub(n: &MSet, m: &MSet) -> Result<SubRelation> {
    n.check_space(m)?;
    Ok(classify_unchecked(n, m))
}

pub(crate) fn classify_unchecked(n: &MSet, m: &MSet) -> SubRelation {
    let is_sub = n.is_sub(m);
    if !is_sub {
        return SubRelation {
            is_sub,
            is_whole: false,
            is_partial_whole: false,
            is_full: false,
        };
    }
    let mut all_equal = true;
    let mut some_equal = false;
    let mut same_support = true;
    for (&cn, &cm) in n.counts.iter().zip(m.counts.iter()) {
        if cn > 0 {
            if cn == cm {
                some_equal = true;
            } else {
                all_equal = false;
            }
        }
        if (cn > 0) != (cm > 0) {
            same_support = false;
        }
    }
    SubRelation {
        is_sub,
        is_whole: all_equal,
        is_partial_whole: some_equal,
        is_full: same_support,
    }
}

/// `M ⊖ N` for `N ⊆ M`.
pub fn complement_in(n: &MSet, m: &MSet) -> Result<MSet> {
    n.check_space(m)?;
    if !n.is_sub(m) {
        return Err(Error::NotSubset {
            sub: n.to_text(),
            sup: m.to_text(),
        });
    }
    Ok(m.subtract(n))
}

/// Which power family to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    All,
    Whole,
    Full,
}

/// Number of members [`enumerate_power`] would produce.
pub fn power_cardinality(m: &MSet, kind: PowerKind) -> u128 {
    let support = m.support().map(|i| m.counts[i] as u128);
    match kind {
        PowerKind::All => support.map(|c| c + 1).product(),
        PowerKind::Whole => 1u128 << m.support_len().min(127),
        PowerKind::Full => support.product(),
    }
}

/// Enumerates `P(M)`, `PW(M)` or `PF(M)` in canonical order.
pub fn enumerate_power(m: &MSet, kind: PowerKind, budget: u64) -> Result<Vec<MSet>> {
    let needed = power_cardinality(m, kind);
    if needed > budget as u128 {
        return Err(Error::Budget {
            what: "power family",
            needed,
            budget: budget as u128,
        });
    }
    let (lo, hi): (Vec<u32>, Vec<u32>) = match kind {
        PowerKind::All => (vec![0; m.counts.len()], m.counts.to_vec()),
        PowerKind::Full => (
            m.counts.iter().map(|&c| c.min(1)).collect(),
            m.counts.to_vec(),
        ),
        PowerKind::Whole => {
            let support: Vec<usize> = m.support().collect();
            let mut out = Vec::with_capacity(needed as usize);
            for mask in 0u64..(1u64 << support.len()) {
                let mut counts = vec![0u32; m.counts.len()];
                for (bit, &i) in support.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        counts[i] = m.counts[i];
                    }
                }
                out.push(MSet::raw(&m.space, counts.into_boxed_slice()));
            }
            out.sort();
            return Ok(out);
        }
    };
    Ok(interval(&m.space, &lo, &hi))
}

/// Every M-set between `lo` and `hi` pointwise, in canonical order.
pub(crate) fn interval(space: &Arc<MSpace>, lo: &[u32], hi: &[u32]) -> Vec<MSet> {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(MSet::raw(space, cur.clone().into_boxed_slice()));
        // odometer, last coordinate fastest, so output is lexicographic
        let mut i = cur.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                cur[i + 1..].copy_from_slice(&lo[i + 1..]);
                break;
            }
        }
    }
}

/// Sorts and deduplicates a family into canonical form.
pub fn canonical_family(family: impl IntoIterator<Item = MSet>) -> Vec<MSet> {
    let mut v: Vec<MSet> = family.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Pointwise max over a family; `None` for an empty family.
pub fn union_all<'a>(family: impl IntoIterator<Item = &'a MSet>) -> Option<MSet> {
    family.into_iter().fold(None, |acc, s| match acc {
        None => Some(s.clone()),
        Some(a) => Some(a.union(s)),
    })
}

/// Pointwise min over a family; `None` for an empty family.
pub fn intersect_all<'a>(family: impl IntoIterator<Item = &'a MSet>) -> Option<MSet> {
    family.into_iter().fold(None, |acc, s| match acc {
        None => Some(s.clone()),
        Some(a) => Some(a.intersect(s)),
    })
}

/// Canonical text of a family: `[{1/a}, {2/b}]`.
pub fn family_text<'a>(family: impl IntoIterator<Item = &'a MSet>) -> String {
    let parts: Vec<String> = family.into_iter().map(MSet::to_text).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc(w: u32) -> Arc<MSpace> {
        MSpace::new(["a", "b", "c"], w).unwrap()
    }

    fn set(space: &Arc<MSpace>, s: &str) -> MSet {
        MSet::parse(space, s).unwrap()
    }

    #[test]
    fn space_rejects_bad_input() {
        assert!(MSpace::new(Vec::<String>::new(), 1).is_err());
        assert!(MSpace::new(["a"], 0).is_err());
        assert!(MSpace::new(["a", "a"], 1).is_err());
        assert!(MSpace::new(["a b"], 1).is_err());
    }

    #[test]
    fn combine_examples() {
        let x = abc(5);
        let u = combine(CombineOp::Union, &set(&x, "{3/a, 5/b}"), &set(&x, "{1/a, 2/c}")).unwrap();
        assert_eq!(u.to_text(), "{3/a, 5/b, 2/c}");
        let s = combine(CombineOp::Add, &set(&x, "{3/a}"), &set(&x, "{4/a}")).unwrap();
        assert_eq!(s.to_text(), "{5/a}");
        let d = combine(
            CombineOp::Subtract,
            &set(&x, "{5/a, 2/b, 3/c}"),
            &set(&x, "{5/a, 2/b}"),
        )
        .unwrap();
        assert_eq!(d.to_text(), "{3/c}");
        let i = combine(CombineOp::Intersect, &set(&x, "{3/a, 5/b}"), &set(&x, "{1/a, 2/c}")).unwrap();
        assert_eq!(i.to_text(), "{1/a}");
    }

    #[test]
    fn combine_rejects_mixed_spaces() {
        let x = abc(5);
        let y = abc(4);
        let err = combine(CombineOp::Union, &MSet::empty(&x), &MSet::empty(&y)).unwrap_err();
        assert_eq!(err, Error::SpaceMismatch);
        assert_eq!(classify_sub(&MSet::empty(&x), &MSet::empty(&y)), Err(Error::SpaceMismatch));
    }

    #[test]
    fn classify_examples() {
        let x = abc(5);
        let m = set(&x, "{5/a, 2/b, 3/c}");
        let r = classify_sub(&set(&x, "{5/a, 2/b}"), &m).unwrap();
        assert_eq!(
            r,
            SubRelation { is_sub: true, is_whole: true, is_partial_whole: true, is_full: false }
        );
        let r = classify_sub(&MSet::empty(&x), &m).unwrap();
        assert_eq!(
            r,
            SubRelation { is_sub: true, is_whole: true, is_partial_whole: false, is_full: false }
        );
        let r = classify_sub(&set(&x, "{1/a, 2/b, 3/c}"), &m).unwrap();
        assert_eq!(
            r,
            SubRelation { is_sub: true, is_whole: false, is_partial_whole: true, is_full: true }
        );
        let e = MSet::empty(&x);
        assert!(classify_sub(&e, &e).unwrap().is_full);
        assert!(!classify_sub(&m, &set(&x, "{1/a}")).unwrap().is_sub);
    }

    #[test]
    fn complement_examples() {
        let x = abc(5);
        let m = set(&x, "{5/a, 2/b, 3/c}");
        assert_eq!(complement_in(&set(&x, "{1/a, 2/b}"), &m).unwrap().to_text(), "{4/a, 3/c}");
        assert!(complement_in(&m, &m).unwrap().is_empty());
        assert_eq!(complement_in(&MSet::empty(&x), &m).unwrap(), m);
        assert!(matches!(
            complement_in(&set(&x, "{5/a, 3/b}"), &m),
            Err(Error::NotSubset { .. })
        ));
    }

    #[test]
    fn power_examples() {
        let x = MSpace::new(["a", "b"], 2).unwrap();
        let all = enumerate_power(&set(&x, "{1/a, 1/b}"), PowerKind::All, 100).unwrap();
        let texts: Vec<String> = all.iter().map(MSet::to_text).collect();
        assert_eq!(texts, ["{}", "{1/b}", "{1/a}", "{1/a, 1/b}"]);

        let full = enumerate_power(&set(&x, "{2/a, 1/b}"), PowerKind::Full, 100).unwrap();
        let texts: Vec<String> = full.iter().map(MSet::to_text).collect();
        assert_eq!(texts, ["{1/a, 1/b}", "{2/a, 1/b}"]);

        let y = abc(5);
        let whole = enumerate_power(&set(&y, "{5/a, 2/b, 3/c}"), PowerKind::Whole, 100).unwrap();
        assert_eq!(whole.len(), 8);
        assert!(whole.contains(&set(&y, "{5/a, 3/c}")));
    }

    #[test]
    fn power_budget() {
        let x = abc(5);
        let err = enumerate_power(&set(&x, "{5/a, 5/b, 5/c}"), PowerKind::All, 100).unwrap_err();
        assert_eq!(err, Error::Budget { what: "power family", needed: 216, budget: 100 });
    }

    #[test]
    fn power_of_empty_is_singleton() {
        let x = abc(2);
        let e = MSet::empty(&x);
        assert_eq!(enumerate_power(&e, PowerKind::All, 10).unwrap(), vec![e.clone()]);
        assert_eq!(enumerate_power(&e, PowerKind::Whole, 10).unwrap(), vec![e.clone()]);
        assert_eq!(enumerate_power(&e, PowerKind::Full, 10).unwrap(), vec![e]);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let x = abc(5);
        assert_eq!(set(&x, "  { 2/b ,5/a }").to_text(), "{5/a, 2/b}");
        assert_eq!(set(&x, "{0/a}").to_text(), "{}");
        assert!(set(&x, "φ").is_empty());
        match MSet::parse(&x, "{5/a, 2/q}") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(MSet::parse(&x, "{6/a}"), Err(Error::CountOutOfRange { .. })));
        assert!(matches!(MSet::parse(&x, "{1/a, 1/a}"), Err(Error::Parse { .. })));
        assert!(matches!(MSet::parse(&x, "{1/a"), Err(Error::Parse { .. })));
        assert!(matches!(MSet::parse(&x, "{1/a} x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_normalizes_missing_symbols() {
        let x = abc(5);
        let v: Value = serde_json::from_str(r#"{"c": 3, "a": 5, "b": 0}"#).unwrap();
        let s = MSet::from_json(&x, &v).unwrap();
        assert_eq!(s.counts(), &[5, 0, 3]);
        assert_eq!(serde_json::to_string(&s.to_json()).unwrap(), r#"{"a":5,"c":3}"#);
        let bad: Value = serde_json::from_str(r#"{"d": 1}"#).unwrap();
        assert!(matches!(MSet::from_json(&x, &bad), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let x = abc(5);
        let fam = canonical_family(vec![
            set(&x, "{5/a, 2/b}"),
            set(&x, "{3/c}"),
            set(&x, "{}"),
            set(&x, "{3/c}"),
            set(&x, "{1/a, 2/b, 3/c}"),
        ]);
        assert_eq!(family_text(&fam), "[{}, {3/c}, {1/a, 2/b, 3/c}, {5/a, 2/b}]");
    }
}
