//! Reference implementations over plain count vectors. Nothing here calls
//! into the library's operators; callers convert with `counts()`.

#![allow(dead_code)]

pub type V = Vec<u32>;

pub fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn max(a: &[u32], b: &[u32]) -> V {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn min(a: &[u32], b: &[u32]) -> V {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

pub fn minus(a: &[u32], b: &[u32]) -> V {
    a.iter().zip(b).map(|(x, y)| if x > y { x - y } else { 0 }).collect()
}

/// Every count vector below `m`, in odometer order.
pub fn power(m: &[u32]) -> Vec<V> {
    let mut out = vec![vec![]];
    for &c in m {
        out = out
            .into_iter()
            .flat_map(|p| (0..=c).map(move |k| [p.clone(), vec![k]].concat()))
            .collect();
    }
    out
}

pub struct Space {
    pub m: V,
    pub open: Vec<V>,
}

impl Space {
    pub fn new(m: &[u32], open: Vec<V>) -> Self {
        Space { m: m.to_vec(), open }
    }

    pub fn closed(&self) -> Vec<V> {
        self.open.iter().map(|o| minus(&self.m, o)).collect()
    }

    pub fn int(&self, a: &[u32]) -> V {
        self.open
            .iter()
            .filter(|o| le(o, a))
            .fold(vec![0; a.len()], |acc, o| max(&acc, o))
    }

    pub fn cl(&self, a: &[u32]) -> V {
        self.closed()
            .iter()
            .filter(|p| le(a, p))
            .fold(self.m.clone(), |acc, p| min(&acc, p))
    }

    /// Sandwich definition: an open `O` with `O ≤ S ≤ cl(O)`.
    pub fn is_som(&self, s: &[u32]) -> bool {
        self.open.iter().any(|o| le(o, s) && le(s, &self.cl(o)))
    }

    pub fn som(&self) -> Vec<V> {
        power(&self.m).into_iter().filter(|s| self.is_som(s)).collect()
    }
}

/// The subcover restriction of each compactness variant.
#[derive(Clone, Copy)]
pub enum Kind {
    Any,
    Whole,
    PartialWhole,
    Full,
}

pub fn passes(kind: Kind, s: &[u32], m: &[u32]) -> bool {
    let supp: Vec<usize> = (0..s.len()).filter(|&i| s[i] > 0).collect();
    match kind {
        Kind::Any => true,
        Kind::Whole => supp.iter().all(|&i| s[i] == m[i]),
        Kind::PartialWhole => supp.iter().any(|&i| s[i] == m[i]),
        Kind::Full => (0..s.len()).all(|i| (s[i] > 0) == (m[i] > 0)),
    }
}

pub fn covers(family: &[&V], target: &[u32]) -> bool {
    let top = family.iter().fold(vec![0; target.len()], |acc, s| max(&acc, s));
    le(target, &top)
}

/// A witness for failure of a compactness variant: a cover of `M` by
/// semi-open sets none of whose sub-collections of qualifying members
/// covers `M`. Checked over every subset of the witness.
pub fn is_failing_witness(space: &Space, kind: Kind, witness: &[V]) -> bool {
    if !witness.iter().all(|s| le(s, &space.m) && space.is_som(s)) {
        return false;
    }
    let all: Vec<&V> = witness.iter().collect();
    if !covers(&all, &space.m) {
        return false;
    }
    let n = witness.len();
    assert!(n < 20);
    (0u32..(1 << n)).all(|mask| {
        let sub: Vec<&V> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &witness[i])
            .collect();
        !(sub.iter().all(|s| passes(kind, s, &space.m)) && covers(&sub, &space.m))
    })
}

/// Whether every semi-open cover has a qualifying subcover, by trying every
/// subfamily of `som` as a cover.
pub fn is_compact(space: &Space, kind: Kind) -> bool {
    let som = space.som();
    let n = som.len();
    assert!(n <= 16);
    (0u32..(1 << n)).all(|mask| {
        let fam: Vec<&V> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &som[i]).collect();
        if !covers(&fam, &space.m) {
            return true;
        }
        let ok: Vec<&V> = fam.iter().copied().filter(|s| passes(kind, s, &space.m)).collect();
        covers(&ok, &space.m)
    })
}
