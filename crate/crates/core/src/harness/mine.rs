//! Counterexample mining for the remarks that assert something can fail,
//! and replay of stored counterexamples.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::cover::{check_fip_scl, check_fip_scm, subspace_compact_equiv, DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::harness::claims::semi_conditions;
use crate::harness::corpus::{Corpus, CorpusInfo};
use crate::harness::report::{AgreementTable, Counterexample};
use crate::mset::{intersect_all, union_all, MSet, DEFAULT_ENUMERATION_BUDGET};
use crate::semi::SemiFamily;
use crate::topology::{is_topology_family, MTopology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Remark {
    /// Two semi-open sets whose intersection is not semi-open.
    SomIntersection,
    /// The semi-open family fails to be a topology; checked against the
    /// "closures of open sets are open" condition.
    SomNotTopology,
    /// A semi-open set that is not open.
    SomNotOpen,
}

impl Remark {
    pub const ALL: [Remark; 3] = [Remark::SomIntersection, Remark::SomNotTopology, Remark::SomNotOpen];

    pub fn id(self) -> &'static str {
        match self {
            Remark::SomIntersection => "3.7",
            Remark::SomNotTopology => "3.8",
            Remark::SomNotOpen => "3.13",
        }
    }

    fn recheck_name(self) -> &'static str {
        match self {
            Remark::SomIntersection => "remark-3.7",
            Remark::SomNotTopology => "remark-3.8",
            Remark::SomNotOpen => "remark-3.13",
        }
    }
}

impl fmt::Display for Remark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Remark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim_start_matches(['R', 'r']);
        Remark::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::UnknownRemark(s.to_string()))
    }
}

/// The two clauses of the semi-open-topology condition and the actual
/// outcome, for one corpus member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TopologyCell {
    pub member: usize,
    /// `cl(O)` is open for every open `O`.
    pub closures_open: bool,
    /// Disjoint open sets have disjoint closures.
    pub disjoint_closures: bool,
    /// `som` satisfies the M-topology axioms.
    pub som_is_topology: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MineReport {
    pub remark: String,
    pub corpus: CorpusInfo,
    pub searched: usize,
    pub skipped: usize,
    /// First witness in corpus order, if any.
    pub witness: Option<Counterexample>,
    /// For the topology remark: `left` = closures-of-opens condition,
    /// `right` = `som` is a topology.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<AgreementTable>,
    /// `left` = closures-of-opens clause, `right` = disjoint-closures clause.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause_table: Option<AgreementTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<TopologyCell>,
    /// Every member where the stated condition and the outcome disagree, or
    /// where the two clauses of the condition disagree.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub surprises: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl MineReport {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn without_timing(&self) -> Self {
        MineReport {
            elapsed_ms: None,
            ..self.clone()
        }
    }
}

enum Mined {
    Skipped,
    Witness(Option<Counterexample>),
    Cell(TopologyCell, Option<Counterexample>, Vec<Counterexample>),
}

pub fn mine(remark: Remark, corpus: &Corpus, exec: Exec) -> Result<MineReport> {
    let start = Instant::now();
    let indexed: Vec<(usize, &MTopology)> = corpus.members.iter().enumerate().collect();
    let results = exec.map(&indexed, |&(i, t)| mine_member(remark, i, t));
    let mut report = MineReport {
        remark: remark.id().into(),
        corpus: corpus.info.clone(),
        searched: 0,
        skipped: 0,
        witness: None,
        table: None,
        clause_table: None,
        cells: Vec::new(),
        surprises: Vec::new(),
        elapsed_ms: None,
    };
    let mut table = AgreementTable::default();
    let mut clauses = AgreementTable::default();
    for r in results {
        match r? {
            Mined::Skipped => report.skipped += 1,
            Mined::Witness(w) => {
                report.searched += 1;
                if report.witness.is_none() {
                    report.witness = w;
                }
            }
            Mined::Cell(cell, w, surprises) => {
                report.searched += 1;
                table.record(cell.closures_open, cell.som_is_topology);
                clauses.record(cell.closures_open, cell.disjoint_closures);
                report.cells.push(cell);
                report.surprises.extend(surprises);
                if report.witness.is_none() {
                    report.witness = w;
                }
            }
        }
    }
    if remark == Remark::SomNotTopology {
        report.table = Some(table);
        report.clause_table = Some(clauses);
    }
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

fn mine_member(remark: Remark, index: usize, t: &MTopology) -> Result<Mined> {
    let sf = match SemiFamily::new(t, DEFAULT_ENUMERATION_BUDGET) {
        Ok(sf) => sf,
        Err(e) if e.is_budget() => return Ok(Mined::Skipped),
        Err(e) => return Err(e),
    };
    let id = remark.id();
    let name = remark.recheck_name();
    Ok(match remark {
        Remark::SomIntersection => {
            let som = sf.som();
            let mut found = None;
            'outer: for (i, a) in som.iter().enumerate() {
                for b in &som[i + 1..] {
                    let meet = a.intersect(b);
                    if !sf.is_som(&meet) {
                        found = Some(Counterexample::new(
                            id,
                            t,
                            vec![vec![a.to_text()], vec![b.to_text()]],
                            name,
                            format!("intersection {meet} is not semi-open"),
                        ));
                        break 'outer;
                    }
                }
            }
            Mined::Witness(found)
        }
        Remark::SomNotOpen => Mined::Witness(sf.som().iter().find(|s| !t.is_open(s)).map(|s| {
            Counterexample::new(id, t, vec![vec![s.to_text()]], name, format!("{s} is semi-open but not open"))
        })),
        Remark::SomNotTopology => {
            let cell = topology_cell(index, &sf);
            let detail = format!(
                "closures of opens open: {}, disjoint opens have disjoint closures: {}, som is a topology: {}",
                cell.closures_open, cell.disjoint_closures, cell.som_is_topology
            );
            let witness = (!cell.som_is_topology)
                .then(|| Counterexample::new(id, t, Vec::new(), name, detail.clone()));
            let mut surprises = Vec::new();
            if cell.closures_open != cell.som_is_topology || cell.closures_open != cell.disjoint_closures {
                surprises.push(Counterexample::new(id, t, Vec::new(), name, detail));
            }
            Mined::Cell(cell, witness, surprises)
        }
    })
}

fn topology_cell(member: usize, sf: &SemiFamily) -> TopologyCell {
    let t = sf.topology();
    let open = t.open_sets();
    let closures_open = open.iter().all(|o| t.is_open(&t.cl(o)));
    let disjoint_closures = open.iter().enumerate().all(|(i, a)| {
        open[i + 1..]
            .iter()
            .all(|b| !a.intersect(b).is_empty() || t.cl(a).intersect(&t.cl(b)).is_empty())
    });
    TopologyCell {
        member,
        closures_open,
        disjoint_closures,
        som_is_topology: is_topology_family(t.ground(), sf.som()),
    }
}

/// Replays a stored counterexample from its fixture alone. Returns whether
/// the recorded violation (or remark witness) reproduces.
pub fn recheck(ce: &Counterexample) -> Result<bool> {
    let loaded = ce.fixture.normalize()?;
    let t = loaded.topology()?;
    let space = loaded.space.clone();
    let group = |i: usize| -> Result<Vec<MSet>> {
        ce.offending
            .get(i)
            .ok_or_else(|| Error::MalformedFamily(format!("counterexample lacks offending group {i}")))?
            .iter()
            .map(|s| MSet::parse(&space, s))
            .collect()
    };
    let single = |i: usize| -> Result<MSet> {
        group(i)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::MalformedFamily(format!("offending group {i} is empty")))
    };
    let sf = SemiFamily::new(&t, DEFAULT_ENUMERATION_BUDGET)?;
    let inside = |s: &MSet| s.is_sub(t.ground());
    Ok(match ce.recheck.as_str() {
        "som-union" => {
            let fam = group(0)?;
            fam.iter().all(|s| sf.is_som(s)) && union_all(&fam).is_some_and(|u| !sf.is_som(&u))
        }
        "scm-intersection" => {
            let fam = group(0)?;
            fam.iter().all(|s| sf.is_scm(s)) && intersect_all(&fam).is_some_and(|m| !sf.is_scm(&m))
        }
        "som-union-open" => {
            let (s, o) = (single(0)?, single(1)?);
            sf.is_som(&s) && t.is_open(&o) && !sf.is_som(&s.union(&o))
        }
        "som-sandwich" => {
            let (s, n) = (single(0)?, single(1)?);
            sf.is_som(&s) && s.is_sub(&n) && n.is_sub(&t.cl(&s)) && !sf.is_som(&n)
        }
        "scm-sandwich" => {
            let (s, r) = (single(0)?, single(1)?);
            sf.is_scm(&s) && t.int(&s).is_sub(&r) && r.is_sub(&s) && !sf.is_scm(&r)
        }
        "semi-equivalence" => {
            let s = single(0)?;
            let c = semi_conditions(&t, &s);
            inside(&s) && c.iter().any(|&x| x != c[0])
        }
        "fip-scm" => !check_fip_scm(&sf)?.agree,
        "fip-scl" => !check_fip_scl(&sf)?.agree,
        "subspace-compact" => {
            let (n, a) = (single(0)?, single(1)?);
            !subspace_compact_equiv(&t, &n, &a, DEFAULT_SEARCH_BUDGET)?.agree
        }
        "remark-3.7" => {
            let (a, b) = (single(0)?, single(1)?);
            sf.is_som(&a) && sf.is_som(&b) && !sf.is_som(&a.intersect(&b))
        }
        "remark-3.8" => {
            let cell = topology_cell(0, &sf);
            !cell.som_is_topology
                || cell.closures_open != cell.som_is_topology
                || cell.closures_open != cell.disjoint_closures
        }
        "remark-3.13" => {
            let s = single(0)?;
            sf.is_som(&s) && !t.is_open(&s)
        }
        other => return Err(Error::MalformedFamily(format!("unknown recheck `{other}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_3_3;
    use crate::harness::corpus::CorpusSpec;

    fn fixture_corpus() -> Corpus {
        CorpusSpec::fixture("example-3.3", example_3_3())
            .materialize(Exec::Sequential)
            .unwrap()
    }

    #[test]
    fn not_open_witness_on_example() {
        let r = mine(Remark::SomNotOpen, &fixture_corpus(), Exec::Sequential).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.offending, vec![vec!["{2/a, 2/b}".to_string()]]);
        assert!(recheck(&w).unwrap());
    }

    #[test]
    fn topology_cell_on_example() {
        let r = mine(Remark::SomNotTopology, &fixture_corpus(), Exec::Sequential).unwrap();
        assert_eq!(r.cells.len(), 1);
        let cell = r.cells[0];
        assert!(cell.closures_open && cell.disjoint_closures && cell.som_is_topology);
        assert!(!r.found());
        assert!(r.surprises.is_empty());
        assert_eq!(r.table.unwrap().both_true, 1);
    }

    #[test]
    fn remark_ids_parse() {
        assert_eq!("3.7".parse::<Remark>().unwrap(), Remark::SomIntersection);
        assert_eq!("R3.13".parse::<Remark>().unwrap(), Remark::SomNotOpen);
        assert!("4.1".parse::<Remark>().is_err());
    }

    #[test]
    fn tampered_counterexample_does_not_reproduce() {
        let r = mine(Remark::SomNotOpen, &fixture_corpus(), Exec::Sequential).unwrap();
        let mut w = r.witness.unwrap();
        w.offending = vec![vec!["{1/a, 2/b}".to_string()]];
        assert!(!recheck(&w).unwrap());
        w.recheck = "nonsense".into();
        assert!(recheck(&w).is_err());
    }
}
