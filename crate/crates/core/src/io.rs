//! Topology JSON files.
//!
//! ```json
//! {"domain": ["a", "b"], "w": 2, "M": {"a": 2, "b": 1}, "tau": [{}, {"a": 2, "b": 1}]}
//! ```
//!
//! Absent symbols have count 0 and the empty M-set is `{}`. A file may carry
//! a `basis` list instead of (or besides) `tau`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::mset::{MSet, MSpace};
use crate::topology::{validate_topology, MTopology, ValidationReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub domain: Vec<String>,
    pub w: u32,
    #[serde(rename = "M")]
    pub ground: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Value>>,
}

/// A parsed file with every M-set normalized to a total count function.
/// Families are kept in file order, duplicates included.
#[derive(Debug, Clone)]
pub struct LoadedFile {
    pub space: Arc<MSpace>,
    pub ground: MSet,
    pub tau: Option<Vec<MSet>>,
    pub basis: Option<Vec<MSet>>,
}

impl LoadedFile {
    /// Validates `tau` against the axioms.
    pub fn validate(&self) -> Result<ValidationReport> {
        let tau = self
            .tau
            .as_ref()
            .ok_or_else(|| Error::MalformedFamily("file has no `tau` list".into()))?;
        validate_topology(&self.ground, tau)
    }

    /// The topology, failing on the first violated axiom.
    pub fn topology(&self) -> Result<MTopology> {
        let report = self.validate()?;
        match report.topology {
            Some(t) => Ok(t),
            None => Err(Error::InvalidTopology(report.violations[0].to_string())),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_topology_file(text: &str) -> Result<LoadedFile> {
    let file: TopologyFile = serde_json::from_str(text).map_err(json_error)?;
    file.normalize()
}

pub fn read_topology_file(path: impl AsRef<Path>) -> Result<LoadedFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_topology_file(&text)
}

impl TopologyFile {
    pub fn normalize(&self) -> Result<LoadedFile> {
        let space = MSpace::new(self.domain.iter().cloned(), self.w)?;
        let ground = MSet::from_json(&space, &self.ground)?;
        let family = |list: &Option<Vec<Value>>| -> Result<Option<Vec<MSet>>> {
            list.as_ref()
                .map(|v| v.iter().map(|s| MSet::from_json(&space, s)).collect())
                .transpose()
        };
        Ok(LoadedFile {
            tau: family(&self.tau)?,
            basis: family(&self.basis)?,
            ground,
            space,
        })
    }

    pub fn from_topology(t: &MTopology) -> Self {
        let space = t.ground().space();
        TopologyFile {
            domain: space.domain().to_vec(),
            w: space.w(),
            ground: t.ground().to_json(),
            tau: Some(t.open_sets().iter().map(MSet::to_json).collect()),
            basis: None,
        }
    }
}

/// Compact canonical JSON of a topology.
pub fn topology_to_json_string(t: &MTopology) -> String {
    serde_json::to_string(&TopologyFile::from_topology(t)).expect("topology serializes")
}

pub fn topology_to_pretty_json(t: &MTopology) -> String {
    serde_json::to_string_pretty(&TopologyFile::from_topology(t)).expect("topology serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_3_3;

    #[test]
    fn round_trip() {
        let t = example_3_3();
        let text = topology_to_json_string(&t);
        assert_eq!(
            text,
            r#"{"domain":["a","b","c"],"w":5,"M":{"a":5,"b":2,"c":3},"tau":[{},{"c":3},{"a":1,"b":2},{"a":1,"b":2,"c":3},{"a":5,"b":2},{"a":5,"b":2,"c":3}]}"#
        );
        let back = parse_topology_file(&text).unwrap().topology().unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_topology_file("{\n  \"domain\": [\"a\"],\n  \"w\": }").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn semantic_errors() {
        let over = r#"{"domain":["a"],"w":1,"M":{"a":2},"tau":[]}"#;
        assert!(matches!(parse_topology_file(over), Err(Error::CountOutOfRange { .. })));
        let unknown = r#"{"domain":["a"],"w":1,"M":{"b":1},"tau":[]}"#;
        assert!(matches!(parse_topology_file(unknown), Err(Error::UnknownSymbol(_))));
        let no_tau = r#"{"domain":["a"],"w":1,"M":{"a":1}}"#;
        assert!(parse_topology_file(no_tau).unwrap().validate().is_err());
    }

    #[test]
    fn duplicates_survive_loading_and_are_reported() {
        let text = r#"{"domain":["a"],"w":1,"M":{"a":1},"tau":[{},{"a":1},{"a":1,"b":0}]}"#;
        let err = parse_topology_file(text);
        assert!(matches!(err, Err(Error::UnknownSymbol(_))));
        let text = r#"{"domain":["a"],"w":1,"M":{"a":1},"tau":[{},{"a":1},{"a":1}]}"#;
        let report = parse_topology_file(text).unwrap().validate().unwrap();
        assert_eq!(report.duplicates, 1);
        assert!(report.is_valid());
    }
}
