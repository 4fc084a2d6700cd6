use std::path::PathBuf;

use msemi_core::harness::{recheck, Counterexample};
use msemi_core::io::{parse_topology_file, read_topology_file, topology_to_json_string};
use msemi_core::{fixtures, topology_from_basis, validate_basis};

fn path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect()
}

#[test]
fn example_file_matches_builtin_fixture() {
    let t = read_topology_file(path("example3_3.json")).unwrap().topology().unwrap();
    assert_eq!(t, fixtures::example_3_3());
    let again = parse_topology_file(&topology_to_json_string(&t)).unwrap().topology().unwrap();
    assert_eq!(again, t);
}

#[test]
fn broken_file_fails_validation() {
    let loaded = read_topology_file(path("broken.json")).unwrap();
    let report = loaded.validate().unwrap();
    assert!(!report.is_valid());
    assert_eq!(report.violations[0].to_string(), "empty M-set absent");
    assert!(loaded.topology().is_err());
}

#[test]
fn basis_file_generates_example() {
    let loaded = read_topology_file(path("basis3_3.json")).unwrap();
    let basis = loaded.basis.as_ref().unwrap();
    assert!(validate_basis(&loaded.ground, basis).unwrap().is_valid());
    assert_eq!(topology_from_basis(&loaded.ground, basis).unwrap(), fixtures::example_3_3());
}

#[test]
fn pinned_intersection_witness_replays() {
    let text = std::fs::read_to_string(path("remark3_7.json")).unwrap();
    let ce: Counterexample = serde_json::from_str(&text).unwrap();
    assert!(recheck(&ce).unwrap());
}
