//! Built-in reference spaces.

use crate::mset::{MSet, MSpace};
use crate::topology::MTopology;

/// `X = {a, b, c}`, `w = 5`, `M = {5/a, 2/b, 3/c}` with the six-member
/// topology used throughout the test suites.
pub fn example_3_3() -> MTopology {
    let space = MSpace::new(["a", "b", "c"], 5).expect("valid space");
    let p = |s: &str| MSet::parse(&space, s).expect("valid literal");
    let ground = p("{5/a, 2/b, 3/c}");
    let tau = [
        "{5/a, 2/b, 3/c}",
        "{}",
        "{5/a, 2/b}",
        "{3/c}",
        "{1/a, 2/b}",
        "{1/a, 2/b, 3/c}",
    ]
    .iter()
    .map(|s| p(s))
    .collect();
    MTopology::new(ground, tau).expect("example topology is valid")
}
