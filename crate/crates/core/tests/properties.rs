mod common;

use std::sync::Arc;

use proptest::prelude::*;

use msemi_core::harness::{generate_trial, GenConfig};
use msemi_core::io::{parse_topology_file, topology_to_json_string};
use msemi_core::mset::{enumerate_power, power_cardinality};
use msemi_core::{complement_in, enumerate_semi, fixtures, MSet, MSpace, PowerKind};

fn space_and_sets(n: usize) -> impl Strategy<Value = (Arc<MSpace>, Vec<MSet>)> {
    (1..=4usize, 1..=6u32).prop_flat_map(move |(len, w)| {
        prop::collection::vec(prop::collection::vec(0..=w, len), n).prop_map(move |vs| {
            let space = MSpace::standard(len, w).unwrap();
            let sets = vs.into_iter().map(|c| MSet::from_counts(&space, c).unwrap()).collect();
            (space, sets)
        })
    })
}

proptest! {
    #[test]
    fn lattice_laws((_, s) in space_and_sets(3)) {
        let (a, b, c) = (&s[0], &s[1], &s[2]);
        prop_assert_eq!(a.union(b), b.union(a));
        prop_assert_eq!(a.intersect(b), b.intersect(a));
        prop_assert_eq!(a.union(&b.union(c)), a.union(b).union(c));
        prop_assert_eq!(a.intersect(&b.intersect(c)), a.intersect(b).intersect(c));
        prop_assert_eq!(&a.union(&a.intersect(b)), a);
        prop_assert_eq!(&a.intersect(&a.union(b)), a);
        prop_assert_eq!(a.intersect(&b.union(c)), a.intersect(b).union(&a.intersect(c)));
        prop_assert!(a.intersect(b).is_sub(a) && a.is_sub(&a.union(b)));
    }

    #[test]
    fn de_morgan_and_double_complement((_, s) in space_and_sets(3)) {
        let m = s[0].union(&s[1]).union(&s[2]);
        let (a, b) = (&s[0], &s[1]);
        let comp = |x: &MSet| complement_in(x, &m).unwrap();
        prop_assert_eq!(comp(&a.union(b)), comp(a).intersect(&comp(b)));
        prop_assert_eq!(comp(&a.intersect(b)), comp(a).union(&comp(b)));
        prop_assert_eq!(&comp(&comp(a)), a);
    }

    #[test]
    fn text_and_json_round_trip((space, s) in space_and_sets(1)) {
        let a = &s[0];
        prop_assert_eq!(&MSet::parse(&space, &a.to_text()).unwrap(), a);
        prop_assert_eq!(&MSet::from_json(&space, &a.to_json()).unwrap(), a);
    }

    #[test]
    fn power_cardinality_matches_enumeration((_, s) in space_and_sets(1)) {
        let m = &s[0];
        for kind in [PowerKind::All, PowerKind::Whole, PowerKind::Full] {
            let listed = enumerate_power(m, kind, 100_000).unwrap();
            prop_assert_eq!(listed.len() as u128, power_cardinality(m, kind));
            prop_assert!(listed.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(listed.iter().all(|x| x.is_sub(m)));
        }
        let oracle = common::power(m.counts()).len() as u128;
        prop_assert_eq!(power_cardinality(m, PowerKind::All), oracle);
    }

    #[test]
    fn generated_topologies_obey_operator_laws(seed in any::<u64>(), index in 0u64..64) {
        let cfg = GenConfig { max_domain: 3, max_w: 3, seed, density: 0.3, trials: 1 };
        let t = generate_trial(&cfg, index).unwrap();
        prop_assert_eq!(&generate_trial(&cfg, index).unwrap(), &t);
        let m = t.ground();
        for a in enumerate_power(m, PowerKind::All, 10_000).unwrap() {
            let i = t.interior(&a).unwrap();
            let c = t.closure(&a).unwrap();
            prop_assert!(i.is_sub(&a) && a.is_sub(&c));
            prop_assert!(t.is_open(&i) && t.is_closed(&c));
            prop_assert_eq!(t.interior(&i).unwrap(), i.clone());
            prop_assert_eq!(t.closure(&c).unwrap(), c.clone());
            prop_assert_eq!(t.closure(&complement_in(&a, m).unwrap()).unwrap(), complement_in(&i, m).unwrap());
        }
        let round = parse_topology_file(&topology_to_json_string(&t)).unwrap().topology().unwrap();
        prop_assert_eq!(round, t);
    }
}

#[test]
fn example_semi_open_strictly_exceeds_open() {
    let t = fixtures::example_3_3();
    let sf = enumerate_semi(&t).unwrap();
    assert!(t.open_sets().iter().all(|o| sf.is_som(o)));
    assert_eq!((sf.som().len(), t.open_sets().len()), (12, 6));
}
