use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use subgrowth::invariants::{
    admissible_degrees, catalog_samples, gamma_of_group, inner_form_degree, GroupDescriptor,
};
use subgrowth::rootsys::{gamma_of_type, ratio_r, LieType};

#[test]
fn catalog_gamma_factors_through_the_split_type() {
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    for name in catalog_samples() {
        let g: GroupDescriptor = name.parse().unwrap();
        let v = gamma_of_group(&g, 40);
        let direct = gamma_of_type(v.split_type, 40);
        assert!((v.gamma.to_f64() - direct.to_f64()).abs() < 1e-12, "{name}");
        assert_eq!(v.r, ratio_r(v.split_type));
        let prev = seen
            .entry(v.split_type.to_string())
            .or_insert_with(|| v.gamma.to_string());
        assert_eq!(*prev, v.gamma.to_string(), "{name}");
    }
}

#[test]
fn form_degrees_are_admissible() {
    let all: BTreeSet<u8> = [1, 2, 3, 6].into();
    for name in catalog_samples() {
        let g: GroupDescriptor = name.parse().unwrap();
        let degs = inner_form_degree(&g).unwrap();
        assert!(!degs.is_empty() && degs.is_subset(&all), "{name}");
        let split = g.split_type();
        if !(split.family() == subgrowth::Family::D && split.rank() == 4) {
            assert!(degs.is_subset(&[1, 2].into()), "{name}");
        }
        assert!(degs.is_subset(&admissible_degrees(split)), "{name}");
    }
}

proptest! {
    #[test]
    fn raw_types_resolve_to_themselves(t in prop::sample::select(LieType::all_up_to_rank(8))) {
        let g: GroupDescriptor = t.to_string().parse().unwrap();
        let v = gamma_of_group(&g, 30);
        prop_assert_eq!(v.split_type, t.untwisted_form());
        prop_assert_eq!(v.gamma, gamma_of_type(t, 30));
        prop_assert_eq!(inner_form_degree(&g).unwrap(), BTreeSet::from([t.twist()]));
    }

    #[test]
    fn unknown_names_are_rejected(s in "[a-z]{3,8}\\([0-9]{1,2}\\)") {
        prop_assert!(s.parse::<GroupDescriptor>().is_err());
    }
}
