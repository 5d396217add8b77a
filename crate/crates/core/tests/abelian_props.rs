use num_bigint::BigUint;
use proptest::prelude::*;

use num_integer::gcd;
use subgrowth::abcount::{
    brute_force_counts, gaussian_binomial, s_n, subgroup_counts_by_index, AbelianShape,
};
use subgrowth::oracle::lattice_subgroup_counts;

/// Cyclic orders with product at most `max`.
fn shape(max: u64) -> impl Strategy<Value = AbelianShape> {
    prop::collection::vec(2u64..=40, 0..6).prop_map(move |mut v| {
        let mut prod = 1;
        v.retain(|&x| {
            if prod * x <= max {
                prod *= x;
                true
            } else {
                false
            }
        });
        AbelianShape::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn formula_matches_both_brute_forces(a in shape(500)) {
        let f = subgroup_counts_by_index(&a);
        prop_assert_eq!(&f, &lattice_subgroup_counts(&a));
        prop_assert_eq!(&f, &brute_force_counts(&a).unwrap());
    }

    #[test]
    fn s_n_walk_matches_table(a in shape(100_000), n in 1u64..5000) {
        let n = BigUint::from(n);
        prop_assert_eq!(s_n(&a, &n), subgroup_counts_by_index(&a).s_n(&n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn self_dual(a in shape(1u64 << 40)) {
        let t = subgroup_counts_by_index(&a);
        prop_assert!(t.is_self_dual());
        prop_assert_eq!(t.order, a.order());
    }

    #[test]
    fn multiplicative_on_coprime_parts(a in shape(3000), b in shape(3000)) {
        let (oa, ob) = (a.order(), b.order());
        let oa64 = u64::try_from(oa).unwrap();
        let ob64 = u64::try_from(ob).unwrap();
        prop_assume!(gcd(oa64, ob64) == 1);
        let direct = subgroup_counts_by_index(&a.product(&b));
        let conv = subgroup_counts_by_index(&a).convolve(&subgroup_counts_by_index(&b));
        prop_assert_eq!(direct, conv);
    }

    #[test]
    fn elementary_abelian_is_gaussian(p in prop::sample::select(vec![2u64, 3, 5, 7]), t in 1usize..6) {
        let a = AbelianShape::new(vec![p; t]).unwrap();
        let table = subgroup_counts_by_index(&a);
        let pb = BigUint::from(p);
        for b in 0..=t {
            prop_assert_eq!(table.count(&pb.pow(b as u32)), gaussian_binomial(t as i64, b as i64, &pb));
        }
    }
}
