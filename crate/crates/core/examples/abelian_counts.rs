//! Subgroup counts by index for a few abelian groups, checked against
//! element-level enumeration.

use num_bigint::BigUint;
use subgrowth::abcount::{brute_force_counts, s_n, subgroup_counts_by_index, AbelianShape};

fn main() -> subgrowth::Result<()> {
    for orders in [vec![2, 4], vec![6, 6], vec![2, 2, 2, 2], vec![3, 9, 27]] {
        let a = AbelianShape::new(orders)?;
        let table = subgroup_counts_by_index(&a);
        let same = a.order() <= BigUint::from(1000u32) && brute_force_counts(&a)? == table;
        println!(
            "{a}: {} subgroups, self-dual {}, matches enumeration {same}",
            table.total(),
            table.is_self_dual()
        );
        for (index, count) in &table.counts {
            println!("  index {index}: {count}");
        }
    }
    let big = AbelianShape::new(vec![2, 4, 8, 16, 32, 64, 128])?;
    println!(
        "s_(10^6) of {big} = {}",
        s_n(&big, &BigUint::from(1_000_000u32))
    );
    Ok(())
}
