//! Matrix groups over Z/m: generation, subgroup lattices and the on-disk
//! multiplication-table cache.

use subgrowth::fingrp::{enumerate_subgroups, set_cache_dir, FiniteMatrixGroup};

fn main() -> subgrowth::Result<()> {
    let dir = std::env::temp_dir().join("subgrowth-example-cache");
    set_cache_dir(Some(dir.clone()));
    for m in [2, 3, 4, 5, 6] {
        let g = FiniteMatrixGroup::special_linear(2, m, 10_000)?;
        let subs = enumerate_subgroups(&g)?;
        let orders: std::collections::BTreeSet<usize> = subs.iter().map(|s| s.order).collect();
        println!(
            "SL_2(Z/{m}): order {}, {} subgroups, orders {orders:?}",
            g.order(),
            subs.len()
        );
    }
    let q8 = FiniteMatrixGroup::generate(3, 2, vec![vec![0, 2, 1, 0], vec![1, 1, 1, 2]], 100)?;
    println!("<i, j> over Z/3 has order {}", q8.order());
    println!("tables cached under {}", dir.display());
    Ok(())
}
