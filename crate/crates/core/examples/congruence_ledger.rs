//! Congruence subgroups of SL_2(Z) of index <= 12, level by level.

use subgrowth::fingrp::{
    congruence_ledger, pullback_distinct_count, LevelFamily, ENUMERATION_MAX_ORDER,
};

fn main() -> subgrowth::Result<()> {
    let cap = 6;
    let family = LevelFamily::build(cap, ENUMERATION_MAX_ORDER)?;
    let ledger = congruence_ledger(&family, 12, cap)?;
    for row in &ledger.levels {
        println!(
            "level {:>2}: {:>3} new, {:>4} so far",
            row.level, row.count, row.cumulative
        );
    }
    println!(
        "at least {} (pullback comparison: {})",
        ledger.total,
        pullback_distinct_count(&family, 12, cap)
    );
    Ok(())
}
