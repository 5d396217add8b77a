//! Minimum of h over all subgroups of SL_2(F_q), by both enumerators.

use subgrowth::fingrp::{min_h_scan_with, Enumerator, ENUMERATION_MAX_ORDER};

fn main() -> subgrowth::Result<()> {
    let t = "A1".parse()?;
    let qs = [5, 7, 11];
    let fast = min_h_scan_with(
        t,
        &qs,
        20,
        Enumerator::CyclicExtension,
        ENUMERATION_MAX_ORDER,
    )?;
    let slow = min_h_scan_with(t, &qs, 20, Enumerator::PairClosure, ENUMERATION_MAX_ORDER)?;
    for row in &fast {
        println!(
            "q = {:>2}: {:>4} subgroups, min h = {} ({})",
            row.q,
            row.subgroups,
            row.min_h,
            row.argmin()
        );
    }
    println!("enumerators agree: {}", fast == slow);
    Ok(())
}
