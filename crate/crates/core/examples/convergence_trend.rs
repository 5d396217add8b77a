//! Heuristic ratios along n = 2^(2^k) next to the limiting constant.
//! Pass the largest k as an argument (default 7; k = 10 takes a few minutes).

use num_bigint::BigUint;
use num_rational::Rational64;
use subgrowth::extremal::convergence_report;

fn main() -> subgrowth::Result<()> {
    let top: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let schedule: Vec<BigUint> = (4..=top).map(|k| BigUint::from(2u32).pow(1 << k)).collect();
    for row in convergence_report(Rational64::from_integer(1), 1, &schedule)? {
        println!(
            "log2 n = {:>5}  ratio = {:.8}  gamma = {:.8}  |A| has {} cyclic factors",
            row.n.bits() - 1,
            row.ratio.to_f64(),
            row.gamma_target.to_f64(),
            row.best_a.cyclic_orders().len()
        );
    }
    Ok(())
}
