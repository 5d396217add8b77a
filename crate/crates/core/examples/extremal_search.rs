//! The extremal problem at n = 10^5 solved exhaustively and heuristically.

use num_bigint::BigUint;
use num_rational::Rational64;
use subgrowth::extremal::{solve_exhaustive, solve_heuristic, ExtremalInstance};

fn main() -> subgrowth::Result<()> {
    for (r, d) in [
        (Rational64::from_integer(1), 1),
        (Rational64::new(3, 2), 2),
        (Rational64::from_integer(2), 1),
    ] {
        let inst = ExtremalInstance::new(r, d, BigUint::from(100_000u32))?;
        let exact = solve_exhaustive(&inst)?;
        let quick = solve_heuristic(&inst)?;
        println!("R = {r}, d = {d}");
        println!("  exhaustive: {exact}");
        println!("  heuristic:  {quick}");
    }
    Ok(())
}
