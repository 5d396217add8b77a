//! Standard parabolics of B3: h limits, exact indices at q = 5 and the
//! check that the Borel is the unique minimizer, for every type up to rank 8.

use num_bigint::BigUint;
use subgrowth::parab::{
    asymptotics, enumerate_parabolics, parabolic_index, parabolic_index_poly, verify_min_parabolic,
};
use subgrowth::rootsys::LieType;

fn main() -> subgrowth::Result<()> {
    let t: LieType = "B3".parse()?;
    let q = BigUint::from(5u32);
    for p in enumerate_parabolics(t, true) {
        let a = asymptotics(&p);
        println!(
            "{p}: h -> {}, [G:P](5) = {}, [G:P](q) = {}",
            a.h()?,
            parabolic_index(t, &p, &q)?,
            parabolic_index_poly(t, &p)?
        );
    }
    let mut all_ok = true;
    for t in LieType::all_up_to_rank(8) {
        let r = verify_min_parabolic(t)?;
        all_ok &= r.passed;
        if !r.passed {
            println!("{t}: min h {} differs from R {}", r.min_h, r.r);
        }
    }
    println!("Borel minimizes h for every type up to rank 8: {all_ok}");
    Ok(())
}
