//! gamma(R) for every type up to rank 8, with R = |Phi+| / l.

use subgrowth::rootsys::{gamma_of_type, ratio_r, LieType};

fn main() {
    for t in LieType::all_up_to_rank(8)
        .into_iter()
        .filter(|t| !t.is_twisted())
    {
        println!(
            "{:>4}  R = {:>5}  gamma = {}",
            t.to_string(),
            ratio_r(t).to_string(),
            gamma_of_type(t, 30)
        );
    }
}
