//! Named real and complex groups resolved to their split type.

use subgrowth::invariants::{catalog_samples, gamma_of_group, inner_form_degree, GroupDescriptor};

fn main() -> subgrowth::Result<()> {
    for name in catalog_samples() {
        let g: GroupDescriptor = name.parse()?;
        let v = gamma_of_group(&g, 20);
        print!(
            "{name:>9} -> {:<4} R = {:<4} gamma = {}  degrees {:?}",
            v.split_type.to_string(),
            v.r.to_string(),
            v.gamma,
            inner_form_degree(&g)?
        );
        match v.warning {
            Some(w) => println!("  ({w})"),
            None => println!(),
        }
    }
    Ok(())
}
