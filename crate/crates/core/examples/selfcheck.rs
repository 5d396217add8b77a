//! The oracle-equivalence battery, called from the library.

fn main() {
    let report = subgrowth::cli::selfcheck::run(true);
    for c in &report.checks {
        println!(
            "{} {} ({} cases)",
            if c.passed() { "ok  " } else { "FAIL" },
            c.name,
            c.cases
        );
    }
    std::process::exit(i32::from(!report.passed()));
}
