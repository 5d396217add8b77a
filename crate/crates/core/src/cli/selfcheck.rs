//! Oracle-equivalence battery behind `subgrowth selfcheck`.
//!
//! Each check recomputes a closed-form quantity by an independent brute-force
//! route and compares exactly. Nothing here is expected to fail.

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Rational64;
use serde_json::json;

use super::Report;
use crate::abcount::{abelian_types_of_order, brute_force_counts, subgroup_counts_by_index};
use crate::extremal::{ExhaustiveSolver, ExtremalInstance};
use crate::fingrp::{
    congruence_ledger, enumerate_subgroups_naive, enumerate_subgroups_with,
    pullback_distinct_count, FiniteMatrixGroup, LevelFamily,
};
use crate::oracle::{
    cartan_symmetries_brute, lattice_subgroup_counts, reflection_orbit_positive_roots,
    sl2_order_brute, su3_order_f2_brute, ExtremalOracle,
};
use crate::parab::{group_order, verify_min_parabolic};
use crate::rootsys::{build_root_system, DynkinDiagram, Family, LieType};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SelfcheckReport {
    pub checks: Vec<Check>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn report(&self) -> Report {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.to_string(),
                    c.cases.to_string(),
                    if c.passed() { "PASS" } else { "FAIL" }.to_string(),
                    c.failures.first().cloned().unwrap_or_default(),
                ]
            })
            .collect();
        let json = json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "cases": c.cases.to_string(),
                "passed": c.passed(),
                "failures": c.failures,
                "seconds": format!("{:.2}", c.seconds),
            })).collect::<Vec<_>>(),
        });
        let mut human = String::new();
        for c in &self.checks {
            let v = if c.passed() { "PASS" } else { "FAIL" };
            human.push_str(&format!(
                "{v} {} ({} cases, {:.2}s)\n",
                c.name, c.cases, c.seconds
            ));
            for f in c.failures.iter().take(5) {
                human.push_str(&format!("    {f}\n"));
            }
        }
        human.push_str(if self.passed() {
            "all checks passed"
        } else {
            "selfcheck FAILED"
        });
        let mut r = Report::new(
            json,
            &["check", "cases", "verdict", "first_failure"],
            rows,
            human,
        );
        r.failed = !self.passed();
        r
    }
}

fn timed(name: &'static str, f: impl FnOnce(&mut Vec<String>) -> usize) -> Check {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = f(&mut failures);
    Check {
        name,
        cases,
        failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run(quick: bool) -> SelfcheckReport {
    let max_rank = if quick { 4 } else { 6 };
    let max_order: u64 = if quick { 64 } else { 512 };
    let max_n: u64 = if quick { 100 } else { 1000 };
    let modulus: u32 = if quick { 4 } else { 6 };
    let types: Vec<LieType> = LieType::all_up_to_rank(max_rank);

    let checks = vec![
        timed("positive roots equal the reflection orbit", |fail| {
            for &t in &types {
                let cartan = DynkinDiagram::of(t.untwisted_form()).cartan_matrix();
                let mut ours = build_root_system(t).positive_roots;
                ours.sort();
                if ours != reflection_orbit_positive_roots(&cartan) {
                    fail.push(format!("{t}"));
                }
            }
            types.len()
        }),
        timed("diagram symmetries equal Cartan automorphisms", |fail| {
            for &t in &types {
                let dia = DynkinDiagram::of(t.untwisted_form());
                let mut ours = dia.symmetries();
                ours.sort();
                if ours != cartan_symmetries_brute(&dia.cartan_matrix()) {
                    fail.push(format!("{t}"));
                }
            }
            types.len()
        }),
        timed("Borel uniquely minimizes h among parabolics", |fail| {
            for &t in &types {
                match verify_min_parabolic(t) {
                    Ok(r) if r.passed => {}
                    Ok(r) => fail.push(format!("{t}: min h {} vs R {}", r.min_h, r.r)),
                    Err(e) => fail.push(format!("{t}: {e}")),
                }
            }
            types.len()
        }),
        timed("group orders equal matrix counts", |fail| {
            let a1 = LieType::untwisted(Family::A, 1).expect("A1");
            let mut cases = 0;
            for p in [2u64, 3, 5, 7, 11] {
                cases += 1;
                let f = group_order(a1, &BigUint::from(p)).ok();
                if f != Some(BigUint::from(sl2_order_brute(p))) {
                    fail.push(format!("SL_2({p})"));
                }
            }
            let a2 = LieType::new(Family::A, 2, 2).expect("2A2");
            if group_order(a2, &BigUint::from(2u32)).ok()
                != Some(BigUint::from(su3_order_f2_brute()))
            {
                fail.push("SU_3(2)".into());
            }
            cases + 1
        }),
        timed("abelian counts equal sublattice listing", |fail| {
            let mut cases = 0;
            for n in 1..=max_order {
                for a in abelian_types_of_order(n) {
                    cases += 1;
                    let formula = subgroup_counts_by_index(&a);
                    if formula != lattice_subgroup_counts(&a) {
                        fail.push(format!("{a} vs lattices"));
                    }
                    if n <= 64 && brute_force_counts(&a).ok().as_ref() != Some(&formula) {
                        fail.push(format!("{a} vs element enumeration"));
                    }
                }
            }
            cases
        }),
        timed(
            "exhaustive extremal solver equals independent search",
            |fail| {
                let solver = ExhaustiveSolver::new(BigUint::from(max_n));
                let mut oracle = ExtremalOracle::new(max_n);
                let mut cases = 0;
                for r in [
                    Rational64::from_integer(1),
                    Rational64::new(3, 2),
                    Rational64::from_integer(2),
                ] {
                    for d in 1..=2 {
                        for n in 2..=max_n {
                            cases += 1;
                            let inst = ExtremalInstance::new(r, d, BigUint::from(n))
                                .expect("valid instance");
                            let ours = solver.solve_with_digits(&inst, 10);
                            let theirs = oracle.solve(&inst);
                            match (ours, theirs) {
                                (Ok(a), Ok((orders, rr, count))) => {
                                    if a.best_count != count
                                        || a.best_a.cyclic_orders() != orders.as_slice()
                                        || a.best_r != rr
                                    {
                                        fail.push(format!("R={r} d={d} n={n}"));
                                    }
                                }
                                _ => fail.push(format!("R={r} d={d} n={n}: solver error")),
                            }
                        }
                    }
                }
                cases
            },
        ),
        timed("subgroup enumerators agree", |fail| {
            let groups = [
                (5u32, vec![vec![1, 1, 0, 1], vec![0, 4, 1, 0]]),
                (7, vec![vec![3, 0, 0, 5], vec![0, 6, 1, 0]]),
            ];
            for (m, gens) in &groups {
                match FiniteMatrixGroup::generate(*m, 2, gens.clone(), 10_000) {
                    Ok(g) => {
                        let a = enumerate_subgroups_with(&g, 10_000);
                        let b = enumerate_subgroups_naive(&g, 10_000);
                        match (a, b) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => fail.push(format!("group over Z/{m}")),
                        }
                    }
                    Err(e) => fail.push(e.to_string()),
                }
            }
            groups.len()
        }),
        timed(
            "congruence ledger equals pullback comparison",
            |fail| match LevelFamily::build(modulus, 10_000) {
                Ok(fam) => {
                    let ns = [1u64, 2, 4, 6, 12, 24, 100, 1000];
                    for n in ns {
                        match congruence_ledger(&fam, n, modulus) {
                            Ok(l) if l.total == pullback_distinct_count(&fam, n, modulus) => {}
                            _ => fail.push(format!("n = {n}")),
                        }
                    }
                    ns.len()
                }
                Err(e) => {
                    fail.push(e.to_string());
                    0
                }
            },
        ),
    ];
    SelfcheckReport { checks }
}
