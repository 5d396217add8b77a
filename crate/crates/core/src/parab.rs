//! Standard parabolic subgroups as subsets of Dynkin nodes.
//!
//! A subset `S` of simple roots defines the Levi components `C_i` (connected
//! pieces of `S`). With `E_i` the positive roots spanned by `C_i`, the index of
//! `P_S` grows like `q^(|Phi+| - sum |E_i|)` and its largest abelian quotient
//! prime to `p` like `q^(l - sum |C_i|)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rootsys::{build_root_system, DynkinDiagram, Family, LieType, RootSystem};

/// Exhaustive parabolic scans refuse ranks above this unless raised.
pub const DEFAULT_RANK_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicSpec {
    pub base_type: LieType,
    /// Bit `i` set when node `i` (0-based) is retained in the Levi.
    pub nodes: u64,
    pub components: Vec<Vec<usize>>,
    pub component_root_counts: Vec<usize>,
    pub component_degrees: Vec<Vec<u32>>,
    pub twist_invariant: bool,
}

impl ParabolicSpec {
    pub fn new(t: LieType, nodes: u64) -> Result<Self> {
        let l = t.rank();
        if l < 64 && nodes >> l != 0 {
            return Err(Error::validation(format!(
                "node mask {nodes:#b} has nodes outside 1..={l}"
            )));
        }
        let diagram = DynkinDiagram::of(t);
        let cartan = diagram.cartan_matrix();
        let twist_invariant = match t.twist_permutation() {
            None => true,
            Some(perm) => (0..l)
                .filter(|&i| nodes >> i & 1 == 1)
                .all(|i| nodes >> perm[i] & 1 == 1),
        };
        if !twist_invariant {
            return Err(Error::validation(format!(
                "node set {} is not invariant under the twist of {t}",
                format_nodes(nodes, l)
            )));
        }
        let mut components = Vec::new();
        let mut seen = 0u64;
        for start in 0..l {
            if nodes >> start & 1 == 0 || seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = vec![start];
            seen |= 1 << start;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for w in diagram.neighbours(v) {
                    if nodes >> w & 1 == 1 && seen >> w & 1 == 0 {
                        seen |= 1 << w;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort();
            components.push(comp);
        }
        let systems: Vec<RootSystem> = components
            .iter()
            .map(|c| {
                let sub: Vec<Vec<i64>> = c
                    .iter()
                    .map(|&i| c.iter().map(|&j| cartan[i][j]).collect())
                    .collect();
                RootSystem::from_cartan(&sub)
            })
            .collect();
        Ok(ParabolicSpec {
            base_type: t,
            nodes,
            component_root_counts: systems.iter().map(|s| s.count()).collect(),
            component_degrees: systems.into_iter().map(|s| s.degrees).collect(),
            components,
            twist_invariant,
        })
    }

    pub fn borel(t: LieType) -> Self {
        Self::new(t, 0).expect("the empty set is always admissible")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.count_ones() as usize
    }

    pub fn is_borel(&self) -> bool {
        self.nodes == 0
    }

    pub fn is_improper(&self) -> bool {
        self.node_count() == self.base_type.rank()
    }

    /// Retained nodes, 1-based as in the usual diagram labelling.
    pub fn node_labels(&self) -> Vec<usize> {
        (0..self.base_type.rank())
            .filter(|&i| self.nodes >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }
}

fn format_nodes(mask: u64, l: usize) -> String {
    let labels: Vec<String> = (0..l)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", labels.join(","))
}

impl fmt::Display for ParabolicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_borel() {
            write!(f, "Borel of {}", self.base_type)
        } else {
            write!(
                f,
                "{} S={}",
                self.base_type,
                format_nodes(self.nodes, self.base_type.rank())
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicAsymptotics {
    pub index_exponent: usize,
    pub diamond_exponent: usize,
    pub h_limit: Option<Rational64>,
    pub q_convention: u8,
}

impl ParabolicAsymptotics {
    pub fn h(&self) -> Result<Rational64> {
        self.h_limit
            .ok_or_else(|| Error::domain("h undefined for P=G (both exponents vanish)"))
    }
}

pub fn asymptotics(p: &ParabolicSpec) -> ParabolicAsymptotics {
    let t = p.base_type;
    let total = build_root_system(t).count();
    let index_exponent = total - p.component_root_counts.iter().sum::<usize>();
    let diamond_exponent = t.rank() - p.node_count();
    let h_limit = (diamond_exponent > 0)
        .then(|| Rational64::new(index_exponent as i64, diamond_exponent as i64));
    ParabolicAsymptotics {
        index_exponent,
        diamond_exponent,
        h_limit,
        q_convention: t.twist(),
    }
}

/// All (twist-invariant) node subsets, ordered by bitmask.
pub fn enumerate_parabolics(t: LieType, proper_only: bool) -> Vec<ParabolicSpec> {
    let l = t.rank();
    assert!(l < 40, "rank {l} is far beyond exhaustive scope");
    let full = (1u64 << l) - 1;
    let perm = t.twist_permutation();
    let masks: Vec<u64> = (0..=full)
        .filter(|&m| !(proper_only && m == full))
        .filter(|&m| match &perm {
            None => true,
            Some(p) => (0..l).all(|i| (m >> i & 1) == (m >> p[i] & 1)),
        })
        .collect();
    let mut specs: Vec<ParabolicSpec> = masks
        .into_par_iter()
        .map(|m| ParabolicSpec::new(t, m).expect("mask filtered for invariance"))
        .collect();
    specs.sort_by_key(|s| s.nodes);
    specs
}

#[derive(Clone, Debug)]
pub struct MinParabolicReport {
    pub base_type: LieType,
    pub r: Rational64,
    pub min_h: Rational64,
    pub argmin: Vec<ParabolicSpec>,
    /// Proper parabolics with `h < R`, or non-Borel ones attaining `R`.
    pub counterexamples: Vec<(ParabolicSpec, Rational64)>,
    /// Every proper `h` was also rebuilt from the Borel value by mediant steps.
    pub inductive_path_agrees: bool,
    pub passed: bool,
}

pub fn verify_min_parabolic(t: LieType) -> Result<MinParabolicReport> {
    verify_min_parabolic_capped(t, DEFAULT_RANK_CAP)
}

pub fn verify_min_parabolic_capped(t: LieType, rank_cap: usize) -> Result<MinParabolicReport> {
    if t.rank() > rank_cap {
        return Err(Error::bound(
            format!("rank {} of {t}", t.rank()),
            rank_cap,
            "raise the rank cap to scan more subsets",
        ));
    }
    let r = crate::rootsys::ratio_r(t);
    let specs = enumerate_parabolics(t, true);
    let scored: Vec<(ParabolicSpec, Rational64)> = specs
        .into_iter()
        .map(|s| {
            let h = asymptotics(&s).h().expect("proper parabolic");
            (s, h)
        })
        .collect();
    let min_h = scored
        .iter()
        .map(|(_, h)| *h)
        .min()
        .expect("Borel is proper");
    let argmin: Vec<ParabolicSpec> = scored
        .iter()
        .filter(|(_, h)| *h == min_h)
        .map(|(s, _)| s.clone())
        .collect();
    let counterexamples: Vec<(ParabolicSpec, Rational64)> = scored
        .iter()
        .filter(|(s, h)| *h < r || (*h == r && !s.is_borel()))
        .cloned()
        .collect();
    let inductive_path_agrees = scored.iter().all(|(s, h)| {
        inductive_h(s)
            .map(|v| v == BigRational::new(BigInt::from(*h.numer()), BigInt::from(*h.denom())))
            .unwrap_or(false)
    });
    let passed = min_h == r
        && argmin.len() == 1
        && argmin[0].is_borel()
        && counterexamples.is_empty()
        && inductive_path_agrees;
    Ok(MinParabolicReport {
        base_type: t,
        r,
        min_h,
        argmin,
        counterexamples,
        inductive_path_agrees,
        passed,
    })
}

/// `(a - b) / (c - d)`, requiring `a > b`, `c > d` and `a/c > b/d`; the result
/// then strictly exceeds `a/c`.
pub fn mediant_step(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
) -> Result<BigRational> {
    let zero = BigRational::zero();
    if [a, b, c, d].iter().any(|x| **x <= zero) {
        return Err(Error::domain("mediant step needs positive arguments"));
    }
    if a <= b || c <= d {
        return Err(Error::domain("mediant step needs a > b and c > d"));
    }
    if a / c <= b / d {
        return Err(Error::domain("mediant step needs a/c > b/d"));
    }
    Ok((a - b) / (c - d))
}

/// Rebuild `h(P_S)` from `(|Phi+|, l)` by removing one Levi component at a
/// time, each removal being a checked mediant step.
pub fn inductive_h(p: &ParabolicSpec) -> Result<BigRational> {
    let t = p.base_type;
    let mut num = BigRational::from_integer(BigInt::from(build_root_system(t).count()));
    let mut den = BigRational::from_integer(BigInt::from(t.rank()));
    for (comp, &e) in p.components.iter().zip(&p.component_root_counts) {
        let b = BigRational::from_integer(BigInt::from(e));
        let d = BigRational::from_integer(BigInt::from(comp.len()));
        let next = mediant_step(&num, &b, &den, &d)?;
        if next <= &num / &den {
            return Err(Error::domain("mediant step failed to increase the ratio"));
        }
        num -= b;
        den -= d;
    }
    Ok(num / den)
}

fn check_q(q: &BigUint) -> Result<()> {
    if *q < BigUint::from(2u32) {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

fn q_pow(q: &BigUint, e: u32) -> BigInt {
    BigInt::from(q.pow(e))
}

/// Order of the simply connected finite group of type `t` over the field
/// with `q` elements (twisted groups use the usual `q` of their order
/// formula, the field of definition of the twist having `q^twist` elements).
pub fn group_order(t: LieType, q: &BigUint) -> Result<BigUint> {
    check_q(q)?;
    let rs = build_root_system(t);
    let mut order = q_pow(q, rs.count() as u32);
    let one = BigInt::one();
    match (t.twist(), t.family()) {
        (1, _) => {
            for &d in &rs.degrees {
                order *= q_pow(q, d) - &one;
            }
        }
        (2, Family::A | Family::E) => {
            for &d in &rs.degrees {
                let sign = if d % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                order *= q_pow(q, d) - sign;
            }
        }
        (2, Family::D) => {
            let l = t.rank() as u32;
            let mut flipped = false;
            for &d in &rs.degrees {
                if d == l && !flipped {
                    order *= q_pow(q, d) + &one;
                    flipped = true;
                } else {
                    order *= q_pow(q, d) - &one;
                }
            }
        }
        (3, Family::D) => {
            order *= q_pow(q, 8) + q_pow(q, 4) + &one;
            order *= q_pow(q, 6) - &one;
            order *= q_pow(q, 2) - &one;
        }
        _ => unreachable!("LieType construction rejects other twists"),
    }
    Ok(order.to_biguint().expect("group orders are positive"))
}

/// `q^|Phi+| (q-1)^l`, the order of a Borel subgroup of the untwisted group.
pub fn borel_order(t: LieType, q: &BigUint) -> Result<BigUint> {
    check_q(q)?;
    let n = build_root_system(t).count() as u32;
    Ok(q.pow(n) * (q - 1u32).pow(t.rank() as u32))
}

fn q_integer_value(q: &BigUint, d: u32) -> BigUint {
    (q.pow(d) - 1u32) / (q - 1u32)
}

fn untwisted_only(t: LieType) -> Result<()> {
    if t.is_twisted() {
        return Err(Error::Unsupported(format!(
            "exact index unsupported for twisted types ({t}); use asymptotics"
        )));
    }
    Ok(())
}

/// `[G : P_S](q) = W(q) / W_S(q)` with `W(q) = prod [d_i]_q`.
pub fn parabolic_index(t: LieType, p: &ParabolicSpec, q: &BigUint) -> Result<BigUint> {
    untwisted_only(t)?;
    check_q(q)?;
    if p.base_type != t {
        return Err(Error::validation("parabolic belongs to a different type"));
    }
    let mut num = BigUint::one();
    for d in build_root_system(t).degrees {
        num *= q_integer_value(q, d);
    }
    let mut den = BigUint::one();
    for &d in p.component_degrees.iter().flatten() {
        den *= q_integer_value(q, d);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// The same index as a polynomial in `q`, by exact division of q-integer
/// products.
pub fn parabolic_index_poly(t: LieType, p: &ParabolicSpec) -> Result<Poly> {
    untwisted_only(t)?;
    let num = build_root_system(t)
        .degrees
        .iter()
        .fold(Poly::one(), |acc, &d| acc.mul(&Poly::q_integer(d)));
    let den = p
        .component_degrees
        .iter()
        .flatten()
        .fold(Poly::one(), |acc, &d| acc.mul(&Poly::q_integer(d)));
    let (quot, rem) = num.div_rem_monic(&den);
    if rem.degree().is_some() {
        return Err(Error::domain(format!(
            "index polynomial of {p} is not integral"
        )));
    }
    Ok(quot)
}
