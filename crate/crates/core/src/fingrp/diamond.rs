use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::subgroups::{close, Bits};
use super::{
    enumerate_subgroups_naive, enumerate_subgroups_with, FiniteMatrixGroup, Subgroup,
    ENUMERATION_MAX_ORDER,
};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::rootsys::{Family, LieType};

/// Order of the commutator subgroup of `h`.
pub fn derived_order(g: &FiniteMatrixGroup, h: &Subgroup) -> usize {
    let mut d = Bits::empty(g.order());
    d.set(g.identity());
    let mut gens = Vec::new();
    for &x in &h.elements {
        let xi = g.inv(x);
        for &y in &h.elements {
            let c = g.mul(g.mul(xi, g.inv(y)), g.mul(x, y));
            if !d.has(c) {
                gens.push(c);
                d = close(g, &d, &gens);
            }
        }
    }
    d.count()
}

/// `|H^ab|` with its `p`-part removed.
pub fn diamond_order(g: &FiniteMatrixGroup, h: &Subgroup, p: u64) -> u64 {
    let mut ab = (h.order / derived_order(g, h)) as u64;
    while ab.is_multiple_of(p) {
        ab /= p;
    }
    ab
}

/// `log[G:H] / log|H^◇|`, infinite when the diamond quotient is trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HValue {
    Finite(Real),
    Infinite,
}

impl HValue {
    pub fn from_parts(index: u64, diamond: u64, digits: u32) -> Result<Self> {
        if diamond <= 1 {
            return Ok(HValue::Infinite);
        }
        let num = Real::log2_int(&BigUint::from(index), digits + 5)?;
        let den = Real::log2_int(&BigUint::from(diamond), digits + 5)?;
        Ok(HValue::Finite(num.div(&den)?.rescale(digits)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            HValue::Finite(r) => r.to_f64(),
            HValue::Infinite => f64::INFINITY,
        }
    }
}

impl Ord for HValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (HValue::Finite(a), HValue::Finite(b)) => a.cmp(b),
            (HValue::Finite(_), HValue::Infinite) => Ordering::Less,
            (HValue::Infinite, HValue::Finite(_)) => Ordering::Greater,
            (HValue::Infinite, HValue::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for HValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HValue::Finite(r) => write!(f, "{r}"),
            HValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for HValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn h_value(g: &FiniteMatrixGroup, h: &Subgroup, p: u64, digits: u32) -> Result<HValue> {
    HValue::from_parts((g.order() / h.order) as u64, diamond_order(g, h, p), digits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumerator {
    CyclicExtension,
    PairClosure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinHRow {
    pub q: u64,
    pub subgroups: usize,
    pub min_h: HValue,
    pub argmin_order: usize,
    pub argmin_index: usize,
    pub argmin_diamond: u64,
    pub borel_h: HValue,
}

impl MinHRow {
    pub fn argmin(&self) -> String {
        format!(
            "subgroup of order {} and index {} with |H^ab|_p' = {}",
            self.argmin_order, self.argmin_index, self.argmin_diamond
        )
    }
}

/// Minimum of `h` over every subgroup of `SL_{l+1}(F_q)` for each `q`.
pub fn min_h_scan(t: LieType, qs: &[u64], digits: u32) -> Result<Vec<MinHRow>> {
    min_h_scan_with(
        t,
        qs,
        digits,
        Enumerator::CyclicExtension,
        ENUMERATION_MAX_ORDER,
    )
}

pub fn min_h_scan_with(
    t: LieType,
    qs: &[u64],
    digits: u32,
    how: Enumerator,
    bound: usize,
) -> Result<Vec<MinHRow>> {
    if t.family() != Family::A || t.twist() != 1 {
        return Err(Error::Unsupported(format!(
            "the scan realizes split type A only (as SL_(l+1)), not {t}"
        )));
    }
    let mut rows = Vec::new();
    for &q in qs {
        if q == 2 || q == 3 {
            return Err(Error::validation(format!(
                "q = {q} excluded: the scan assumes characteristic p > 3"
            )));
        }
        if !is_prime(q) {
            return Err(Error::validation(format!("q = {q} must be a prime")));
        }
        let g = FiniteMatrixGroup::special_linear(t.rank() + 1, q as u32, bound)?;
        let subs = match how {
            Enumerator::CyclicExtension => enumerate_subgroups_with(&g, bound)?,
            Enumerator::PairClosure => enumerate_subgroups_naive(&g, bound)?,
        };
        let scored: Vec<(HValue, u64)> = subs
            .par_iter()
            .map(|s| {
                let d = diamond_order(&g, s, q);
                HValue::from_parts(s.index as u64, d, digits).map(|h| (h, d))
            })
            .collect::<Result<_>>()?;
        let (best, (min_h, diamond)) = scored
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.cmp(&b.1 .0).then(a.0.cmp(&b.0)))
            .map(|(i, v)| (i, v.clone()))
            .expect("the trivial subgroup is always present");
        let borel_h = if t.rank() == 1 {
            let b = FiniteMatrixGroup::borel_sl2(q as u32)?;
            HValue::from_parts(q + 1, diamond_of_whole(&b, q), digits)?
        } else {
            HValue::Infinite
        };
        rows.push(MinHRow {
            q,
            subgroups: subs.len(),
            min_h,
            argmin_order: subs[best].order,
            argmin_index: subs[best].index,
            argmin_diamond: diamond,
            borel_h,
        });
    }
    Ok(rows)
}

fn diamond_of_whole(g: &FiniteMatrixGroup, p: u64) -> u64 {
    let all = Subgroup {
        elements: (0..g.order() as u32).collect(),
        order: g.order(),
        index: 1,
    };
    diamond_order(g, &all, p)
}
