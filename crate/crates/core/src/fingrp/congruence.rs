use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{enumerate_subgroups_with, FiniteMatrixGroup, Matrix, Subgroup, ENUMERATION_MAX_ORDER};
use crate::arith::{divisors, factor};
use crate::error::{Error, Result};

/// Default largest modulus explored by the congruence ledger.
pub const DEFAULT_MODULUS_CAP: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub level: u32,
    pub count: u64,
    pub cumulative: u64,
}

/// Congruence subgroups of `SL_2(Z)` of index at most `n` and level at most
/// the modulus cap. Levels past the cap are not explored, so `total` is a
/// lower bound for the true count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceLedger {
    pub n: u64,
    pub modulus_cap: u32,
    pub levels: Vec<LevelRow>,
    pub total: u64,
    pub lower_bound: bool,
}

/// Subgroups of `SL_2(Z/m)` for every `2 <= m <= cap`, with the group.
pub struct LevelFamily {
    pub groups: BTreeMap<u32, (FiniteMatrixGroup, Vec<Subgroup>)>,
}

impl LevelFamily {
    pub fn build(cap: u32, bound: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::validation("modulus cap must be at least 1"));
        }
        let mut groups = BTreeMap::new();
        for m in 2..=cap {
            let g = FiniteMatrixGroup::special_linear(2, m, bound)?;
            let subs = enumerate_subgroups_with(&g, bound)?;
            groups.insert(m, (g, subs));
        }
        Ok(LevelFamily { groups })
    }
}

/// Elements of `SL_2(Z/m)` reducing to the identity mod `d`.
fn kernel(g: &FiniteMatrixGroup, d: u32) -> Vec<u32> {
    let one: Matrix = vec![1 % d, 0, 0, 1 % d];
    (0..g.order() as u32)
        .filter(|&a| g.reduce(a, d) == one)
        .collect()
}

/// True level of a subgroup of `SL_2(Z/m)`: the least `d | m` whose
/// reduction kernel it contains.
pub fn subgroup_level(g: &FiniteMatrixGroup, h: &Subgroup) -> u32 {
    let m = g.modulus();
    divisors(m as u64)
        .into_iter()
        .map(|d| d as u32)
        .find(|&d| kernel(g, d).iter().all(|&k| h.contains(k)))
        .unwrap_or(m)
}

/// Whether `h` is a full preimage from some proper divisor of the modulus.
/// Only the divisors `m / p` need checking: kernels shrink as `d` grows.
fn comes_from_below(h: &Subgroup, kernels: &[Vec<u32>]) -> bool {
    kernels.iter().any(|k| k.iter().all(|&x| h.contains(x)))
}

pub fn congruence_count_sl2(n: u64, modulus_cap: u32) -> Result<CongruenceLedger> {
    let family = LevelFamily::build(modulus_cap, ENUMERATION_MAX_ORDER)?;
    congruence_ledger(&family, n, modulus_cap)
}

pub fn congruence_ledger(
    family: &LevelFamily,
    n: u64,
    modulus_cap: u32,
) -> Result<CongruenceLedger> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    let mut levels = vec![LevelRow {
        level: 1,
        count: 1,
        cumulative: 1,
    }];
    let mut total = 1;
    for (&m, (g, subs)) in family.groups.range(..=modulus_cap) {
        let kernels: Vec<Vec<u32>> = factor(m as u64)
            .into_iter()
            .map(|(p, _)| kernel(g, m / p as u32))
            .collect();
        let count = subs
            .iter()
            .filter(|h| h.index as u64 <= n && !comes_from_below(h, &kernels))
            .count() as u64;
        total += count;
        levels.push(LevelRow {
            level: m,
            count,
            cumulative: total,
        });
    }
    Ok(CongruenceLedger {
        n,
        modulus_cap,
        levels,
        total,
        lower_bound: true,
    })
}

/// Distinct congruence subgroups of index at most `n` among all subgroups of
/// `SL_2(Z/m)`, `m <= cap`, found by comparing preimages directly: subgroups
/// `H <= SL_2(Z/m)` and `K <= SL_2(Z/m')` have the same preimage in `SL_2(Z)`
/// exactly when `a in H <=> b in K` for all pairs with `a = b mod gcd(m, m')`.
pub fn pullback_distinct_count(family: &LevelFamily, n: u64, cap: u32) -> u64 {
    // the whole group, seen at level 1
    let mut kept: Vec<(u32, usize)> = Vec::new();
    let mut total = 1;
    let groups: Vec<(u32, &FiniteMatrixGroup, &Vec<Subgroup>)> = family
        .groups
        .range(..=cap)
        .map(|(&m, (g, s))| (m, g, s))
        .collect();
    let lookup: HashMap<u32, usize> = groups
        .iter()
        .enumerate()
        .map(|(i, (m, _, _))| (*m, i))
        .collect();
    for &(m, g, subs) in &groups {
        for (si, h) in subs.iter().enumerate() {
            if h.index as u64 > n || h.index == 1 {
                continue;
            }
            let dup = kept.iter().any(|&(m2, sj)| {
                let (_, g2, subs2) = groups[lookup[&m2]];
                let k = &subs2[sj];
                k.index == h.index && same_pullback(g, h, m, g2, k, m2)
            });
            if !dup {
                kept.push((m, si));
                total += 1;
            }
        }
    }
    total
}

fn same_pullback(
    g: &FiniteMatrixGroup,
    h: &Subgroup,
    m: u32,
    g2: &FiniteMatrixGroup,
    k: &Subgroup,
    m2: u32,
) -> bool {
    let d = num_integer::gcd(m, m2);
    let mut buckets: HashMap<Matrix, Vec<u32>> = HashMap::new();
    for b in 0..g2.order() as u32 {
        buckets.entry(g2.reduce(b, d)).or_default().push(b);
    }
    (0..g.order() as u32).all(|a| {
        let in_h = h.contains(a);
        buckets[&g.reduce(a, d)]
            .iter()
            .all(|&b| k.contains(b) == in_h)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_two() {
        let l = congruence_count_sl2(6, 2).unwrap();
        assert_eq!(l.total, 6);
        assert_eq!(l.levels[0].count, 1);
        assert_eq!(l.levels[1].count, 5);
        assert_eq!(congruence_count_sl2(1, 2).unwrap().total, 1);
        assert_eq!(congruence_count_sl2(1, 6).unwrap().total, 1);
    }

    #[test]
    fn kernel_of_four_has_level_two() {
        let g = FiniteMatrixGroup::special_linear(2, 4, 1000).unwrap();
        let subs = enumerate_subgroups_with(&g, 1000).unwrap();
        let k = kernel(&g, 2);
        let h = subs.iter().find(|s| s.elements == k).unwrap();
        assert_eq!(subgroup_level(&g, h), 2);
        let trivial = subs.iter().find(|s| s.order == 1).unwrap();
        assert_eq!(subgroup_level(&g, trivial), 4);
    }

    #[test]
    fn pullback_agrees() {
        let fam = LevelFamily::build(6, 1000).unwrap();
        for n in [1, 2, 6, 12, 50, 1000] {
            let l = congruence_ledger(&fam, n, 6).unwrap();
            assert_eq!(l.total, pullback_distinct_count(&fam, n, 6), "n = {n}");
        }
    }
}
