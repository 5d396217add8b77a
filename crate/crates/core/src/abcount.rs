//! Exact subgroup counts of finite abelian groups.
//!
//! For an abelian p-group of type `lambda`, the number of subgroups of type
//! `mu` is
//!
//! ```text
//!   prod_i p^(mu'_{i+1} (lambda'_i - mu'_i)) * [lambda'_i - mu'_{i+1} choose mu'_i - mu'_{i+1}]_p
//! ```
//!
//! over the columns of the conjugate partitions. Tables for different primes
//! are combined by multiplying indices.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{conjugate, factor, partitions};
use crate::error::{Error, Result};

/// Default bound on `|A|` for the element-level oracle.
pub const BRUTE_FORCE_MAX_ORDER: u64 = 10_000;
/// Default bound on the number of subgroups the element-level oracle will hold.
pub const BRUTE_FORCE_MAX_SUBGROUPS: usize = 2_000_000;

/// A finite abelian group `C_{x_1} x ... x C_{x_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianShape {
    cyclic_orders: Vec<u64>,
}

impl AbelianShape {
    /// Orders of 1 are dropped; 0 is rejected.
    pub fn new(mut orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::validation("cyclic orders must be positive"));
        }
        orders.retain(|&x| x > 1);
        orders.sort();
        Ok(AbelianShape {
            cyclic_orders: orders,
        })
    }

    pub fn trivial() -> Self {
        AbelianShape {
            cyclic_orders: Vec::new(),
        }
    }

    /// Rebuild from a prime to partition map.
    pub fn from_primary(view: &BTreeMap<u64, Vec<u32>>) -> Self {
        let mut orders = Vec::new();
        for (&p, parts) in view {
            for &e in parts {
                if e > 0 {
                    orders.push(p.pow(e));
                }
            }
        }
        AbelianShape::new(orders).expect("prime powers are positive")
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> BigUint {
        self.cyclic_orders
            .iter()
            .fold(BigUint::one(), |acc, &x| acc * x)
    }

    pub fn multiplicity(&self, x: u64) -> usize {
        self.cyclic_orders.iter().filter(|&&y| y == x).count()
    }

    /// Prime to exponent partition (nonincreasing) of the primary parts.
    pub fn primary_view(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut view: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &x in &self.cyclic_orders {
            for (p, e) in factor(x) {
                view.entry(p).or_default().push(e);
            }
        }
        for parts in view.values_mut() {
            parts.sort_by(|a, b| b.cmp(a));
        }
        view
    }

    /// Invariant factors `x_1 | x_2 | ... | x_k`, ascending.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let view = self.primary_view();
        let k = view.values().map(|v| v.len()).max().unwrap_or(0);
        let mut out = vec![1u64; k];
        for (&p, parts) in &view {
            for (i, &e) in parts.iter().enumerate() {
                out[k - 1 - i] *= p.pow(e);
            }
        }
        out
    }

    pub fn is_isomorphic(&self, other: &AbelianShape) -> bool {
        self.primary_view() == other.primary_view()
    }

    pub fn product(&self, other: &AbelianShape) -> AbelianShape {
        let mut orders = self.cyclic_orders.clone();
        orders.extend_from_slice(&other.cyclic_orders);
        AbelianShape::new(orders).expect("positive orders")
    }
}

impl fmt::Display for AbelianShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.cyclic_orders.iter().map(|x| format!("C{x}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Every isomorphism type of abelian group of order `n`, in invariant-factor form.
pub fn abelian_types_of_order(n: u64) -> Vec<AbelianShape> {
    let mut out = vec![BTreeMap::new()];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        for view in &out {
            for part in partitions(e) {
                let mut v: BTreeMap<u64, Vec<u32>> = view.clone();
                v.insert(p, part);
                next.push(v);
            }
        }
        out = next;
    }
    out.iter()
        .map(|v| {
            let s = AbelianShape::from_primary(v);
            AbelianShape::new(s.invariant_factors()).expect("positive")
        })
        .collect()
}

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over a
/// field with `q` elements. Returns 0 when `k < 0` or `k > n`.
pub fn gaussian_binomial(n: i64, k: i64, q: &BigUint) -> BigUint {
    if k < 0 || k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=k {
        num *= q.pow((n - k + i) as u32) - 1u32;
        den *= q.pow(i as u32) - 1u32;
    }
    num / den
}

/// Subgroup counts of a `p`-group of type `lambda`, indexed by the exponent
/// `k` of the index `p^k`.
pub fn prime_table(p: u64, lambda: &[u32]) -> Vec<BigUint> {
    let weight: u32 = lambda.iter().sum();
    let cols = conjugate(lambda);
    let m = cols.len();
    let pb = BigUint::from(p);
    let term = |i: usize, a: u32, b: u32| -> BigUint {
        let c = cols[i];
        pb.pow(b * (c - a)) * gaussian_binomial((c - b) as i64, (a - b) as i64, &pb)
    };
    // tail[a] = counts by weight of columns i.. given mu'_i = a
    let mut tail: Vec<Vec<BigUint>> = Vec::new();
    for i in (0..m).rev() {
        let c = cols[i];
        let next_cap = if i + 1 < m { cols[i + 1] } else { 0 };
        let mut fresh = Vec::with_capacity(c as usize + 1);
        for a in 0..=c {
            let mut acc = vec![BigUint::zero(); weight as usize + 1];
            for b in 0..=a.min(next_cap) {
                let t = term(i, a, b);
                if t.is_zero() {
                    continue;
                }
                if i + 1 < m {
                    for (w, v) in tail[b as usize].iter().enumerate() {
                        if !v.is_zero() {
                            acc[w + a as usize] += &t * v;
                        }
                    }
                } else {
                    acc[a as usize] += &t;
                }
            }
            fresh.push(acc);
        }
        tail = fresh;
    }
    let mut by_weight = vec![BigUint::zero(); weight as usize + 1];
    if m == 0 {
        by_weight[0] = BigUint::one();
    }
    for row in &tail {
        for (w, v) in row.iter().enumerate() {
            by_weight[w] += v;
        }
    }
    by_weight.reverse();
    by_weight
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCountTable {
    pub order: BigUint,
    pub counts: BTreeMap<BigUint, BigUint>,
}

impl SubgroupCountTable {
    pub fn trivial() -> Self {
        let mut counts = BTreeMap::new();
        counts.insert(BigUint::one(), BigUint::one());
        SubgroupCountTable {
            order: BigUint::one(),
            counts,
        }
    }

    pub fn count(&self, index: &BigUint) -> BigUint {
        self.counts.get(index).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Number of subgroups of index at most `n`.
    pub fn s_n(&self, n: &BigUint) -> BigUint {
        self.counts.range(..=n.clone()).map(|(_, v)| v).sum()
    }

    pub fn is_self_dual(&self) -> bool {
        self.counts
            .iter()
            .all(|(k, v)| self.count(&(&self.order / k)) == *v)
    }

    /// Table of the direct product with a group of coprime order.
    pub fn convolve(&self, other: &SubgroupCountTable) -> SubgroupCountTable {
        let mut counts: BTreeMap<BigUint, BigUint> = BTreeMap::new();
        for (i, a) in &self.counts {
            for (j, b) in &other.counts {
                *counts.entry(i * j).or_default() += a * b;
            }
        }
        SubgroupCountTable {
            order: &self.order * &other.order,
            counts,
        }
    }
}

/// Formula-based table; per-prime tables are built in parallel.
pub fn subgroup_counts_by_index(a: &AbelianShape) -> SubgroupCountTable {
    let view: Vec<(u64, Vec<u32>)> = a.primary_view().into_iter().collect();
    let tables: Vec<SubgroupCountTable> = view
        .par_iter()
        .map(|(p, lambda)| {
            let pb = BigUint::from(*p);
            let raw = prime_table(*p, lambda);
            let weight: u32 = lambda.iter().sum();
            let counts = raw
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (pb.pow(k as u32), v))
                .collect();
            SubgroupCountTable {
                order: pb.pow(weight),
                counts,
            }
        })
        .collect();
    tables
        .iter()
        .fold(SubgroupCountTable::trivial(), |acc, t| acc.convolve(t))
}

/// `s_n(A)` without materializing the full index table: a depth-first walk
/// over per-prime index exponents with pruning at `n`.
pub fn s_n(a: &AbelianShape, n: &BigUint) -> BigUint {
    let tables: Vec<(BigUint, Vec<BigUint>)> = a
        .primary_view()
        .into_iter()
        .map(|(p, lambda)| (BigUint::from(p), prime_table(p, &lambda)))
        .collect();
    fn walk(tables: &[(BigUint, Vec<BigUint>)], index: &BigUint, n: &BigUint) -> BigUint {
        let Some(((p, counts), rest)) = tables.split_first() else {
            return BigUint::one();
        };
        let mut total = BigUint::zero();
        let mut idx = index.clone();
        for c in counts {
            if &idx > n {
                break;
            }
            if !c.is_zero() {
                total += c * walk(rest, &idx, n);
            }
            idx *= p;
        }
        total
    }
    walk(&tables, &BigUint::one(), n)
}

/// Element-level enumeration: starting from the trivial subgroup, repeatedly
/// adjoin an element of prime order modulo the current subgroup.
pub fn brute_force_counts(a: &AbelianShape) -> Result<SubgroupCountTable> {
    brute_force_counts_with(a, BRUTE_FORCE_MAX_ORDER, BRUTE_FORCE_MAX_SUBGROUPS)
}

pub fn brute_force_counts_with(
    a: &AbelianShape,
    max_order: u64,
    max_subgroups: usize,
) -> Result<SubgroupCountTable> {
    let order = a.order();
    let size = match order.to_u64() {
        Some(s) if s <= max_order => s as usize,
        _ => {
            return Err(Error::bound(
                format!("group order {order}"),
                max_order,
                "the element-level oracle materializes every element",
            ))
        }
    };
    let moduli: Vec<usize> = a.cyclic_orders().iter().map(|&x| x as usize).collect();
    // elements are mixed-radix integers, coordinate i in digit i
    let add = |mut x: usize, mut y: usize| -> usize {
        let (mut out, mut stride) = (0, 1);
        for &m in &moduli {
            out += (x % m + y % m) % m * stride;
            stride *= m;
            x /= m;
            y /= m;
        }
        out
    };
    let words = size.div_ceil(64);
    let has = |set: &[u64], x: usize| set[x / 64] >> (x % 64) & 1 == 1;

    let mut trivial = vec![0u64; words];
    trivial[0] = 1;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(trivial.clone());
    let mut frontier = vec![trivial];
    let mut counts: BTreeMap<BigUint, BigUint> = BTreeMap::new();
    while let Some(h) = frontier.pop() {
        let members: Vec<usize> = (0..size).filter(|&x| has(&h, x)).collect();
        *counts
            .entry(BigUint::from(size / members.len()))
            .or_default() += 1u32;
        let mut covered = h.clone();
        for g in 0..size {
            if has(&covered, g) {
                continue;
            }
            // order of g modulo h
            let mut k = 1;
            let mut mult = g;
            while !has(&h, mult) {
                mult = add(mult, g);
                k += 1;
            }
            if !crate::arith::is_prime(k as u64) {
                continue;
            }
            let mut ext = h.clone();
            let mut shift = g;
            for _ in 1..k {
                for &m in &members {
                    let y = add(m, shift);
                    ext[y / 64] |= 1 << (y % 64);
                }
                shift = add(shift, g);
            }
            for (c, e) in covered.iter_mut().zip(&ext) {
                *c |= e;
            }
            if seen.insert(ext.clone()) {
                if seen.len() > max_subgroups {
                    return Err(Error::bound(
                        format!("subgroup count of {a}"),
                        max_subgroups,
                        "use the formula path",
                    ));
                }
                frontier.push(ext);
            }
        }
    }
    Ok(SubgroupCountTable { order, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(v: &[u64]) -> AbelianShape {
        AbelianShape::new(v.to_vec()).unwrap()
    }

    fn table(pairs: &[(u64, u64)]) -> BTreeMap<BigUint, BigUint> {
        pairs
            .iter()
            .map(|&(k, v)| (BigUint::from(k), BigUint::from(v)))
            .collect()
    }

    #[test]
    fn gaussian() {
        let q = BigUint::from(7u32);
        assert_eq!(gaussian_binomial(2, 1, &q), BigUint::from(8u32));
        assert_eq!(
            gaussian_binomial(4, 2, &BigUint::from(2u32)),
            BigUint::from(35u32)
        );
        assert_eq!(gaussian_binomial(5, 0, &q), BigUint::one());
        assert_eq!(gaussian_binomial(2, 3, &q), BigUint::zero());
        assert_eq!(gaussian_binomial(2, -1, &q), BigUint::zero());
    }

    #[test]
    fn small_tables() {
        let t = subgroup_counts_by_index(&shape(&[2, 2]));
        assert_eq!(t.counts, table(&[(1, 1), (2, 3), (4, 1)]));
        assert_eq!(t.total(), BigUint::from(5u32));
        let t = subgroup_counts_by_index(&shape(&[2, 4]));
        assert_eq!(t.counts, table(&[(1, 1), (2, 3), (4, 3), (8, 1)]));
        let t = subgroup_counts_by_index(&shape(&[3, 3]));
        assert_eq!(t.counts, table(&[(1, 1), (3, 4), (9, 1)]));
        let t = subgroup_counts_by_index(&shape(&[12]));
        assert_eq!(
            t.counts,
            table(&[(1, 1), (2, 1), (3, 1), (4, 1), (6, 1), (12, 1)])
        );
        let t = subgroup_counts_by_index(&AbelianShape::trivial());
        assert_eq!(t.counts, table(&[(1, 1)]));
    }

    #[test]
    fn s_n_values() {
        let a = shape(&[2, 2]);
        assert_eq!(s_n(&a, &BigUint::from(2u32)), BigUint::from(4u32));
        assert_eq!(s_n(&a, &BigUint::one()), BigUint::one());
        let b = shape(&[4, 6, 9, 10]);
        let t = subgroup_counts_by_index(&b);
        for n in [1u64, 5, 17, 100, 1000, 4320, 100000] {
            assert_eq!(s_n(&b, &BigUint::from(n)), t.s_n(&BigUint::from(n)));
        }
        assert_eq!(s_n(&b, &b.order()), t.total());
    }

    #[test]
    fn brute_small() {
        let t = brute_force_counts(&shape(&[3, 3])).unwrap();
        assert_eq!(t.counts, table(&[(1, 1), (3, 4), (9, 1)]));
        let t = brute_force_counts(&AbelianShape::trivial()).unwrap();
        assert_eq!(t.counts, table(&[(1, 1)]));
        for s in [
            vec![2, 4],
            vec![2, 2, 2],
            vec![4, 8],
            vec![6, 6],
            vec![2, 3, 4, 5],
        ] {
            let s = shape(&s);
            assert_eq!(
                brute_force_counts(&s).unwrap(),
                subgroup_counts_by_index(&s),
                "{s}"
            );
        }
        assert!(matches!(
            brute_force_counts(&shape(&[101, 101])),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn shapes() {
        let s = shape(&[12, 1, 18]);
        assert_eq!(s.cyclic_orders(), &[12, 18]);
        assert_eq!(s.invariant_factors(), vec![6, 36]);
        let mut expect = BTreeMap::new();
        expect.insert(2, vec![2, 1]);
        expect.insert(3, vec![2, 1]);
        assert_eq!(s.primary_view(), expect);
        assert!(s.is_isomorphic(&shape(&[4, 9, 2, 3])));
        assert_eq!(abelian_types_of_order(72).len(), 6);
        assert_eq!(abelian_types_of_order(1024).len(), 42);
        assert_eq!(abelian_types_of_order(1), vec![AbelianShape::trivial()]);
        assert!(AbelianShape::new(vec![0]).is_err());
    }

    #[test]
    fn elementary_abelian_is_gaussian() {
        for p in [2u64, 3, 5] {
            for t in 1..6usize {
                let tab = subgroup_counts_by_index(&shape(&vec![p; t]));
                for b in 0..=t {
                    let idx = BigUint::from(p).pow(b as u32);
                    let g = gaussian_binomial(t as i64, b as i64, &BigUint::from(p));
                    assert_eq!(tab.count(&idx), g);
                }
            }
        }
    }

    #[test]
    fn big_elementary_total() {
        let tab = subgroup_counts_by_index(&shape(&[2; 10]));
        assert_eq!(tab.total(), BigUint::from(229_755_605u64));
    }
}
