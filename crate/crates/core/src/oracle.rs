//! Independent brute-force oracles.
//!
//! Each routine here recomputes something the library computes by formula,
//! using a deliberately different method. They are public so the acceptance
//! suite, the self-check command and the examples can all reach them, but
//! nothing in the main computation paths depends on them.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::abcount::{AbelianShape, SubgroupCountTable};
use crate::error::{Error, Result};
use crate::extremal::ExtremalInstance;

/// Subgroup counts via sublattices.
///
/// Subgroups of `Z^t / diag(x)` are the lattices `L` with
/// `diag(x) Z^t <= L <= Z^t`. Each has a unique lower-triangular basis with
/// rows `(b_1, ..., b_{i-1}, d_i, 0, ...)`, `0 <= b_j < d_j`, and containment
/// of `x_i e_i` means `d_i | x_i` and `(x_i / d_i) (b_1..b_{i-1})` lies in the
/// span of the earlier rows. The index of the subgroup is `prod d_i`.
pub fn lattice_subgroup_counts(a: &AbelianShape) -> SubgroupCountTable {
    let x: Vec<i64> = a.invariant_factors().iter().map(|&v| v as i64).collect();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    if x.is_empty() {
        counts.insert(1, 1);
    } else {
        lattice_rows(&x, &mut rows, 1, &mut counts);
    }
    SubgroupCountTable {
        order: a.order(),
        counts: counts
            .into_iter()
            .map(|(k, v)| (BigUint::from(k), BigUint::from(v)))
            .collect(),
    }
}

fn lattice_rows(x: &[i64], rows: &mut Vec<Vec<i64>>, index: u64, counts: &mut BTreeMap<u64, u64>) {
    let i = rows.len();
    let last = i + 1 == x.len();
    for d in 1..=x[i] {
        if x[i] % d != 0 {
            continue;
        }
        let c = x[i] / d;
        let residual = vec![0i64; i];
        let mut b = vec![0i64; i];
        if last {
            let n = count_solutions(rows, c, i, residual, &mut b);
            if n > 0 {
                *counts.entry(index * d as u64).or_default() += n;
            }
        } else {
            let mut found: Vec<Vec<i64>> = Vec::new();
            collect_solutions(rows, c, i, residual, &mut b, &mut found);
            for mut row in found {
                row.push(d);
                rows.push(row);
                lattice_rows(x, rows, index * d as u64, counts);
                rows.pop();
            }
        }
    }
}

/// Solutions `y` in `[0, m)` of `c y = rhs (mod m)`, as `(first, step, count)`.
fn congruence(c: i64, rhs: i64, m: i64) -> Option<(i64, i64, i64)> {
    let g = c.gcd(&m);
    if rhs.rem_euclid(g) != 0 {
        return None;
    }
    let m2 = m / g;
    let c2 = (c / g).rem_euclid(m2);
    let r2 = (rhs / g).rem_euclid(m2);
    let inv = mod_inverse(c2, m2);
    Some(((r2 * inv).rem_euclid(m2.max(1)), m2, g))
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = a.extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// Walk coordinates from the highest down; `residual[j]` collects what the
/// already-subtracted rows contributed at coordinate `j`.
fn collect_solutions(
    rows: &[Vec<i64>],
    c: i64,
    j_plus_1: usize,
    residual: Vec<i64>,
    b: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if j_plus_1 == 0 {
        out.push(b.clone());
        return;
    }
    let j = j_plus_1 - 1;
    let dj = rows[j][j];
    let Some((first, step, n)) = congruence(c, -residual[j], dj) else {
        return;
    };
    for k in 0..n {
        let bj = first + k * step;
        b[j] = bj;
        let coef = (c * bj + residual[j]) / dj;
        let mut next = residual.clone();
        for (l, r) in next.iter_mut().enumerate().take(j) {
            *r -= coef * rows[j][l];
        }
        collect_solutions(rows, c, j, next, b, out);
    }
}

fn count_solutions(
    rows: &[Vec<i64>],
    c: i64,
    j_plus_1: usize,
    residual: Vec<i64>,
    b: &mut Vec<i64>,
) -> u64 {
    if j_plus_1 == 0 {
        return 1;
    }
    let j = j_plus_1 - 1;
    let dj = rows[j][j];
    let Some((first, step, n)) = congruence(c, -residual[j], dj) else {
        return 0;
    };
    if j == 0 {
        return n as u64;
    }
    let mut total = 0;
    for k in 0..n {
        let bj = first + k * step;
        b[j] = bj;
        let coef = (c * bj + residual[j]) / dj;
        let mut next = residual.clone();
        for (l, r) in next.iter_mut().enumerate().take(j) {
            *r -= coef * rows[j][l];
        }
        total += count_solutions(rows, c, j, next, b);
    }
    total
}

/// `k`-dimensional subspaces of `F_p^n` counted by collecting the row spaces
/// of every `k`-tuple of vectors of rank `k`.
pub fn count_subspaces(n: u32, k: u32, p: u64) -> u64 {
    let size = p.pow(n);
    let decode = |mut x: u64| -> Vec<u64> {
        (0..n)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    };
    let encode = |v: &[u64]| -> u64 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let span_of = |basis: &[u64]| -> Vec<u64> {
        let mut set: HashSet<u64> = HashSet::new();
        set.insert(0);
        for &v in basis {
            let cur: Vec<u64> = set.iter().copied().collect();
            let vv = decode(v);
            for s in cur {
                let sv = decode(s);
                for m in 1..p {
                    let w: Vec<u64> = sv.iter().zip(&vv).map(|(a, b)| (a + m * b) % p).collect();
                    set.insert(encode(&w));
                }
            }
        }
        let mut out: Vec<u64> = set.into_iter().collect();
        out.sort();
        out
    };
    let mut spaces: HashSet<Vec<u64>> = HashSet::new();
    let mut stack: Vec<Vec<u64>> = vec![Vec::new()];
    while let Some(basis) = stack.pop() {
        if basis.len() == k as usize {
            spaces.insert(span_of(&basis));
            continue;
        }
        let span = span_of(&basis);
        let start = basis.last().map_or(1, |&v| v + 1);
        for v in start..size {
            if span.binary_search(&v).is_err() {
                let mut nb = basis.clone();
                nb.push(v);
                stack.push(nb);
            }
        }
    }
    spaces.len() as u64
}

/// Second solver for the extremal problem at desk scale.
///
/// Walks multisets of cyclic orders largest factor first (the exhaustive
/// solver goes smallest first), counts subgroups by listing sublattices
/// rather than by formula, and tries every subgroup index as `r`. Tables are kept across
/// calls, so one instance can serve a whole battery.
pub struct ExtremalOracle {
    max_order: u64,
    shapes: Vec<(u64, Vec<u64>, Vec<u64>)>,
    tables: HashMap<Vec<u64>, Vec<(u64, u64)>>,
}

/// `(best orders, best r, best count)` as found by [`ExtremalOracle`].
pub type OracleOptimum = (Vec<u64>, BigUint, BigUint);

impl ExtremalOracle {
    /// Prepares every multiset of orders with product at most `max_order`.
    pub fn new(max_order: u64) -> Self {
        fn rec(rest: u64, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<(u64, Vec<u64>)>, prod: u64) {
            let mut sorted = cur.clone();
            sorted.reverse();
            out.push((prod, sorted));
            for x in (2..=cap.min(rest)).rev() {
                cur.push(x);
                rec(rest / x, x, cur, out, prod * x);
                cur.pop();
            }
        }
        let mut raw = Vec::new();
        rec(max_order, max_order, &mut Vec::new(), &mut raw, 1);
        let shapes = raw
            .into_iter()
            .map(|(order, orders)| {
                let key = AbelianShape::new(orders.clone())
                    .expect("orders >= 2")
                    .invariant_factors();
                (order, orders, key)
            })
            .collect();
        ExtremalOracle {
            max_order,
            shapes,
            tables: HashMap::new(),
        }
    }

    fn cumulative(&mut self, key: &[u64]) -> Result<&[(u64, u64)]> {
        if !self.tables.contains_key(key) {
            let table = lattice_subgroup_counts(&AbelianShape::new(key.to_vec())?);
            let mut acc = 0u64;
            let cum = table
                .counts
                .iter()
                .map(|(k, v)| {
                    acc += v.to_u64().expect("small table");
                    (k.to_u64().expect("small index"), acc)
                })
                .collect();
            self.tables.insert(key.to_vec(), cum);
        }
        Ok(&self.tables[key])
    }

    pub fn solve(&mut self, inst: &ExtremalInstance) -> Result<OracleOptimum> {
        let (a, b) = inst.exponents();
        let nb = inst.n.pow(b);
        let limit = inst.max_order();
        if limit > BigUint::from(self.max_order) {
            return Err(Error::bound(
                format!("largest admissible order {limit}"),
                self.max_order,
                "build the oracle with a larger order",
            ));
        }
        let mut best: Option<(u64, u64, Vec<u64>, u64)> = None;
        let shapes = std::mem::take(&mut self.shapes);
        for (order, orders, key) in &shapes {
            if BigUint::from(*order).pow(a) > nb {
                continue;
            }
            if orders
                .iter()
                .any(|x| orders.iter().filter(|y| *y == x).count() > inst.d as usize)
            {
                continue;
            }
            let cum = self.cumulative(key)?;
            for &(r, count) in cum {
                if BigUint::from(r).pow(b) * BigUint::from(*order).pow(a) > nb {
                    break;
                }
                let wins = match &best {
                    None => true,
                    Some((bc, bo, bl, br)) => {
                        (
                            count,
                            std::cmp::Reverse(*order),
                            std::cmp::Reverse(orders),
                            std::cmp::Reverse(r),
                        ) > (
                            *bc,
                            std::cmp::Reverse(*bo),
                            std::cmp::Reverse(bl),
                            std::cmp::Reverse(*br),
                        )
                    }
                };
                if wins {
                    best = Some((count, *order, orders.clone(), r));
                }
            }
        }
        self.shapes = shapes;
        let (count, _, orders, r) = best.expect("the trivial group always fits");
        Ok((orders, BigUint::from(r), BigUint::from(count)))
    }
}

/// Full root system as the orbit of the simple roots under the simple
/// reflections `s_i(b) = b - <b, a_i^vee> a_i`; returns the positive ones,
/// sorted.
pub fn reflection_orbit_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(b) = stack.pop() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..l {
            let pairing: i64 = (0..l).map(|j| b[j] * cartan[i][j]).sum();
            if pairing != 0 {
                let mut r = b.clone();
                r[i] -= pairing;
                if !seen.contains(&r) {
                    stack.push(r);
                }
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect();
    pos.sort();
    pos
}

/// Diagram automorphisms by testing every permutation of the nodes against
/// the Cartan matrix.
pub fn cartan_symmetries_brute(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    fn perms(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                perms(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let l = cartan.len();
    let mut all = Vec::new();
    perms(l, &mut Vec::new(), &mut vec![false; l], &mut all);
    all.retain(|p| (0..l).all(|i| (0..l).all(|j| cartan[p[i]][p[j]] == cartan[i][j])));
    all
}

/// `|SL_2(F_p)|` by testing all `p^4` matrices.
pub fn sl2_order_brute(p: u64) -> u64 {
    let mut count = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// `|SU_3(F_2)|` by testing all `4^9` matrices over `F_4` for unit
/// determinant and `conj(A)^T A = I`.
pub fn su3_order_f2_brute() -> u64 {
    // F_4 = {0, 1, w, w + 1} as bit pairs, w^2 = w + 1; Frobenius squares
    let mul = |x: u8, y: u8| -> u8 {
        let mut r = 0u8;
        for i in 0..2 {
            if y >> i & 1 == 1 {
                r ^= x << i;
            }
        }
        if r & 4 != 0 {
            r ^= 0b111;
        }
        r
    };
    let conj = |x: u8| mul(x, x);
    let mut count = 0;
    for code in 0u32..1 << 18 {
        let m: Vec<u8> = (0..9).map(|i| (code >> (2 * i) & 3) as u8).collect();
        let e = |i: usize, j: usize| m[3 * i + j];
        let unitary = (0..3).all(|i| {
            (0..3).all(|j| {
                let s = (0..3).fold(0u8, |acc, k| acc ^ mul(conj(e(k, i)), e(k, j)));
                s == u8::from(i == j)
            })
        });
        if !unitary {
            continue;
        }
        let det = mul(e(0, 0), mul(e(1, 1), e(2, 2)) ^ mul(e(1, 2), e(2, 1)))
            ^ mul(e(0, 1), mul(e(1, 0), e(2, 2)) ^ mul(e(1, 2), e(2, 0)))
            ^ mul(e(0, 2), mul(e(1, 0), e(2, 1)) ^ mul(e(1, 1), e(2, 0)));
        if det == 1 {
            count += 1;
        }
    }
    count
}
