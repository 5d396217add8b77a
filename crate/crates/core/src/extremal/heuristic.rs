//! Structured search for large budgets.
//!
//! Seeds are groups `prod_m C_{B m}` where `m` runs over the first `t`
//! `y`-smooth integers and every order is repeated `e <= d` times. The best
//! seeds are then polished by local search (add, drop or swap one cyclic
//! factor). Candidates are screened with `log2 s_r(A)` in floating point and
//! the finalists are re-evaluated exactly.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{better, normalized_ratio, ExtremalInstance, ExtremalResult};
use crate::abcount::{prime_table, AbelianShape};
use crate::arith::factor;
use crate::error::{Error, Result};
use crate::real::{Real, DEFAULT_DIGITS};
use crate::rootsys::gamma_of_r;

#[derive(Clone, Debug)]
pub struct HeuristicConfig {
    /// Primes allowed in cyclic orders.
    pub smooth_primes: Vec<u64>,
    /// Largest base `B` tried for seeds.
    pub max_base: u64,
    /// Seeds kept for local search.
    pub seeds: usize,
    /// Cap on local-search improvement rounds per seed.
    pub rounds: usize,
    /// Candidates re-evaluated exactly at the end.
    pub finalists: usize,
    /// Fresh candidate evaluations allowed during local search, over all
    /// seeds. Keeps the run time bounded for huge budgets.
    pub local_evaluations: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            smooth_primes: vec![2, 3, 5, 7],
            max_base: 64,
            seeds: 6,
            rounds: 40,
            finalists: 12,
            local_evaluations: 20_000,
        }
    }
}

fn lse(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.log2() + shift as f64
}

/// `log2` of the subgroup counts of a `p`-group of type `lambda`, by index
/// exponent up to `cap`. Mirrors the exact column recursion in floating
/// point; by self-duality the count of index `p^k` is the count of order
/// `p^k`, so only subgroups of weight `<= cap` are tracked.
fn log_prime_table(p: u64, lambda: &[u32], cap: u32) -> Vec<f64> {
    let weight: u32 = lambda.iter().sum::<u32>().min(cap);
    let cols = crate::arith::conjugate(lambda);
    let m = cols.len();
    let lp = (p as f64).log2();
    let top = cols.first().copied().unwrap_or(0) as usize;
    // s[j] = sum_{i<=j} log2(p^i - 1)
    let mut s = vec![0.0f64; top + 1];
    for j in 1..=top {
        let x = j as f64 * lp;
        s[j] = s[j - 1] + x + (-(-x).exp2()).ln_1p() / std::f64::consts::LN_2;
    }
    let gauss = |n: u32, k: u32| s[n as usize] - s[(n - k) as usize] - s[k as usize];
    let mut tail: Vec<Vec<f64>> = Vec::new();
    for i in (0..m).rev() {
        let c = cols[i];
        let next_cap = if i + 1 < m { cols[i + 1] } else { 0 };
        let mut fresh = Vec::with_capacity(c as usize + 1);
        for a in 0..=c {
            let mut acc = vec![f64::NEG_INFINITY; weight as usize + 1];
            for b in 0..=a.min(next_cap) {
                let t = (b * (c - a)) as f64 * lp + gauss(c - b, a - b);
                if i + 1 < m {
                    for (w, v) in tail[b as usize].iter().enumerate() {
                        if w + a as usize > weight as usize {
                            break;
                        }
                        if *v > f64::NEG_INFINITY {
                            let slot = &mut acc[w + a as usize];
                            *slot = lse(*slot, t + v);
                        }
                    }
                } else if a <= weight {
                    let slot = &mut acc[a as usize];
                    *slot = lse(*slot, t);
                }
            }
            fresh.push(acc);
        }
        tail = fresh;
    }
    let mut by_weight = vec![f64::NEG_INFINITY; weight as usize + 1];
    if m == 0 {
        by_weight[0] = 0.0;
    }
    for row in &tail {
        for (w, v) in row.iter().enumerate() {
            by_weight[w] = lse(by_weight[w], *v);
        }
    }
    by_weight
}

type TableCache<T> = Mutex<HashMap<(u64, Vec<u32>, u32), Arc<T>>>;

struct Evaluator<'a> {
    inst: &'a ExtremalInstance,
    log_tables: TableCache<Vec<f64>>,
    smooth: Vec<u64>,
}

impl<'a> Evaluator<'a> {
    fn new(inst: &'a ExtremalInstance, smooth: &[u64]) -> Self {
        Evaluator {
            inst,
            log_tables: Mutex::new(HashMap::new()),
            smooth: smooth.to_vec(),
        }
    }

    fn lambda(&self, orders: &[u64]) -> Vec<(u64, Vec<u32>)> {
        let mut view: HashMap<u64, Vec<u32>> = HashMap::new();
        for &x in orders {
            for (p, e) in factor(x) {
                view.entry(p).or_default().push(e);
            }
        }
        let mut out: Vec<(u64, Vec<u32>)> = view
            .into_iter()
            .map(|(p, mut v)| {
                v.sort_by(|a, b| b.cmp(a));
                (p, v)
            })
            .collect();
        out.sort();
        out
    }

    fn order(orders: &[u64]) -> BigUint {
        orders.iter().fold(BigUint::one(), |acc, &x| acc * x)
    }

    fn log_table(&self, p: u64, lambda: &[u32], cap: u32) -> Arc<Vec<f64>> {
        let key = (p, lambda.to_vec(), cap);
        if let Some(t) = self.log_tables.lock().unwrap().get(&key) {
            return t.clone();
        }
        let t = Arc::new(log_prime_table(p, lambda, cap));
        self.log_tables.lock().unwrap().insert(key, t.clone());
        t
    }

    /// `log2 s_{r_max}(A)`, or `None` when `A` does not fit the budget.
    fn score(&self, orders: &[u64]) -> Option<f64> {
        let r_max = self.inst.r_max(&Self::order(orders))?;
        let budget = log2_big(&r_max) + 1e-9;
        let mut tables: Vec<(f64, Arc<Vec<f64>>)> = self
            .lambda(orders)
            .into_iter()
            .map(|(p, l)| {
                let lp = (p as f64).log2();
                let cap = (budget / lp).floor() as u32;
                (lp, self.log_table(p, &l, cap))
            })
            .collect();
        if tables.is_empty() {
            return Some(0.0);
        }
        // the longest table is summed by prefix, the rest walked
        tables.sort_by_key(|(_, t)| t.len());
        let (last_lp, last) = tables.pop().expect("nonempty");
        let mut prefix = Vec::with_capacity(last.len());
        let mut acc = f64::NEG_INFINITY;
        for &v in last.iter() {
            acc = lse(acc, v);
            prefix.push(acc);
        }
        fn walk(
            tables: &[(f64, Arc<Vec<f64>>)],
            used: f64,
            budget: f64,
            last_lp: f64,
            prefix: &[f64],
        ) -> f64 {
            match tables.split_first() {
                None => {
                    let k = ((budget - used) / last_lp + 1e-12).floor();
                    if k < 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        prefix[(k as usize).min(prefix.len() - 1)]
                    }
                }
                Some(((lp, t), rest)) => {
                    let mut acc = f64::NEG_INFINITY;
                    for (k, v) in t.iter().enumerate() {
                        let u = used + k as f64 * lp;
                        if u > budget {
                            break;
                        }
                        if *v > f64::NEG_INFINITY {
                            acc = lse(acc, v + walk(rest, u, budget, last_lp, prefix));
                        }
                    }
                    acc
                }
            }
        }
        Some(walk(&tables, 0.0, budget, last_lp, &prefix))
    }

    fn admissible(&self, orders: &[u64]) -> bool {
        let d = self.inst.d as usize;
        orders.windows(d + 1).all(|w| w[0] != w[d])
            && self.inst.r_max(&Self::order(orders)).is_some()
    }

    fn is_smooth(&self, mut x: u64) -> bool {
        for &p in &self.smooth {
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        x == 1
    }
}

/// Exact `s_r(A)` and the largest subgroup index not exceeding `r`.
fn exact_count(orders: &[u64], r: &BigUint) -> (BigUint, BigUint) {
    let shape = AbelianShape::new(orders.to_vec()).expect("orders >= 2");
    let mut tables: Vec<(BigUint, Vec<BigUint>)> = shape
        .primary_view()
        .into_iter()
        .map(|(p, l)| (BigUint::from(p), prime_table(p, &l)))
        .collect();
    if tables.is_empty() {
        return (BigUint::one(), BigUint::one());
    }
    tables.sort_by_key(|(_, t)| t.len());
    let (last_p, last) = tables.pop().expect("nonempty");
    let mut prefix = Vec::with_capacity(last.len());
    let mut acc = BigUint::zero();
    for v in &last {
        acc += v;
        prefix.push(acc.clone());
    }
    let mut powers = vec![BigUint::one()];
    for _ in 1..last.len() {
        let next = powers.last().unwrap() * &last_p;
        powers.push(next);
    }
    fn walk(
        tables: &[(BigUint, Vec<BigUint>)],
        idx: &BigUint,
        r: &BigUint,
        last: &[BigUint],
        prefix: &[BigUint],
        powers: &[BigUint],
        best_index: &mut BigUint,
    ) -> BigUint {
        match tables.split_first() {
            None => {
                let room = r / idx;
                let k = powers.partition_point(|p| p <= &room);
                if k == 0 {
                    return BigUint::zero();
                }
                // every count in a p-group table is nonzero
                let top = idx * &powers[k - 1];
                debug_assert!(!last[k - 1].is_zero());
                if top > *best_index {
                    *best_index = top;
                }
                prefix[k - 1].clone()
            }
            Some(((p, t), rest)) => {
                let mut total = BigUint::zero();
                let mut cur = idx.clone();
                for c in t {
                    if &cur > r {
                        break;
                    }
                    total += c * walk(rest, &cur, r, last, prefix, powers, best_index);
                    cur *= p;
                }
                total
            }
        }
    }
    let mut best_index = BigUint::one();
    let count = walk(
        &tables,
        &BigUint::one(),
        r,
        &last,
        &prefix,
        &powers,
        &mut best_index,
    );
    (count, best_index)
}

fn smooth_numbers(primes: &[u64], limit: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut extra = Vec::new();
        for &x in &out {
            let mut y = x;
            while let Some(z) = y.checked_mul(p).filter(|&z| z <= limit) {
                extra.push(z);
                y = z;
            }
        }
        out.extend(extra);
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
struct Scored {
    score: f64,
    orders: Vec<u64>,
}

fn prefer(a: &Scored, b: &Scored) -> bool {
    // higher score, then fewer/lexicographically smaller orders
    if (a.score - b.score).abs() > 1e-9 * a.score.abs().max(1.0) {
        return a.score > b.score;
    }
    let pa: f64 = a.orders.iter().map(|&x| (x as f64).log2()).sum();
    let pb: f64 = b.orders.iter().map(|&x| (x as f64).log2()).sum();
    if (pa - pb).abs() > 1e-9 {
        return pa < pb;
    }
    a.orders < b.orders
}

fn best_of(items: Vec<Scored>) -> Option<Scored> {
    items
        .into_iter()
        .reduce(|x, y| if prefer(&y, &x) { y } else { x })
}

/// Sets one step away from `orders`. Small sets try every smooth order up to
/// twice the largest present; large ones only orders one prime step away
/// from an existing factor.
fn neighbours(orders: &[u64], primes: &[u64], max_order: u64) -> Vec<Vec<u64>> {
    let distinct: BTreeSet<u64> = orders.iter().copied().collect();
    let top = distinct.last().copied().unwrap_or(2);
    let limit = (2 * top).max(32).min(max_order);
    let small = distinct.len() <= 12;
    let full: Vec<u64> = smooth_numbers(primes, limit)
        .into_iter()
        .filter(|&x| x >= 2)
        .collect();
    let near = |x: u64| -> Vec<u64> {
        if small {
            return full.clone();
        }
        let mut out = BTreeSet::new();
        for &p in primes {
            out.insert(x * p);
            if x.is_multiple_of(p) {
                out.insert(x / p);
                for &q in primes {
                    out.insert(x / p * q);
                }
            }
        }
        out.into_iter().filter(|&y| y >= 2 && y <= limit).collect()
    };
    let with = |base: &[u64], y: u64| {
        let mut w = base.to_vec();
        w.push(y);
        w.sort();
        w
    };
    let without = |base: &[u64], x: u64| {
        let mut v = base.to_vec();
        v.remove(v.iter().position(|&u| u == x).unwrap());
        v
    };
    let mut moves = Vec::new();
    let mut extra: BTreeSet<u64> = full.iter().copied().filter(|&y| y <= 32).collect();
    for &x in &distinct {
        let v = without(orders, x);
        moves.push(v.clone());
        let ys = near(x);
        for &y in &ys {
            if y != x {
                moves.push(with(&v, y));
                if !distinct.contains(&y) {
                    // move every copy of x at once
                    let mut w: Vec<u64> =
                        orders.iter().map(|&z| if z == x { y } else { z }).collect();
                    w.sort();
                    moves.push(w);
                }
            }
        }
        extra.extend(ys);
    }
    // merge two factors into one
    if small {
        let xs: Vec<u64> = distinct.iter().copied().collect();
        for (i, &x) in xs.iter().enumerate() {
            for &z in &xs[i..] {
                if x == z && orders.iter().filter(|&&v| v == x).count() < 2 {
                    continue;
                }
                let v = without(&without(orders, x), z);
                for &y in &full {
                    moves.push(with(&v, y));
                }
            }
        }
    }
    for y in extra {
        moves.push(with(orders, y));
    }
    moves
}

pub fn solve_heuristic(inst: &ExtremalInstance) -> Result<ExtremalResult> {
    solve_heuristic_with(inst, &HeuristicConfig::default(), DEFAULT_DIGITS)
}

pub fn solve_heuristic_with(
    inst: &ExtremalInstance,
    cfg: &HeuristicConfig,
    digits: u32,
) -> Result<ExtremalResult> {
    let eval = Evaluator::new(inst, &cfg.smooth_primes);
    let max_order = inst.max_order();
    let max_order_u64 = max_order.to_u64().unwrap_or(u64::MAX);
    let seen: Mutex<HashMap<Vec<u64>, f64>> = Mutex::new(HashMap::new());
    let scored = |orders: Vec<u64>| -> Option<Scored> {
        if let Some(&s) = seen.lock().unwrap().get(&orders) {
            return Some(Scored { score: s, orders });
        }
        let s = eval.score(&orders)?;
        seen.lock().unwrap().insert(orders.clone(), s);
        Some(Scored { score: s, orders })
    };

    // seed family
    let multipliers: Vec<Vec<u64>> = (1..=cfg.smooth_primes.len())
        .map(|k| smooth_numbers(&cfg.smooth_primes[..k], 1 << 20))
        .collect();
    let bases: Vec<u64> = (1..=cfg.max_base.min(max_order_u64))
        .filter(|&b| eval.is_smooth(b))
        .collect();
    let mut params = Vec::new();
    for &b in &bases {
        for (yi, _) in multipliers.iter().enumerate() {
            for e in 1..=inst.d {
                params.push((b, yi, e));
            }
        }
    }
    let seeds: Vec<Scored> = params
        .par_iter()
        .filter_map(|&(b, yi, e)| {
            let mut orders: Vec<u64> = Vec::new();
            let mut best: Option<Scored> = None;
            let mut stale = 0;
            for &m in &multipliers[yi] {
                let x = b.checked_mul(m)?;
                if x < 2 {
                    continue;
                }
                let mut next = orders.clone();
                next.extend(std::iter::repeat_n(x, e as usize));
                next.sort();
                let Some(s) = scored(next.clone()) else {
                    break;
                };
                orders = next;
                if best.as_ref().is_none_or(|bst| prefer(&s, bst)) {
                    best = Some(s);
                    stale = 0;
                } else {
                    stale += 1;
                    if stale > 8 {
                        break;
                    }
                }
            }
            best
        })
        .collect();
    let mut seeds = seeds;
    seeds.sort_by(|a, b| {
        if prefer(a, b) {
            std::cmp::Ordering::Less
        } else if prefer(b, a) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    seeds.dedup_by(|a, b| a.orders == b.orders);
    let trivial = scored(Vec::new()).expect("trivial group fits");

    // local search
    let mut polished = Vec::new();
    let mut left = cfg.local_evaluations;
    for seed in seeds.iter().take(cfg.seeds) {
        let mut cur = seed.clone();
        for _ in 0..cfg.rounds {
            let mut moves = neighbours(&cur.orders, &cfg.smooth_primes, max_order_u64);
            moves.sort();
            moves.dedup();
            {
                let known = seen.lock().unwrap();
                let mut fresh = 0;
                moves.retain(|m| {
                    if known.contains_key(m) {
                        return true;
                    }
                    fresh += 1;
                    fresh <= left
                });
                left -= fresh.min(left);
            }
            let best = best_of(
                moves
                    .into_par_iter()
                    .filter(|m| eval.admissible(m))
                    .filter_map(&scored)
                    .collect(),
            );
            match best {
                Some(b)
                    if prefer(&b, &cur)
                        && b.score > cur.score + 1e-12 * cur.score.abs().max(1.0) =>
                {
                    cur = b
                }
                _ => break,
            }
            if left == 0 {
                break;
            }
        }
        polished.push(cur);
    }

    // exact re-evaluation of the finalists
    let mut pool: Vec<Scored> = seen
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|(orders, score)| Scored { score, orders })
        .collect();
    pool.push(trivial);
    pool.extend(polished);
    pool.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap()
            .then_with(|| a.orders.cmp(&b.orders))
    });
    pool.dedup_by(|a, b| a.orders == b.orders);
    pool.truncate(cfg.finalists.max(1));
    let exact: Vec<(BigUint, BigUint, Vec<u64>, BigUint)> = pool
        .par_iter()
        .map(|s| {
            let order = Evaluator::order(&s.orders);
            let r_max = inst.r_max(&order).expect("screened for admissibility");
            let (count, best_r) = exact_count(&s.orders, &r_max);
            (count, order, s.orders.clone(), best_r)
        })
        .collect();
    let (count, _, orders, best_r) = exact
        .into_iter()
        .reduce(|x, y| {
            if better((&y.0, &y.1, &y.2), (&x.0, &x.1, &x.2)) {
                y
            } else {
                x
            }
        })
        .expect("at least the trivial group");
    let primes: Vec<String> = cfg.smooth_primes.iter().map(|p| p.to_string()).collect();
    Ok(ExtremalResult {
        best_a: AbelianShape::new(orders)?,
        best_r,
        ratio: normalized_ratio(&count, &inst.n, digits)?,
        best_count: count,
        gamma_target: gamma_of_r(inst.r, digits)?,
        search_space_note: format!(
            "orders {{B m}} over the first t {{{}}}-smooth m, bases B <= {}, each repeated up to {} times, then local search over single-factor changes; a lower bound for the optimum",
            primes.join(","),
            cfg.max_base,
            inst.d
        ),
        lower_bound: true,
    })
}

/// One line of a convergence table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub n: BigUint,
    pub ratio: Real,
    pub gamma_target: Real,
    pub best_a: AbelianShape,
    pub best_r: BigUint,
}

impl Serialize for ConvergenceRow {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("ConvergenceRow", 5)?;
        st.serialize_field("n", &self.n.to_string())?;
        st.serialize_field("ratio", &self.ratio.to_string())?;
        st.serialize_field("gamma_target", &self.gamma_target.to_string())?;
        let orders: Vec<String> = self
            .best_a
            .cyclic_orders()
            .iter()
            .map(u64::to_string)
            .collect();
        st.serialize_field("best_A", &orders)?;
        st.serialize_field("best_r", &self.best_r.to_string())?;
        st.end()
    }
}

/// Heuristic optimum for each budget in `schedule`, which must be nonempty
/// and strictly increasing.
pub fn convergence_report(
    r: Rational64,
    d: u32,
    schedule: &[BigUint],
) -> Result<Vec<ConvergenceRow>> {
    if schedule.is_empty() {
        return Err(Error::validation("the schedule of n values is empty"));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::validation(
            "the schedule of n values must be strictly increasing",
        ));
    }
    schedule
        .iter()
        .map(|n| {
            let inst = ExtremalInstance::new(r, d, n.clone())?;
            let res = solve_heuristic(&inst)?;
            Ok(ConvergenceRow {
                n: n.clone(),
                ratio: res.ratio,
                gamma_target: res.gamma_target,
                best_a: res.best_a,
                best_r: res.best_r,
            })
        })
        .collect()
}
