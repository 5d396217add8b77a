//! The extremal abelian problem: over finite abelian groups
//! `A = C_{x_1} x ... x C_{x_t}` whose orders repeat at most `d` times, and
//! integers `r` with `r |A|^R <= n`, maximize `s_r(A)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::abcount::{subgroup_counts_by_index, AbelianShape};
use crate::error::{Error, Result};
use crate::real::{floor_root, Real, DEFAULT_DIGITS};
use crate::rootsys::gamma_of_r;

mod heuristic;
pub use heuristic::*;

/// Default largest `n` accepted by the exhaustive solver.
pub const EXHAUSTIVE_MAX_N: u64 = 1_000_000;

/// Tables of groups up to this order are kept in the solver cache.
const CACHE_ORDER_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalInstance {
    pub r: Rational64,
    pub d: u32,
    pub n: BigUint,
}

impl ExtremalInstance {
    pub fn new(r: Rational64, d: u32, n: BigUint) -> Result<Self> {
        if r < Rational64::one() {
            return Err(Error::validation(format!("R must be at least 1, got {r}")));
        }
        if d == 0 {
            return Err(Error::validation("d must be at least 1"));
        }
        if n < BigUint::from(2u32) {
            return Err(Error::validation(format!("n must be at least 2, got {n}")));
        }
        Ok(ExtremalInstance { r, d, n })
    }

    /// `R = a / b` in lowest terms.
    pub fn exponents(&self) -> (u32, u32) {
        (*self.r.numer() as u32, *self.r.denom() as u32)
    }

    /// Exact test of `r^b |A|^a <= n^b`.
    pub fn admits(&self, r: &BigUint, order: &BigUint) -> bool {
        let (a, b) = self.exponents();
        r.pow(b) * order.pow(a) <= self.n.pow(b)
    }

    /// Largest `|A|` with `|A|^a <= n^b`.
    pub fn max_order(&self) -> BigUint {
        let (a, b) = self.exponents();
        floor_root(&self.n.pow(b), a)
    }

    /// Largest admissible `r` for a group of the given order, if any.
    pub fn r_max(&self, order: &BigUint) -> Option<BigUint> {
        let (a, b) = self.exponents();
        let room = self.n.pow(b) / order.pow(a);
        if room.is_zero() {
            None
        } else {
            Some(floor_root(&room, b))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub best_a: AbelianShape,
    pub best_r: BigUint,
    pub best_count: BigUint,
    pub ratio: Real,
    pub gamma_target: Real,
    pub search_space_note: String,
    /// Set when the result comes from a restricted family.
    pub lower_bound: bool,
}

impl fmt::Display for ExtremalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A = {}, r = {}, s_r(A) = {}, ratio = {}, gamma = {}",
            self.best_a,
            self.best_r,
            self.best_count,
            self.ratio.to_fixed(12),
            self.gamma_target.to_fixed(12)
        )
    }
}

/// `log2(count) * log2(log2 n) / (log2 n)^2`.
pub fn normalized_ratio(count: &BigUint, n: &BigUint, digits: u32) -> Result<Real> {
    if count.is_zero() {
        return Err(Error::domain("subgroup counts are positive"));
    }
    let work = digits + 10;
    let log_n = Real::log2_int(n, work)?;
    let log_count = Real::log2_int(count, work)?;
    let loglog = log_n.log2()?;
    Ok(log_count
        .mul(&loglog)
        .div(&log_n.mul(&log_n))?
        .rescale(digits))
}

/// Candidate ordering: larger count, then smaller group, then the
/// lexicographically smaller sorted order list.
pub(crate) fn better(a: (&BigUint, &BigUint, &[u64]), b: (&BigUint, &BigUint, &[u64])) -> bool {
    a.0.cmp(b.0)
        .then_with(|| b.1.cmp(a.1))
        .then_with(|| b.2.cmp(a.2))
        .is_gt()
}

/// Cumulative index table: sorted indices with running subgroup totals.
struct Cumulative(Vec<(BigUint, BigUint)>);

impl Cumulative {
    fn of(a: &AbelianShape) -> Self {
        let table = subgroup_counts_by_index(a);
        let mut acc = BigUint::zero();
        Cumulative(
            table
                .counts
                .into_iter()
                .map(|(k, v)| {
                    acc += v;
                    (k, acc.clone())
                })
                .collect(),
        )
    }

    /// `(s_r, largest index <= r)`.
    fn at(&self, r: &BigUint) -> (BigUint, BigUint) {
        let pos = self.0.partition_point(|(k, _)| k <= r);
        let (k, c) = &self.0[pos - 1];
        (c.clone(), k.clone())
    }
}

/// Exact solver over every admissible multiset of cyclic orders. Holds a
/// cache of index tables so batteries of instances share work.
pub struct ExhaustiveSolver {
    max_n: BigUint,
    cache: Mutex<HashMap<Vec<u64>, Arc<Cumulative>>>,
}

impl Default for ExhaustiveSolver {
    fn default() -> Self {
        Self::new(BigUint::from(EXHAUSTIVE_MAX_N))
    }
}

impl ExhaustiveSolver {
    pub fn new(max_n: BigUint) -> Self {
        ExhaustiveSolver {
            max_n,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn cumulative(&self, key: &[u64], order: u64) -> Arc<Cumulative> {
        if let Some(c) = self.cache.lock().unwrap().get(key) {
            return c.clone();
        }
        let shape = AbelianShape::new(key.to_vec()).expect("valid orders");
        let c = Arc::new(Cumulative::of(&shape));
        if order <= CACHE_ORDER_LIMIT {
            self.cache.lock().unwrap().insert(key.to_vec(), c.clone());
        }
        c
    }

    pub fn solve(&self, inst: &ExtremalInstance) -> Result<ExtremalResult> {
        self.solve_with_digits(inst, DEFAULT_DIGITS)
    }

    pub fn solve_with_digits(
        &self,
        inst: &ExtremalInstance,
        digits: u32,
    ) -> Result<ExtremalResult> {
        if inst.n > self.max_n {
            return Err(Error::bound(
                format!("n = {}", inst.n),
                &self.max_n,
                "exhaustive search is desk-scale only; use the heuristic solver",
            ));
        }
        let max_order = inst.max_order().to_u64().expect("bounded by max_n");
        // first (lexicographically smallest) multiset for each isomorphism type
        let mut reps: HashMap<Vec<u64>, (Vec<u64>, u64)> = HashMap::new();
        let mut stack: Vec<u64> = Vec::new();
        enumerate_multisets(
            max_order,
            inst.d,
            2,
            1,
            &mut stack,
            &mut |orders, product| {
                let key = AbelianShape::new(orders.to_vec())
                    .expect("orders >= 2")
                    .invariant_factors();
                reps.entry(key)
                    .or_insert_with(|| (orders.to_vec(), product));
            },
        );
        let reps: Vec<(Vec<u64>, Vec<u64>, u64)> =
            reps.into_iter().map(|(k, (o, p))| (k, o, p)).collect();
        let best = reps
            .par_iter()
            .map(|(key, orders, product)| {
                let order = BigUint::from(*product);
                let r_max = inst.r_max(&order).expect("enumerated within budget");
                let (count, best_r) = self.cumulative(key, *product).at(&r_max);
                (count, order, orders.clone(), best_r)
            })
            .reduce_with(|x, y| {
                if better((&y.0, &y.1, &y.2), (&x.0, &x.1, &x.2)) {
                    y
                } else {
                    x
                }
            })
            .expect("the trivial group is always admissible");
        let (count, _, orders, best_r) = best;
        Ok(ExtremalResult {
            best_a: AbelianShape::new(orders).expect("valid"),
            best_r,
            ratio: normalized_ratio(&count, &inst.n, digits)?,
            best_count: count,
            gamma_target: gamma_of_r(inst.r, digits)?,
            search_space_note: format!(
                "all multisets of cyclic orders with multiplicity <= {} and |A|^{} <= n^{}",
                inst.d,
                inst.exponents().0,
                inst.exponents().1
            ),
            lower_bound: false,
        })
    }
}

/// Nondecreasing sequences of integers `>= min` with product `<= max`, each
/// value used at most `d` times, visited in lexicographic order.
fn enumerate_multisets(
    max: u64,
    d: u32,
    min: u64,
    product: u64,
    stack: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64], u64),
) {
    visit(stack, product);
    let mut x = min;
    while product * x <= max {
        let run = stack.iter().rev().take_while(|&&y| y == x).count() as u32;
        if run < d {
            stack.push(x);
            enumerate_multisets(max, d, x, product * x, stack, visit);
            stack.pop();
        }
        x += 1;
    }
}

pub fn solve_exhaustive(inst: &ExtremalInstance) -> Result<ExtremalResult> {
    ExhaustiveSolver::default().solve(inst)
}
