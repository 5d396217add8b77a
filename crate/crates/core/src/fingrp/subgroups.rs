use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::FiniteMatrixGroup;
use crate::arith::prime_power;
use crate::error::{Error, Result};

/// Default cap on `|G|` for subgroup enumeration.
pub const ENUMERATION_MAX_ORDER: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    /// Sorted element indices into the parent group.
    pub elements: Vec<u32>,
    pub order: usize,
    pub index: usize,
}

impl Subgroup {
    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Element set of a subgroup as a bitset over the parent's indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits(pub(crate) Vec<u64>);

impl Bits {
    pub(crate) fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    #[inline]
    pub(crate) fn has(&self, x: u32) -> bool {
        self.0[x as usize / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, x: u32) {
        self.0[x as usize / 64] |= 1 << (x % 64);
    }

    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn members(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut v = word;
            while v != 0 {
                out.push((w * 64) as u32 + v.trailing_zeros());
                v &= v - 1;
            }
        }
        out
    }
}

/// Subgroup generated by `base` (already a subgroup, or just the identity)
/// together with `gens`. Multiplying on the right by generators suffices in
/// a finite group.
pub(crate) fn close(g: &FiniteMatrixGroup, base: &Bits, gens: &[u32]) -> Bits {
    let mut set = base.clone();
    set.set(g.identity());
    let mut queue = set.members();
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !set.has(y) {
                set.set(y);
                queue.push(y);
            }
        }
    }
    set
}

fn check_bound(g: &FiniteMatrixGroup, bound: usize) -> Result<()> {
    if g.order() > bound {
        return Err(Error::bound(
            format!("group order {}", g.order()),
            bound,
            "subgroup enumeration materializes every subgroup",
        ));
    }
    Ok(())
}

fn finish(g: &FiniteMatrixGroup, sets: impl IntoIterator<Item = Bits>) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = sets
        .into_iter()
        .map(|b| {
            let elements = b.members();
            let order = elements.len();
            Subgroup {
                elements,
                order,
                index: g.order() / order,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.elements.cmp(&b.elements))
    });
    out
}

/// Every subgroup, by cyclic extension: start from the trivial group and
/// repeatedly adjoin a cyclic subgroup of prime-power order. Every subgroup
/// is generated by such cyclic subgroups, so each is reached.
pub fn enumerate_subgroups(g: &FiniteMatrixGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_with(g, ENUMERATION_MAX_ORDER)
}

pub fn enumerate_subgroups_with(g: &FiniteMatrixGroup, bound: usize) -> Result<Vec<Subgroup>> {
    check_bound(g, bound)?;
    let n = g.order();
    let mut cyclic: Vec<(u32, Bits)> = Vec::new();
    let mut seen_cyclic: HashSet<Bits> = HashSet::new();
    for a in 0..n as u32 {
        if prime_power(g.element_order(a) as u64).is_none() {
            continue;
        }
        let c = close(g, &Bits::empty(n), &[a]);
        if seen_cyclic.insert(c.clone()) {
            cyclic.push((a, c));
        }
    }
    let mut trivial = Bits::empty(n);
    trivial.set(g.identity());
    let mut seen: HashSet<Bits> = HashSet::from([trivial.clone()]);
    let mut frontier: Vec<(Bits, Vec<u32>)> = vec![(trivial, Vec::new())];
    while !frontier.is_empty() {
        let found: Vec<Vec<(Bits, Vec<u32>)>> = frontier
            .par_iter()
            .map(|(h, gens)| {
                let mut local: HashMap<Bits, Vec<u32>> = HashMap::new();
                let mut order = Vec::new();
                for (c, cset) in &cyclic {
                    if cset.is_subset(h) {
                        continue;
                    }
                    let mut next = gens.clone();
                    next.push(*c);
                    let k = close(g, h, &next);
                    if let std::collections::hash_map::Entry::Vacant(e) = local.entry(k) {
                        order.push(e.key().clone());
                        e.insert(next);
                    }
                }
                order
                    .into_iter()
                    .map(|k| {
                        let gens = local.remove(&k).expect("recorded");
                        (k, gens)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (k, gens) in found.into_iter().flatten() {
            if seen.insert(k.clone()) {
                next.push((k, gens));
            }
        }
        frontier = next;
    }
    Ok(finish(g, seen))
}

/// Second enumerator: start from every cyclic subgroup and close the family
/// under joins of pairs until nothing new appears.
pub fn enumerate_subgroups_naive(g: &FiniteMatrixGroup, bound: usize) -> Result<Vec<Subgroup>> {
    check_bound(g, bound)?;
    let n = g.order();
    let mut family: Vec<(Bits, Vec<u32>)> = Vec::new();
    let mut seen: HashSet<Bits> = HashSet::new();
    for a in 0..n as u32 {
        let c = close(g, &Bits::empty(n), &[a]);
        if seen.insert(c.clone()) {
            family.push((c, vec![a]));
        }
    }
    let mut start = 0;
    while start < family.len() {
        let end = family.len();
        let joins: Vec<(Bits, Vec<u32>)> = (0..end)
            .into_par_iter()
            .flat_map_iter(|i| {
                let (a, ga) = &family[i];
                let lo = if i < start { start } else { i + 1 };
                let family = &family;
                (lo..end).filter_map(move |j| {
                    let (b, gb) = &family[j];
                    if a.is_subset(b) || b.is_subset(a) {
                        return None;
                    }
                    let gens: Vec<u32> = ga.iter().chain(gb).copied().collect();
                    Some((close(g, a, &gens), gens))
                })
            })
            .collect();
        for (k, gens) in joins {
            if seen.insert(k.clone()) {
                family.push((k, gens));
            }
        }
        start = end;
    }
    Ok(finish(g, family.into_iter().map(|(b, _)| b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> FiniteMatrixGroup {
        // i = [[0,-1],[1,0]], j = [[1,1],[1,-1]] over Z/3
        FiniteMatrixGroup::generate(3, 2, vec![vec![0, 2, 1, 0], vec![1, 1, 1, 2]], 1000).unwrap()
    }

    #[test]
    fn quaternion() {
        let g = q8();
        assert_eq!(g.order(), 8);
        let subs = enumerate_subgroups(&g).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(subs, enumerate_subgroups_naive(&g, 1000).unwrap());
    }

    #[test]
    fn cyclic_six() {
        // diag(3, 5) over Z/7 has order 6
        let g = FiniteMatrixGroup::generate(7, 2, vec![vec![3, 0, 0, 5]], 1000).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(enumerate_subgroups(&g).unwrap().len(), 4);
    }

    #[test]
    fn sl2_f5_matches_naive() {
        let g = FiniteMatrixGroup::special_linear(2, 5, 1000).unwrap();
        let a = enumerate_subgroups(&g).unwrap();
        assert_eq!(a, enumerate_subgroups_naive(&g, 1000).unwrap());
        assert_eq!(a.len(), 76);
        for s in &a {
            assert_eq!(s.order * s.index, 120);
            for &x in &s.elements {
                assert!(s.contains(g.inv(x)));
                for &y in &s.elements {
                    assert!(s.contains(g.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn bound_refusal() {
        let g = FiniteMatrixGroup::special_linear(2, 5, 1000).unwrap();
        assert_eq!(
            enumerate_subgroups_with(&g, 100).unwrap_err().exit_code(),
            2
        );
    }
}
