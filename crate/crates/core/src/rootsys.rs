//! Simple Lie types, their root systems and Dynkin diagrams, and the
//! growth constant attached to each type.
//!
//! Positive roots are generated by string closure from the Cartan matrix, and
//! the invariant degrees are read off the height distribution of the positive
//! roots. Nothing here is tabulated per type except the diagram itself.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{Real, DEFAULT_DIGITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Lie type, possibly twisted.
///
/// Construction normalizes the low-rank coincidences `B1 = C1 = A1` and
/// `D3 = A3`; the twist order is carried over to the normalized type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
    twist: u8,
}

impl LieType {
    pub fn new(family: Family, rank: usize, twist: u8) -> Result<Self> {
        let (family, rank) = match (family, rank) {
            (Family::B | Family::C, 1) => (Family::A, 1),
            (Family::D, 3) => (Family::A, 3),
            other => other,
        };
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            let constraint = match family {
                Family::A => "A requires rank >= 1",
                Family::B | Family::C => "B and C require rank >= 1",
                Family::D => "D requires rank >= 3",
                Family::E => "E requires rank 6, 7 or 8",
                Family::F => "F requires rank 4",
                Family::G => "G requires rank 2",
            };
            return Err(Error::validation(format!(
                "no simple type {}{}: {constraint}",
                family.letter(),
                rank
            )));
        }
        let twist_ok = match twist {
            1 => true,
            2 => matches!(
                (family, rank),
                (Family::A, 2..) | (Family::D, _) | (Family::E, 6)
            ),
            3 => family == Family::D && rank == 4,
            _ => false,
        };
        if !twist_ok {
            return Err(Error::validation(format!(
                "twist {twist} is not admissible for {}{}: order-2 twists need A_l (l >= 2), D_l or E6, order 3 needs D4",
                family.letter(),
                rank
            )));
        }
        Ok(LieType {
            family,
            rank,
            twist,
        })
    }

    pub fn untwisted(family: Family, rank: usize) -> Result<Self> {
        Self::new(family, rank, 1)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twist(&self) -> u8 {
        self.twist
    }

    pub fn is_twisted(&self) -> bool {
        self.twist > 1
    }

    /// The untwisted type sharing this type's root datum.
    pub fn untwisted_form(&self) -> LieType {
        LieType { twist: 1, ..*self }
    }

    /// Every admissible twist order for this family and rank.
    pub fn admissible_twists(&self) -> Vec<u8> {
        [1u8, 2, 3]
            .into_iter()
            .filter(|&t| LieType::new(self.family, self.rank, t).is_ok())
            .collect()
    }

    /// Every valid type (all twists) whose untwisted rank is at most `max_rank`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                // skip the normalized duplicates
                let dup = matches!((family, rank), (Family::B | Family::C, 1) | (Family::D, 3));
                if dup {
                    continue;
                }
                for twist in 1..=3 {
                    if let Ok(t) = LieType::new(family, rank, twist) {
                        out.push(t);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Node permutation realizing the twist (the graph automorphism).
    pub fn twist_permutation(&self) -> Option<Vec<usize>> {
        let l = self.rank;
        match (self.twist, self.family) {
            (1, _) => None,
            (2, Family::A) => Some((0..l).rev().collect()),
            (2, Family::D) => {
                let mut p: Vec<usize> = (0..l).collect();
                p.swap(l - 2, l - 1);
                Some(p)
            }
            (2, Family::E) => Some(vec![5, 1, 4, 3, 2, 0]),
            (3, Family::D) => Some(vec![2, 1, 3, 0]),
            _ => None,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist > 1 {
            write!(f, "{}", self.twist)?;
        }
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Accepts `E8`, `2A3`, `^2A3`, `3D4`, `²E₆` and `D_4`.
    fn from_str(s: &str) -> Result<Self> {
        let normalized: String = s
            .trim()
            .chars()
            .filter(|c| *c != '^' && *c != '_')
            .map(|c| match c {
                '¹' | '₁' => '1',
                '²' | '₂' => '2',
                '³' | '₃' => '3',
                '⁴' | '₄' => '4',
                '₅' => '5',
                '⁶' | '₆' => '6',
                '₇' => '7',
                '₈' => '8',
                '₉' => '9',
                '₀' => '0',
                other => other,
            })
            .collect();
        let bad = || Error::validation(format!("cannot parse Lie type '{s}'"));
        let letter_pos = normalized
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(bad)?;
        let twist: u8 = if letter_pos == 0 {
            1
        } else {
            normalized[..letter_pos].parse().map_err(|_| bad())?
        };
        let letter = normalized[letter_pos..].chars().next().ok_or_else(bad)?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = normalized[letter_pos + 1..].parse().map_err(|_| bad())?;
        LieType::new(family, rank, twist)
    }
}

/// A bond of the Dynkin diagram. For multiple bonds `long_end` names the
/// node carrying the longer root (the arrow points away from it).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub multiplicity: u8,
    pub long_end: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DynkinDiagram {
    pub nodes: usize,
    pub bonds: Vec<Bond>,
    /// Relative squared root lengths, scaled so that all pairings are integral.
    pub lengths: Vec<i64>,
}

impl DynkinDiagram {
    pub fn of(t: LieType) -> DynkinDiagram {
        let l = t.rank;
        let mut bonds: Vec<(usize, usize, u8)> = Vec::new();
        let mut lengths = vec![2i64; l];
        let path = |bonds: &mut Vec<(usize, usize, u8)>, n: usize| {
            for i in 1..n {
                bonds.push((i - 1, i, 1));
            }
        };
        match t.family {
            Family::A => path(&mut bonds, l),
            Family::B => {
                path(&mut bonds, l);
                bonds.last_mut().unwrap().2 = 2;
                lengths = vec![4; l];
                lengths[l - 1] = 2;
            }
            Family::C => {
                path(&mut bonds, l);
                bonds.last_mut().unwrap().2 = 2;
                lengths[l - 1] = 4;
            }
            Family::D => {
                path(&mut bonds, l - 1);
                bonds.push((l - 3, l - 1, 1));
            }
            Family::E => {
                bonds.push((0, 2, 1));
                bonds.push((1, 3, 1));
                for i in 3..l {
                    bonds.push((i - 1, i, 1));
                }
            }
            Family::F => {
                bonds = vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)];
                lengths = vec![4, 4, 2, 2];
            }
            Family::G => {
                bonds = vec![(0, 1, 3)];
                lengths = vec![2, 6];
            }
        }
        let bonds = bonds
            .into_iter()
            .map(|(a, b, m)| Bond {
                a,
                b,
                multiplicity: m,
                long_end: if m > 1 {
                    Some(if lengths[a] > lengths[b] { a } else { b })
                } else {
                    None
                },
            })
            .collect();
        DynkinDiagram {
            nodes: l,
            bonds,
            lengths,
        }
    }

    fn bond_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.nodes]; self.nodes];
        for b in &self.bonds {
            m[b.a][b.b] = b.multiplicity;
            m[b.b][b.a] = b.multiplicity;
        }
        m
    }

    /// Nodes adjacent to `node`.
    pub fn neighbours(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.bonds.iter().filter_map(move |b| {
            if b.a == node {
                Some(b.b)
            } else if b.b == node {
                Some(b.a)
            } else {
                None
            }
        })
    }

    /// Cartan matrix `A[i][j] = 2 (a_i, a_j) / (a_i, a_i)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let bonds = self.bond_matrix();
        let l = self.nodes;
        let mut cartan = vec![vec![0i64; l]; l];
        for i in 0..l {
            for j in 0..l {
                cartan[i][j] = if i == j {
                    2
                } else if bonds[i][j] > 0 {
                    let inner = -(bonds[i][j] as i64) * self.lengths[i].min(self.lengths[j]) / 2;
                    2 * inner / self.lengths[i]
                } else {
                    0
                };
            }
        }
        cartan
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All length-preserving diagram automorphisms, lexicographically sorted.
    pub fn symmetries(&self) -> Vec<Vec<usize>> {
        let bonds = self.bond_matrix();
        let l = self.nodes;
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; l];
        let mut used = vec![false; l];
        fn extend(
            pos: usize,
            image: &mut Vec<usize>,
            used: &mut Vec<bool>,
            bonds: &[Vec<u8>],
            lengths: &[i64],
            out: &mut Vec<Vec<usize>>,
        ) {
            let l = image.len();
            if pos == l {
                out.push(image.clone());
                return;
            }
            for cand in 0..l {
                if used[cand] || lengths[cand] != lengths[pos] {
                    continue;
                }
                let consistent = (0..pos).all(|prev| bonds[prev][pos] == bonds[image[prev]][cand]);
                if !consistent {
                    continue;
                }
                image[pos] = cand;
                used[cand] = true;
                extend(pos + 1, image, used, bonds, lengths, out);
                used[cand] = false;
            }
            image[pos] = usize::MAX;
        }
        extend(0, &mut image, &mut used, &bonds, &self.lengths, &mut out);
        out.sort();
        out
    }
}

/// The positive roots of an irreducible (or, for sub-diagrams, arbitrary)
/// root system, in coordinates over the simple roots.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
    pub degrees: Vec<u32>,
}

impl RootSystem {
    /// Closure generation: starting from the simple roots, `b + a_i` is a root
    /// exactly when `p - <b, a_i^vee> > 0`, where `p` is the length of the
    /// `a_i`-string below `b`.
    pub fn from_cartan(cartan: &[Vec<i64>]) -> RootSystem {
        let l = cartan.len();
        let unit = |i: usize| {
            let mut v = vec![0i64; l];
            v[i] = 1;
            v
        };
        let mut known: HashSet<Vec<i64>> = (0..l).map(unit).collect();
        let mut layer: Vec<Vec<i64>> = (0..l).map(unit).collect();
        let mut all = layer.clone();
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..l {
                    let mut p = 0i64;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if known.contains(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..l).map(|j| beta[j] * cartan[i][j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains(&up) && !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            for r in &next {
                known.insert(r.clone());
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        let heights: Vec<i64> = all.iter().map(|r| r.iter().sum()).collect();
        let degrees = degrees_from_heights(&heights);
        RootSystem {
            rank: l,
            positive_roots: all,
            heights,
            degrees,
        }
    }

    pub fn count(&self) -> usize {
        self.positive_roots.len()
    }
}

/// The number of positive roots of height exactly `k` equals the number of
/// exponents `m_i >= k`; degrees are `m_i + 1`.
fn degrees_from_heights(heights: &[i64]) -> Vec<u32> {
    let mut per_height: BTreeMap<i64, usize> = BTreeMap::new();
    for &h in heights {
        *per_height.entry(h).or_default() += 1;
    }
    let max_h = per_height.keys().copied().max().unwrap_or(0);
    let at = |k: i64| per_height.get(&k).copied().unwrap_or(0);
    let mut degrees = Vec::new();
    for m in 1..=max_h {
        let with_exponent_m = at(m) - at(m + 1);
        degrees.extend(std::iter::repeat_n((m + 1) as u32, with_exponent_m));
    }
    degrees
}

/// Positive root system of the untwisted datum of `t`.
pub fn build_root_system(t: LieType) -> RootSystem {
    RootSystem::from_cartan(&DynkinDiagram::of(t).cartan_matrix())
}

pub fn positive_root_count(t: LieType) -> usize {
    build_root_system(t).count()
}

pub fn lie_rank(t: LieType) -> usize {
    t.rank
}

/// `R = |positive roots| / rank`, shared by every twisted form.
pub fn ratio_r(t: LieType) -> Rational64 {
    Rational64::new(positive_root_count(t) as i64, t.rank as i64)
}

pub fn invariant_degrees(t: LieType) -> Vec<u32> {
    build_root_system(t).degrees
}

pub fn diagram_symmetries(t: LieType) -> Vec<Vec<usize>> {
    DynkinDiagram::of(t).symmetries()
}

/// The growth constant in closed algebraic form, `(sqrt(R(R+1)) - R)^2 / (4R^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaForm {
    pub r: Rational64,
}

impl GammaForm {
    pub fn new(r: Rational64) -> Result<Self> {
        if r < Rational64::one() {
            return Err(Error::domain(format!("gamma requires R >= 1, got {r}")));
        }
        Ok(GammaForm { r })
    }

    pub fn r_plus_one(&self) -> Rational64 {
        self.r + Rational64::one()
    }

    /// With `R = a/b` the value equals `b^2 / (4a (2a + b + 2 sqrt(a(a+b))))`,
    /// which avoids the cancellation in the textbook form for large `R`.
    pub fn evaluate(&self, digits: u32) -> Real {
        let a = BigUint::from(*self.r.numer() as u64);
        let b = BigUint::from(*self.r.denom() as u64);
        let work = digits + 10;
        let root = Real::sqrt_ratio(&(&a * (&a + &b)), &BigUint::one(), work)
            .expect("nonzero denominator");
        let lin = Real::from_integer(BigInt::from(&a * 2u32 + &b), work);
        let denom = lin.add(&root.mul_int(2)).mul_int(BigInt::from(&a * 4u32));
        let numer = Real::from_integer(BigInt::from(&b * &b), work);
        numer
            .div(&denom)
            .expect("positive denominator")
            .rescale(digits)
    }
}

impl fmt::Display for GammaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(sqrt(R(R+1)) - R)^2 / (4R^2) with R = {}, R+1 = {}",
            self.r,
            self.r_plus_one()
        )
    }
}

pub fn gamma_of_r(r: Rational64, digits: u32) -> Result<Real> {
    Ok(GammaForm::new(r)?.evaluate(digits))
}

pub fn gamma_of_type(t: LieType, digits: u32) -> Real {
    gamma_of_r(ratio_r(t), digits).expect("every simple type has R >= 1")
}

pub fn gamma_default(t: LieType) -> Real {
    gamma_of_type(t, DEFAULT_DIGITS)
}

/// `|Phi+| + l`, the exponent of q in the order of a Borel subgroup.
pub fn borel_dimension(t: LieType) -> usize {
    positive_root_count(t) + t.rank
}

/// `2|Phi+| + l`, the dimension of the algebraic group.
pub fn group_dimension(t: LieType) -> usize {
    2 * positive_root_count(t) + t.rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn closed_form(t: LieType) -> usize {
        let l = t.rank();
        match t.family() {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
            Family::E => [36, 63, 120][l - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    #[test]
    fn small_root_counts() {
        assert_eq!(positive_root_count(t("A1")), 1);
        assert_eq!(positive_root_count(t("A3")), 6);
        assert_eq!(positive_root_count(t("F4")), 24);
        assert_eq!((positive_root_count(t("E8")), lie_rank(t("E8"))), (120, 8));
        assert_eq!((positive_root_count(t("2A4")), lie_rank(t("2A4"))), (10, 4));
    }

    #[test]
    fn closure_matches_closed_forms() {
        for ty in LieType::all_up_to_rank(12) {
            assert_eq!(positive_root_count(ty), closed_form(ty), "{ty}");
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(invariant_degrees(t("A1")), vec![2]);
        assert_eq!(invariant_degrees(t("A2")), vec![2, 3]);
        assert_eq!(invariant_degrees(t("F4")), vec![2, 6, 8, 12]);
        assert_eq!(invariant_degrees(t("G2")), vec![2, 6]);
        assert_eq!(invariant_degrees(t("E6")), vec![2, 5, 6, 8, 9, 12]);
        assert_eq!(
            invariant_degrees(t("E8")),
            vec![2, 8, 12, 14, 18, 20, 24, 30]
        );
        assert_eq!(invariant_degrees(t("D4")), vec![2, 4, 4, 6]);
    }

    #[test]
    fn degrees_consistent_with_root_counts() {
        for ty in LieType::all_up_to_rank(10) {
            let rs = build_root_system(ty);
            assert_eq!(rs.degrees.len(), ty.rank(), "{ty}");
            let s: u32 = rs.degrees.iter().map(|d| d - 1).sum();
            assert_eq!(s as usize, rs.count(), "{ty}");
        }
    }

    #[test]
    fn root_system_shape() {
        for ty in LieType::all_up_to_rank(8) {
            let rs = build_root_system(ty);
            assert!(rs.positive_roots.iter().flatten().all(|&c| c >= 0));
            let simple = rs.heights.iter().filter(|&&h| h == 1).count();
            assert_eq!(simple, ty.rank());
            assert!(rs.positive_roots.windows(2).all(|w| w[0] < w[1]));
            assert!(!rs.positive_roots.iter().any(|r| r.iter().all(|x| *x == 0)));
        }
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio_r(t("A2")), Rational64::new(3, 2));
        assert_eq!(ratio_r(t("A1")), Rational64::one());
        assert_eq!(ratio_r(t("F4")), Rational64::from_integer(6));
        for n in 1..12usize {
            let ty = LieType::untwisted(Family::A, n).unwrap();
            assert_eq!(ratio_r(ty), Rational64::new(n as i64 + 1, 2));
        }
        for ty in LieType::all_up_to_rank(8) {
            assert_eq!(ratio_r(ty), ratio_r(ty.untwisted_form()));
        }
    }

    #[test]
    fn normalization_and_validation() {
        assert_eq!(t("D3"), t("A3"));
        assert_eq!(t("B1"), t("A1"));
        assert_eq!(t("C1"), t("A1"));
        assert_eq!(t("2D3"), t("2A3"));
        assert!("D2".parse::<LieType>().is_err());
        assert!("E9".parse::<LieType>().is_err());
        assert!("F3".parse::<LieType>().is_err());
        assert!("2A1".parse::<LieType>().is_err());
        assert!("2B3".parse::<LieType>().is_err());
        assert!("3D5".parse::<LieType>().is_err());
        assert!("2E7".parse::<LieType>().is_err());
        assert_eq!(t("²E₆").to_string(), "2E6");
        assert_eq!(t("^3D_4").to_string(), "3D4");
        let err = "G3".parse::<LieType>().unwrap_err().to_string();
        assert!(err.contains("G requires rank 2"), "{err}");
    }

    #[test]
    fn symmetry_orders() {
        assert_eq!(
            diagram_symmetries(t("A3")),
            vec![vec![0, 1, 2], vec![2, 1, 0]]
        );
        assert_eq!(diagram_symmetries(t("G2")), vec![vec![0, 1]]);
        assert_eq!(diagram_symmetries(t("D4")).len(), 6);
        assert_eq!(diagram_symmetries(t("B3")).len(), 1);
        assert_eq!(diagram_symmetries(t("F4")).len(), 1);
        assert_eq!(diagram_symmetries(t("E6")).len(), 2);
        assert_eq!(diagram_symmetries(t("E7")).len(), 1);
        assert_eq!(diagram_symmetries(t("D5")).len(), 2);
        for ty in LieType::all_up_to_rank(8) {
            let n = diagram_symmetries(ty).len();
            assert!([1, 2, 6].contains(&n));
            assert_eq!(n == 6, ty.untwisted_form() == t("D4"));
            assert!(DynkinDiagram::of(ty).is_connected());
        }
    }

    #[test]
    fn twist_permutations_are_diagram_symmetries() {
        for ty in LieType::all_up_to_rank(8) {
            match ty.twist_permutation() {
                None => assert!(!ty.is_twisted()),
                Some(p) => {
                    assert!(diagram_symmetries(ty).contains(&p), "{ty}");
                    // order of the permutation equals the twist
                    let mut cur: Vec<usize> = (0..p.len()).collect();
                    let mut order = 0;
                    loop {
                        cur = cur.iter().map(|&i| p[i]).collect();
                        order += 1;
                        if cur.iter().enumerate().all(|(i, &c)| i == c) {
                            break;
                        }
                    }
                    assert_eq!(order, ty.twist() as usize, "{ty}");
                }
            }
        }
    }

    #[test]
    fn cartan_conventions() {
        let b2 = DynkinDiagram::of(t("B2")).cartan_matrix();
        assert_eq!(b2, vec![vec![2, -1], vec![-2, 2]]);
        let g2 = DynkinDiagram::of(t("G2")).cartan_matrix();
        assert_eq!(g2, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(DynkinDiagram::of(t("G2")).bonds[0].long_end, Some(1));
    }

    #[test]
    fn gamma_values() {
        let g1 = gamma_of_r(Rational64::one(), 50).unwrap();
        let expect = (3.0 - 2.0 * 2f64.sqrt()) / 4.0;
        assert!((g1.to_f64() - expect).abs() < 1e-15);
        assert!(g1.to_string().starts_with("0.0428932188134524"));
        let g32 = gamma_of_r(Rational64::new(3, 2), 50).unwrap();
        let expect = (15f64.sqrt() - 3.0).powi(2) / 36.0;
        assert!((g32.to_f64() - expect).abs() < 1e-15);
        assert!(gamma_of_r(Rational64::new(1, 2), 50).is_err());
        assert_eq!(gamma_default(t("A1")), g1);
    }

    #[test]
    fn gamma_f4_against_f64() {
        let g = gamma_of_type(t("F4"), 50).to_f64();
        let r = 6.0f64;
        let direct = ((r * (r + 1.0)).sqrt() - r).powi(2) / (4.0 * r * r);
        assert!((g - direct).abs() < 1e-12);
        assert!((g - 0.00160494).abs() < 1e-8);
    }

    #[test]
    fn gamma_asymptotics() {
        let mut last = 0.0;
        for k in 0..=6 {
            let r = Rational64::from_integer(10i64.pow(k));
            let g = gamma_of_r(r, 60).unwrap();
            let scaled = g.mul_int(16 * 10i64.pow(2 * k)).to_f64();
            assert!(scaled > 0.0 && scaled < 1.0);
            assert!(scaled > last);
            last = scaled;
        }
        assert!((last - 1.0).abs() < 1e-4);
    }

    #[test]
    fn gamma_strictly_decreasing() {
        let grid: Vec<Rational64> = (0..100).map(|i| Rational64::new(10 + 7 * i, 10)).collect();
        let vals: Vec<Real> = grid.iter().map(|&r| gamma_of_r(r, 50).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn dimensions() {
        assert_eq!(borel_dimension(t("F4")), 28);
        assert_eq!(group_dimension(t("B4")), 36);
        assert_eq!(group_dimension(t("D5")) + 1, 46);
        assert_eq!(group_dimension(t("E6")) + 1, 79);
        assert_eq!(group_dimension(t("A1")) + group_dimension(t("E7")), 136);
    }
}
