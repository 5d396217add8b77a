//! Explicit matrix groups over `Z/m`.
//!
//! Elements are materialized, sorted lexicographically by their entries and
//! addressed by index; products come from a dense `u32` table that can be
//! kept in an on-disk cache.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use sha2::{Digest, Sha256};

use crate::arith::is_prime;
use crate::error::{Error, Result};

mod congruence;
mod diamond;
mod subgroups;

pub use congruence::*;
pub use diamond::*;
pub use subgroups::*;

/// Default cap on materialized elements.
pub const MATERIALIZE_MAX_ELEMENTS: usize = 100_000;

/// Environment variable naming the table cache directory.
pub const CACHE_ENV: &str = "SUBGROWTH_CACHE_DIR";

/// Square matrix over `Z/m`, row-major.
pub type Matrix = Vec<u32>;

pub struct FiniteMatrixGroup {
    modulus: u32,
    degree: usize,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: u32,
    characteristic_p: Option<u64>,
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("modulus", &self.modulus)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

pub fn mat_mul(a: &[u32], b: &[u32], k: usize, m: u32) -> Matrix {
    let mut out = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            let mut s = 0u64;
            for l in 0..k {
                s += a[i * k + l] as u64 * b[l * k + j] as u64;
            }
            out[i * k + j] = (s % m as u64) as u32;
        }
    }
    out
}

/// Determinant mod `m` by cofactor expansion; degrees here are tiny.
pub fn det(a: &[u32], k: usize, m: u32) -> u32 {
    fn rec(a: &[i64], k: usize, m: i64) -> i64 {
        if k == 1 {
            return a[0].rem_euclid(m);
        }
        let mut total = 0i64;
        for c in 0..k {
            let minor: Vec<i64> = (1..k)
                .flat_map(|r| (0..k).filter(move |&cc| cc != c).map(move |cc| (r, cc)))
                .map(|(r, cc)| a[r * k + cc])
                .collect();
            let term = a[c] * rec(&minor, k - 1, m) % m;
            total = if c % 2 == 0 {
                total + term
            } else {
                total - term
            };
        }
        total.rem_euclid(m)
    }
    rec(
        &a.iter().map(|&x| x as i64).collect::<Vec<_>>(),
        k,
        m as i64,
    ) as u32
}

fn identity_matrix(k: usize) -> Matrix {
    (0..k * k).map(|i| u32::from(i / k == i % k)).collect()
}

impl FiniteMatrixGroup {
    /// Closure of `generators` under multiplication, refused past `bound`
    /// elements. Uses the table cache when one is configured.
    pub fn generate(
        modulus: u32,
        degree: usize,
        generators: Vec<Matrix>,
        bound: usize,
    ) -> Result<Self> {
        Self::generate_cached(modulus, degree, generators, bound, cache_dir().as_deref())
    }

    pub fn generate_cached(
        modulus: u32,
        degree: usize,
        generators: Vec<Matrix>,
        bound: usize,
        cache: Option<&Path>,
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::validation(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        if degree == 0 {
            return Err(Error::validation("matrix degree must be at least 1"));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != degree * degree {
                return Err(Error::validation(format!(
                    "generator has {} entries, expected {}",
                    g.len(),
                    degree * degree
                )));
            }
            let g: Matrix = g.into_iter().map(|x| x % modulus).collect();
            if num_integer::gcd(det(&g, degree, modulus), modulus) != 1 {
                return Err(Error::validation("generator determinant is not a unit"));
            }
            gens.push(g);
        }
        let key = cache_key(modulus, degree, &gens);
        if let Some(dir) = cache {
            if let Some((elements, table)) = load(dir, &key, degree) {
                return Ok(Self::assemble(modulus, degree, gens, elements, table));
            }
        }
        let elements = closure(modulus, degree, &gens, bound)?;
        let index: HashMap<&[u32], u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i as u32))
            .collect();
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[mat_mul(a, b, degree, modulus).as_slice()];
            }
        }
        if let Some(dir) = cache {
            // a failed write only costs a recomputation next time
            let _ = store(dir, &key, &elements, &table);
        }
        Ok(Self::assemble(modulus, degree, gens, elements, table))
    }

    fn assemble(
        modulus: u32,
        degree: usize,
        generators: Vec<Matrix>,
        elements: Vec<Matrix>,
        table: Vec<u32>,
    ) -> Self {
        let n = elements.len();
        let one = identity_matrix(degree);
        let identity = elements
            .iter()
            .position(|e| *e == one)
            .expect("identity present") as u32;
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            let row = &table[i * n..(i + 1) * n];
            inverse[i] = row
                .iter()
                .position(|&x| x == identity)
                .expect("group element") as u32;
        }
        let characteristic_p = if is_prime(modulus as u64) {
            Some(modulus as u64)
        } else {
            None
        };
        FiniteMatrixGroup {
            modulus,
            degree,
            generators,
            elements,
            table,
            inverse,
            identity,
            characteristic_p,
        }
    }

    /// `SL_k(Z/m)`, generated by elementary transvections.
    pub fn special_linear(degree: usize, modulus: u32, bound: usize) -> Result<Self> {
        let mut gens = Vec::new();
        for i in 0..degree {
            for j in 0..degree {
                if i != j {
                    let mut e = identity_matrix(degree);
                    e[i * degree + j] = 1;
                    gens.push(e);
                }
            }
        }
        if degree == 1 {
            gens.push(identity_matrix(1));
        }
        Self::generate(modulus, degree, gens, bound)
    }

    /// Upper triangular subgroup of `SL_2(F_p)`.
    pub fn borel_sl2(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::validation(format!("{p} is not prime")));
        }
        let g = (1..p)
            .find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1))
            .unwrap_or(1);
        let gi = pow_mod(g, p - 2, p);
        Self::generate(
            p,
            2,
            vec![vec![g, 0, 0, gi], vec![1, 1, 0, 1]],
            MATERIALIZE_MAX_ELEMENTS,
        )
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Matrix {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, m: &[u32]) -> Option<u32> {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(m))
            .ok()
            .map(|i| i as u32)
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn characteristic_p(&self) -> Option<u64> {
        self.characteristic_p
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Entrywise reduction to `Z/d` for a divisor `d` of the modulus.
    pub fn reduce(&self, a: u32, d: u32) -> Matrix {
        self.elements[a as usize].iter().map(|&x| x % d).collect()
    }
}

pub(crate) fn pow_mod(b: u32, mut e: u32, m: u32) -> u32 {
    let m = m as u64;
    let (mut r, mut b) = (1 % m, b as u64 % m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u32
}

fn closure(modulus: u32, degree: usize, gens: &[Matrix], bound: usize) -> Result<Vec<Matrix>> {
    let one = identity_matrix(degree);
    let mut seen: std::collections::HashSet<Matrix> = std::collections::HashSet::new();
    seen.insert(one.clone());
    let mut queue = vec![one];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = mat_mul(&x, g, degree, modulus);
            if !seen.contains(&y) {
                if seen.len() >= bound {
                    return Err(Error::bound(
                        format!("group generated over Z/{modulus} in degree {degree}"),
                        bound,
                        "raise the element bound",
                    ));
                }
                seen.insert(y.clone());
                queue.push(y);
            }
        }
    }
    let mut out: Vec<Matrix> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

static CACHE_OVERRIDE: RwLock<Option<PathBuf>> = RwLock::new(None);

/// Process-wide cache directory, taking precedence over the environment.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *CACHE_OVERRIDE.write().unwrap_or_else(|e| e.into_inner()) = dir;
}

/// Cache directory in effect: the override if set, else the environment.
pub fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = CACHE_OVERRIDE
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .clone()
    {
        return Some(dir);
    }
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Stable content address of a generated group.
pub fn cache_key(modulus: u32, degree: usize, gens: &[Matrix]) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "subgrowth-matrix-group-v1;m={modulus};k={degree};gens={gens:?}"
    ));
    hex::encode(h.finalize())
}

const MAGIC: &[u8; 8] = b"SGMTAB01";

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.bin"))
}

fn load(dir: &Path, key: &str, degree: usize) -> Option<(Vec<Matrix>, Vec<u32>)> {
    let mut f = fs::File::open(cache_path(dir, key)).ok()?;
    let mut bytes = Vec::new();
    f.read_to_end(&mut bytes).ok()?;
    if bytes.len() < 12 || &bytes[..8] != MAGIC {
        return None;
    }
    let words: Vec<u32> = bytes[8..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    let n = *words.first()? as usize;
    let kk = degree * degree;
    if words.len() != 1 + n * kk + n * n {
        return None;
    }
    let elements = words[1..1 + n * kk]
        .chunks(kk)
        .map(|c| c.to_vec())
        .collect();
    let table = words[1 + n * kk..].to_vec();
    Some((elements, table))
}

/// Written to a temporary file in the same directory and renamed into place,
/// so concurrent readers see either nothing or a complete file.
fn store(dir: &Path, key: &str, elements: &[Matrix], table: &[u32]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        f.write_all(MAGIC)?;
        f.write_all(&(elements.len() as u32).to_le_bytes())?;
        for e in elements {
            for x in e {
                f.write_all(&x.to_le_bytes())?;
            }
        }
        for x in table {
            f.write_all(&x.to_le_bytes())?;
        }
        f.flush()?;
    }
    fs::rename(&tmp, cache_path(dir, key))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_orders() {
        let g = FiniteMatrixGroup::special_linear(2, 5, 1000).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(
            FiniteMatrixGroup::special_linear(2, 2, 1000)
                .unwrap()
                .order(),
            6
        );
        assert_eq!(
            FiniteMatrixGroup::special_linear(2, 4, 1000)
                .unwrap()
                .order(),
            48
        );
        assert_eq!(
            FiniteMatrixGroup::special_linear(2, 6, 1000)
                .unwrap()
                .order(),
            144
        );
        assert_eq!(FiniteMatrixGroup::borel_sl2(5).unwrap().order(), 20);
        for a in 0..g.order() as u32 {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            assert_eq!(det(g.element(a), 2, 5), 1);
        }
    }

    #[test]
    fn refuses_past_bound() {
        let e = FiniteMatrixGroup::special_linear(2, 7, 100).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(FiniteMatrixGroup::generate(3, 2, vec![vec![1, 0, 0, 0]], 10).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let gens = vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]];
        let a =
            FiniteMatrixGroup::generate_cached(3, 2, gens.clone(), 1000, Some(dir.path())).unwrap();
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        let b = FiniteMatrixGroup::generate_cached(3, 2, gens, 1000, Some(dir.path())).unwrap();
        assert_eq!(a.elements, b.elements);
        assert_eq!(a.table, b.table);
        assert_eq!(b.order(), 24);
    }
}
