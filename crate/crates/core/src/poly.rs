//! Dense integer polynomials in one variable, just enough for q-analogs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    /// `1 + q + ... + q^(d-1)`.
    pub fn q_integer(d: u32) -> Self {
        Poly(vec![BigInt::one(); d as usize])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Division by a monic divisor; returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("nonzero divisor");
        assert!(
            divisor.leading().is_some_and(|c| c.is_one()),
            "divisor must be monic"
        );
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly(Vec::new()), Poly::new(rem));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
    /// Returns `None` when the interpolant does not have integer coefficients.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> Option<Poly> {
        let n = points.len();
        // divided differences, kept as exact integers while they stay integral
        let xs: Vec<&BigInt> = points.iter().map(|p| &p.0).collect();
        let mut table: Vec<BigInt> = points.iter().map(|p| p.1.clone()).collect();
        let mut newton = Vec::with_capacity(n);
        for level in 0..n {
            newton.push(table[level].clone());
            for i in (level + 1..n).rev() {
                let num = &table[i] - &table[i - 1];
                let den = xs[i] - xs[i - level - 1];
                let (q, r) = num.div_rem(&den);
                if !r.is_zero() {
                    return None;
                }
                table[i] = q;
            }
        }
        // expand the Newton form
        let mut acc = Poly(Vec::new());
        for k in (0..n).rev() {
            let linear = Poly::new(vec![-xs[k].clone(), BigInt::one()]);
            acc = acc.mul(&linear);
            let mut c = acc.0.clone();
            if c.is_empty() {
                c.push(BigInt::zero());
            }
            c[0] += &newton[k];
            acc = Poly::new(c);
        }
        Some(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn q_integers_divide() {
        let w = Poly::q_integer(6);
        let (q, r) = w.div_rem_monic(&Poly::q_integer(3));
        assert!(r.coeffs().is_empty());
        assert_eq!(q, p(&[1, 0, 0, 1]));
        let (_, r) = w.div_rem_monic(&Poly::q_integer(4));
        assert!(!r.coeffs().is_empty());
    }

    #[test]
    fn interpolation_recovers() {
        let f = p(&[3, -1, 0, 2, 1]);
        let pts: Vec<_> = (0..7)
            .map(|x| (BigInt::from(x + 2), f.eval(&BigInt::from(x + 2))))
            .collect();
        assert_eq!(Poly::interpolate(&pts).unwrap(), f);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 1, 0, 2]).to_string(), "2q^3 + q + 1");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "q^2 - 1");
    }
}
