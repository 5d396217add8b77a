//! Fixed-precision decimal reals backed by big integers.
//!
//! A [`Real`] stores `mantissa / 10^digits`. Every constructor rounds half
//! away from zero after computing with guard digits, so two evaluations of the
//! same quantity at the same precision produce identical mantissas. That is
//! what lets the JSON writers promise byte-identical output.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default number of decimal digits after the point.
pub const DEFAULT_DIGITS: u32 = 50;

const GUARD_DIGITS: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Real {
    mantissa: BigInt,
    digits: u32,
}

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// `n / d` rounded half away from zero. `d` must be nonzero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if (r.abs() * 2u32) >= d.abs() {
        if (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

fn working_bits(digits: u32) -> u64 {
    // log2(10) < 3.33
    ((digits + GUARD_DIGITS) as u64 * 333).div_ceil(100) + 32
}

/// atanh(z) for a binary fixed-point `z` with |z| <= 1/3.
fn atanh_fixed(z: &BigInt, bits: u64) -> BigInt {
    let z2: BigInt = (z * z) >> bits;
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1u64;
    loop {
        power = (&power * &z2) >> bits;
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    sum
}

fn ln2_fixed(bits: u64) -> BigInt {
    let third = (BigInt::one() << bits) / 3u32;
    atanh_fixed(&third, bits) * 2u32
}

/// log2(num/den) as a binary fixed-point number with `bits` fractional bits.
fn log2_fixed(num: &BigUint, den: &BigUint, bits: u64) -> BigInt {
    let shift = num.bits() as i64 - den.bits() as i64;
    let (a, b) = if shift >= 0 {
        (num.clone(), den << (shift as u64))
    } else {
        (num << ((-shift) as u64), den.clone())
    };
    // a/b lies in (1/2, 2); z = (a - b)/(a + b) lies in (-1/3, 1/3).
    let a = BigInt::from(a);
    let b = BigInt::from(b);
    let z = ((&a - &b) << bits) / (&a + &b);
    let ln_y = atanh_fixed(&z, bits) * 2u32;
    let frac = (ln_y << bits) / ln2_fixed(bits);
    (BigInt::from(shift) << bits) + frac
}

impl Real {
    pub fn zero(digits: u32) -> Self {
        Real {
            mantissa: BigInt::zero(),
            digits,
        }
    }

    pub fn from_integer(value: impl Into<BigInt>, digits: u32) -> Self {
        Real {
            mantissa: value.into() * pow10(digits),
            digits,
        }
    }

    /// `num / den`, rounded.
    pub fn from_ratio(num: &BigInt, den: &BigInt, digits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(Real {
            mantissa: div_round(&(num * pow10(digits)), den),
            digits,
        })
    }

    /// Square root of the nonnegative rational `num / den`.
    pub fn sqrt_ratio(num: &BigUint, den: &BigUint, digits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let work = digits + GUARD_DIGITS;
        let scaled = (num * BigUint::from(10u32).pow(2 * work)) / den;
        let root = BigInt::from(scaled.sqrt());
        Ok(Real {
            mantissa: div_round(&root, &pow10(GUARD_DIGITS)),
            digits,
        })
    }

    /// Base-2 logarithm of the positive rational `num / den`.
    pub fn log2_ratio(num: &BigUint, den: &BigUint, digits: u32) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::domain("logarithm of a non-positive number"));
        }
        let bits = working_bits(digits);
        let fixed = log2_fixed(num, den, bits);
        Ok(Real {
            mantissa: div_round(&(fixed * pow10(digits)), &(BigInt::one() << bits)),
            digits,
        })
    }

    pub fn log2_int(value: &BigUint, digits: u32) -> Result<Self> {
        Self::log2_ratio(value, &BigUint::one(), digits)
    }

    /// Base-2 logarithm of this (positive) real.
    pub fn log2(&self) -> Result<Self> {
        let num = self
            .mantissa
            .to_biguint()
            .filter(|m| !m.is_zero())
            .ok_or_else(|| Error::domain("logarithm of a non-positive number"))?;
        Self::log2_ratio(&num, &pow10(self.digits).magnitude().clone(), self.digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    /// Re-round to a different number of digits.
    pub fn rescale(&self, digits: u32) -> Self {
        let mantissa = match digits.cmp(&self.digits) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * pow10(digits - self.digits),
            Ordering::Less => div_round(&self.mantissa, &pow10(self.digits - digits)),
        };
        Real { mantissa, digits }
    }

    fn aligned(&self, other: &Real) -> (BigInt, BigInt, u32) {
        let d = self.digits.max(other.digits);
        (self.rescale(d).mantissa, other.rescale(d).mantissa, d)
    }

    pub fn add(&self, other: &Real) -> Real {
        let (a, b, digits) = self.aligned(other);
        Real {
            mantissa: a + b,
            digits,
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        let (a, b, digits) = self.aligned(other);
        Real {
            mantissa: a - b,
            digits,
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        let (a, b, digits) = self.aligned(other);
        Real {
            mantissa: div_round(&(a * b), &pow10(digits)),
            digits,
        }
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        let (a, b, digits) = self.aligned(other);
        if b.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(Real {
            mantissa: div_round(&(a * pow10(digits)), &b),
            digits,
        })
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Real {
        Real {
            mantissa: &self.mantissa * k.into(),
            digits: self.digits,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            mantissa: self.mantissa.abs(),
            digits: self.digits,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Nearest `f64`; exact to double precision for values in normal range.
    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Fixed-point rendering with `places` digits after the point.
    pub fn to_fixed(&self, places: u32) -> String {
        self.rescale(places).to_string()
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mantissa.is_negative();
        let digits = self.mantissa.magnitude().to_string();
        let width = self.digits as usize;
        let (int_part, frac_part) = if digits.len() > width {
            let split = digits.len() - width;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{digits:0>width$}"))
        };
        if neg {
            f.write_str("-")?;
        }
        f.write_str(&int_part)?;
        if width > 0 {
            write!(f, ".{frac_part}")?;
        }
        Ok(())
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

/// `floor(x^(1/k))` for big integers.
pub fn floor_root(x: &BigUint, k: u32) -> BigUint {
    if k == 1 {
        x.clone()
    } else {
        x.nth_root(k)
    }
}
