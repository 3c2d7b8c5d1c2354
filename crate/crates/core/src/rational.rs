//! Nonnegative exact rationals with 64-bit numerator and denominator.
//!
//! Every comparison between a prime and a threshold such as `r·p` or `x/p`
//! goes through this type, so boundary cases are decided by integer
//! cross-multiplication in 128 bits and never by floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        Self::from_u128(num as u128, den as u128)
    }

    /// Reduces a wide fraction, failing if the reduced form does not fit in 64 bits.
    pub fn from_u128(num: u128, den: u128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        let (n, d) = (num / g, den / g);
        match (u64::try_from(n), u64::try_from(d)) {
            (Ok(num), Ok(den)) => Ok(Rational { num, den }),
            _ => Err(Error::Overflow("rational reduction")),
        }
    }

    pub const fn from_int(n: u64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        // Split to keep precision for numerators above 2^53.
        let q = (self.num / self.den) as f64;
        let rem = (self.num % self.den) as f64 / self.den as f64;
        q + rem
    }

    /// Natural logarithm, accurate in relative terms even when `self` is close to 1.
    pub fn ln(&self) -> f64 {
        if self.num >= self.den {
            ((self.num - self.den) as f64 / self.den as f64).ln_1p()
        } else {
            -((self.den - self.num) as f64 / self.num as f64).ln_1p()
        }
    }

    /// `self · k`
    pub fn mul_int(&self, k: u64) -> Result<Self> {
        Self::from_u128(self.num as u128 * k as u128, self.den as u128)
    }

    /// `self / k`
    pub fn div_int(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("division by zero".into()));
        }
        Self::from_u128(self.num as u128, self.den as u128 * k as u128)
    }

    /// `k / self`
    pub fn recip_mul(&self, k: u64) -> Result<Self> {
        if self.num == 0 {
            return Err(Error::Domain("division by zero".into()));
        }
        Self::from_u128(k as u128 * self.den as u128, self.num as u128)
    }

    /// `floor(self · k)` without reducing the product.
    pub fn floor_mul(&self, k: u64) -> u128 {
        self.num as u128 * k as u128 / self.den as u128
    }

    /// Exact test `k ≤ self` for an integer `k`.
    pub fn ge_int(&self, k: u64) -> bool {
        k as u128 * self.den as u128 <= self.num as u128
    }

    /// Exact test `k² < self`.
    pub fn square_lt(&self, k: u64) -> bool {
        let sq = k as u128 * k as u128;
        match sq.checked_mul(self.den as u128) {
            Some(lhs) => lhs < self.num as u128,
            None => false,
        }
    }

    /// Exact test `k² ≤ self`.
    pub fn square_le(&self, k: u64) -> bool {
        let sq = k as u128 * k as u128;
        match sq.checked_mul(self.den as u128) {
            Some(lhs) => lhs <= self.num as u128,
            None => false,
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses one side of a fraction: `123`, `1.125`, `1e8`, `2.5e3`, `10^8`.
fn parse_decimal(text: &str) -> Result<(u128, u128)> {
    let bad = || Error::Parse(format!("not a nonnegative number: {text:?}"));
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((base, exp)) = t.split_once('^') {
        let base: u128 = base.trim().parse().map_err(|_| bad())?;
        let exp: u32 = exp.trim().parse().map_err(|_| bad())?;
        let v = base.checked_pow(exp).ok_or(Error::Overflow("power"))?;
        return Ok((v, 1));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: u128 = digits.parse().map_err(|_| Error::Overflow("decimal literal"))?;
    let scale = exp - frac_part.len() as i32;
    let ten = |k: i32| 10u128.checked_pow(k as u32).ok_or(Error::Overflow("decimal exponent"));
    let mut den: u128 = 1;
    if scale >= 0 {
        num = num.checked_mul(ten(scale)?).ok_or(Error::Overflow("decimal literal"))?;
    } else {
        den = ten(-scale)?;
    }
    Ok((num, den))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b` where each side is an integer, a decimal, or a power form.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((a, b)) => {
                let (an, ad) = parse_decimal(a)?;
                let (bn, bd) = parse_decimal(b)?;
                let num = an.checked_mul(bd).ok_or(Error::Overflow("rational literal"))?;
                let den = ad.checked_mul(bn).ok_or(Error::Overflow("rational literal"))?;
                Rational::from_u128(num, den)
            }
            None => {
                let (n, d) = parse_decimal(s)?;
                Rational::from_u128(n, d)
            }
        }
    }
}

/// Parses a nonnegative integer that may be written as `1e8` or `10^8`.
pub fn parse_integer(s: &str) -> Result<u64> {
    let r: Rational = s.parse()?;
    if !r.is_integer() {
        return Err(Error::Parse(format!("expected an integer, got {s:?}")));
    }
    Ok(r.numer())
}
