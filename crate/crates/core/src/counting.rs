//! Exact counts of `π₂(x; r) = #{pq ≤ x : p < q ≤ rp}`.
//!
//! The fast path evaluates `Σ_{p ≤ √x} [π(min(rp, x/p)) − π(p)]` with a single
//! batched sieve sweep; every threshold is the exact floor of a rational, so
//! the boundary cases `q = rp` and `pq = x` are always counted. The oracle walks
//! prime pairs directly and shares nothing with the fast path but the sieve.

use std::fmt;

use serde::Serialize;

use crate::characters::QuadraticCharacter;
use crate::error::{Error, Result};
use crate::primes::{
    class_count_batch, isqrt, prime_count_batch, sieve_primes, CharClassCount, SieveConfig, ThresholdBatch,
};
use crate::rational::Rational;

/// Default largest `x` accepted by [`count_rsa_oracle`].
pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

/// A counting point `(x, r)` with `s = x/r` kept exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RsaQuery {
    x: u64,
    r: Rational,
    s: Rational,
    landau_regime: bool,
}

impl RsaQuery {
    pub fn new(x: u64, r: Rational) -> Result<Self> {
        if x < 4 {
            return Err(Error::Domain(format!("x must be ≥ 4, got {x}")));
        }
        if r <= Rational::ONE {
            return Err(Error::Domain(format!("r must exceed 1, got {r}")));
        }
        let s = r.recip_mul(x)?;
        let landau_regime = r > Rational::new(x, 4)?;
        Ok(RsaQuery { x, r, s, landau_regime })
    }

    /// The query with `r = x/s`.
    pub fn from_s(x: u64, s: Rational) -> Result<Self> {
        if s == Rational::ZERO {
            return Err(Error::Domain("s must be positive".into()));
        }
        Self::new(x, s.recip_mul(x)?)
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn r(&self) -> Rational {
        self.r
    }

    pub fn s(&self) -> Rational {
        self.s
    }

    /// `r > x/4`, where the shape constraint no longer binds.
    pub fn is_landau_regime(&self) -> bool {
        self.landau_regime
    }

    /// `r` clamped to `x/4`; the count is unchanged.
    pub fn effective_r(&self) -> Rational {
        if self.landau_regime {
            Rational::new(self.x, 4).expect("x/4 is representable")
        } else {
            self.r
        }
    }
}

impl fmt::Display for RsaQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x = {}, r = {})", self.x, self.r)
    }
}

/// The three prime sums whose combination gives `π₂(x; r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CountBreakdown {
    /// `Σ_{√(x/r) < p ≤ √x} π(x/p)`
    pub sum_mid: u64,
    /// `Σ_{p ≤ √(x/r)} π(rp)`
    pub sum_small: u64,
    /// `Σ_{p ≤ √x} π(p)`
    pub sum_sub: u64,
    pub total: u64,
}

/// For each prime `p ≤ √x`: the integer threshold `⌊min(rp, x/p)⌋` and whether `rp ≤ x/p`.
fn inner_thresholds(x: u64, r: &Rational, small: &[u64]) -> Vec<(u64, bool)> {
    let num = r.numer() as u128;
    let den = r.denom() as u128;
    small
        .iter()
        .map(|&p| {
            let p128 = p as u128;
            // rp ≤ x/p  ⇔  p²·num ≤ x·den
            let shape_binds = p128 * p128 * num <= x as u128 * den;
            let t = if shape_binds { (r.floor_mul(p)) as u64 } else { x / p };
            (t, shape_binds)
        })
        .collect()
}

/// `π₂(x; r)` with its dissection into three prime sums, from one sieve sweep.
pub fn count_rsa_exact(q: &RsaQuery, cfg: &SieveConfig) -> Result<CountBreakdown> {
    let x = q.x;
    let r = q.effective_r();
    let small = sieve_primes(isqrt(x), cfg)?;
    let inner = inner_thresholds(x, &r, small.primes());
    let floors: Vec<Rational> = inner.iter().map(|&(t, _)| Rational::from_int(t)).collect();
    let (batch, order) = ThresholdBatch::sorted_from(&floors);
    let sorted_counts = prime_count_batch(x, &batch, cfg)?;
    let mut counts = vec![0u64; floors.len()];
    for (k, &i) in order.iter().enumerate() {
        counts[i] = sorted_counts[k];
    }
    let mut out = CountBreakdown::default();
    for (i, (&(_, shape_binds), &c)) in inner.iter().zip(&counts).enumerate() {
        if shape_binds {
            out.sum_small += c;
        } else {
            out.sum_mid += c;
        }
        out.sum_sub += i as u64 + 1;
    }
    out.total = (out.sum_mid + out.sum_small)
        .checked_sub(out.sum_sub)
        .ok_or(Error::Contract("dissection produced a negative count".into()))?;
    Ok(out)
}

/// `π₂(x; r)` by walking every prime pair, for `x ≤ cap`.
pub fn count_rsa_oracle(q: &RsaQuery, cap: u64, cfg: &SieveConfig) -> Result<u64> {
    if q.x > cap {
        return Err(Error::Resource(format!("oracle cap {cap} is below x = {}", q.x)));
    }
    let x = q.x as u128;
    let (num, den) = (q.r.numer() as u128, q.r.denom() as u128);
    let table = sieve_primes(q.x / 2, cfg)?;
    let primes = table.primes();
    let mut total = 0u64;
    for (i, &p) in primes.iter().enumerate() {
        let p = p as u128;
        if p * p >= x {
            break;
        }
        for &qq in &primes[i + 1..] {
            let qq = qq as u128;
            if p * qq > x || qq * den > num * p {
                break;
            }
            total += 1;
        }
    }
    Ok(total)
}

/// `π₂(x)`, the count of products of two distinct primes up to `x`.
pub fn count_pi2(x: u64, cfg: &SieveConfig) -> Result<u64> {
    if x < 6 {
        return Ok(0);
    }
    let q = RsaQuery::new(x, Rational::new(x, 4)?)?;
    Ok(count_rsa_exact(&q, cfg)?.total)
}

/// Index of `χ = ±1` in [`ClassifiedCount::by_sign`].
pub fn sign_index(value: i8) -> Option<usize> {
    match value {
        1 => Some(0),
        -1 => Some(1),
        _ => None,
    }
}

/// `π₂(x; r)` split by `(χ(p), χ(q))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ClassifiedCount {
    /// `by_sign[i][j]` counts pairs with `χ(p)`, `χ(q)` at indices `i`, `j` (0 for +1, 1 for −1).
    pub by_sign: [[u64; 2]; 2],
    /// Pairs with `gcd(pq, Q) = 1`.
    pub coprime_total: u64,
    pub raw_total: u64,
}

impl ClassifiedCount {
    /// Pairs with `χ(p) = χ(q) = eta`.
    pub fn same_sign(&self, eta: i8) -> Result<u64> {
        let i = sign_index(eta).ok_or_else(|| Error::Domain(format!("eta must be ±1, got {eta}")))?;
        Ok(self.by_sign[i][i])
    }
}

/// [`count_rsa_exact`] with each inner prime count split by the character class of `q`.
pub fn count_rsa_classified(q: &RsaQuery, chi: &QuadraticCharacter, cfg: &SieveConfig) -> Result<ClassifiedCount> {
    if chi.is_principal() {
        return Err(Error::Contract(format!("character {chi} is principal")));
    }
    let x = q.x;
    let r = q.effective_r();
    let small = sieve_primes(isqrt(x), cfg)?;
    let inner = inner_thresholds(x, &r, small.primes());
    let floors: Vec<Rational> = inner.iter().map(|&(t, _)| Rational::from_int(t)).collect();
    let (batch, order) = ThresholdBatch::sorted_from(&floors);
    let sorted = class_count_batch(x, &batch, chi, cfg)?;
    let mut at_threshold = vec![CharClassCount::default(); floors.len()];
    for (k, &i) in order.iter().enumerate() {
        at_threshold[i] = sorted[k];
    }
    let mut out = ClassifiedCount::default();
    let mut upto_p = CharClassCount::default();
    for (&p, above) in small.primes().iter().zip(at_threshold) {
        // Running class counts of primes ≤ p.
        let mut single = CharClassCount::default();
        match chi.value(p) {
            1 => single.plus = 1,
            -1 => single.minus = 1,
            _ => single.zero = 1,
        }
        upto_p = upto_p + single;
        let plus = above.plus - upto_p.plus;
        let minus = above.minus - upto_p.minus;
        let zero = above.zero - upto_p.zero;
        out.raw_total += plus + minus + zero;
        if let Some(i) = sign_index(chi.value(p)) {
            out.by_sign[i][0] += plus;
            out.by_sign[i][1] += minus;
            out.coprime_total += plus + minus;
        }
    }
    Ok(out)
}
