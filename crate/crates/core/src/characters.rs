//! Real (quadratic) Dirichlet characters, the prime sum `M_χ = Σ_p χ(p)/p`
//! and the bias coefficient `L_χ(s)`.
//!
//! `M_χ` is obtained from `log L(1, χ)` minus the prime-power part of the
//! Euler product, since the raw prime sum converges far too slowly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::asymptotics::{big_delta, ErrorModel, QuadratureConfig};
use crate::error::{Error, Result};
use crate::primes::{isqrt, sieve_primes, SieveConfig};
use crate::rational::{gcd, Rational};

/// A non-principal real character modulo `Q ≥ 3`, stored as its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticCharacter {
    modulus: u64,
    values: Vec<i8>,
    principal: bool,
    spec: String,
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
pub fn jacobi(mut a: u64, mut n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)` for `n ≥ 0`.
pub fn kronecker_symbol(d: i64, n: u64) -> i8 {
    if n == 0 {
        return i8::from(d.unsigned_abs() == 1);
    }
    let tz = n.trailing_zeros();
    let mut sign = 1i8;
    if tz > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            sign = -1;
        }
    }
    let odd = n >> tz;
    sign * jacobi(d.rem_euclid(odd as i64) as u64, odd)
}

fn is_squarefree(mut n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Fundamental discriminants other than 1.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

impl QuadraticCharacter {
    /// The character `n ↦ (D/n)` of a fundamental discriminant `D`, modulus `|D|`.
    pub fn kronecker(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::Validation(format!("{d} is not a fundamental discriminant ≠ 1")));
        }
        let q = d.unsigned_abs();
        let values = (0..q).map(|n| kronecker_symbol(d, n)).collect();
        Self::validated(q, values, format!("kronecker:{d}"))
    }

    /// A character given by its full table `values[0..Q]`.
    pub fn from_table(modulus: u64, values: Vec<i8>) -> Result<Self> {
        let body = values.iter().map(i8::to_string).collect::<Vec<_>>().join(",");
        Self::validated(modulus, values, format!("table:{modulus}:{body}"))
    }

    fn validated(modulus: u64, values: Vec<i8>, spec: String) -> Result<Self> {
        let principal = validate_table(modulus, &values)?;
        if principal {
            return Err(Error::Validation(format!(
                "principal character mod {modulus} carries no bias; a non-principal character is required"
            )));
        }
        Ok(QuadraticCharacter { modulus, values, principal, spec })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    /// Canonical spec string, echoed in reports.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    #[inline]
    pub fn value(&self, n: u64) -> i8 {
        self.values[(n % self.modulus) as usize]
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        if self.principal || self.values.len() as u64 != self.modulus {
            return Err(Error::Contract(format!("character {} is not a valid non-principal character", self.spec)));
        }
        Ok(())
    }
}

/// A generating set of `(Z/q)^×`, at most `log₂ φ(q)` elements long.
fn unit_generators(q: usize, units: &[usize]) -> Vec<usize> {
    let mut in_group = vec![false; q];
    in_group[1 % q] = true;
    let mut group = vec![1 % q];
    let mut gens = Vec::new();
    for &g in units {
        if in_group[g] {
            continue;
        }
        gens.push(g);
        // ⟨H, g⟩ is the disjoint union of the cosets H·g^k before g^k falls back into H.
        let base = group.clone();
        let mut power = g;
        while !in_group[power] {
            for &h in &base {
                let y = h * power % q;
                in_group[y] = true;
                group.push(y);
            }
            power = power * g % q;
        }
    }
    gens
}

/// Checks every character axiom exhaustively; returns whether the table is principal.
pub fn validate_table(modulus: u64, values: &[i8]) -> Result<bool> {
    if modulus < 3 {
        return Err(Error::Validation(format!("modulus must be at least 3, got {modulus}")));
    }
    if values.len() as u64 != modulus {
        return Err(Error::Validation(format!("table has {} entries, modulus is {modulus}", values.len())));
    }
    if let Some(v) = values.iter().find(|v| !matches!(v, -1..=1)) {
        return Err(Error::Validation(format!("value {v} is not in {{-1, 0, 1}}")));
    }
    for (a, &v) in values.iter().enumerate() {
        let unit = gcd(a as u128, modulus as u128) == 1;
        if unit == (v == 0) {
            return Err(Error::Validation(format!(
                "χ({a}) = {v} but gcd({a}, {modulus}) {}",
                if unit { "= 1" } else { "> 1" }
            )));
        }
    }
    if values[1] != 1 {
        return Err(Error::Validation("χ(1) must be 1".into()));
    }
    let units: Vec<usize> = (1..modulus as usize).filter(|&a| values[a] != 0).collect();
    // χ(ag) = χ(a)χ(g) for every unit a and every g in a generating set of the
    // unit group is equivalent to the full pairwise check, by induction on words.
    for g in unit_generators(modulus as usize, &units) {
        for &a in &units {
            let ag = a * g % modulus as usize;
            if values[ag] != values[a] * values[g] {
                return Err(Error::Validation(format!("not multiplicative: χ({a}·{g}) ≠ χ({a})χ({g})")));
            }
        }
    }
    let principal = units.iter().all(|&a| values[a] == 1);
    let sum: i64 = values.iter().map(|&v| v as i64).sum();
    if !principal && sum != 0 {
        return Err(Error::Validation(format!("values sum to {sum}, expected 0")));
    }
    Ok(principal)
}

impl FromStr for QuadraticCharacter {
    type Err = Error;

    /// `kronecker:D` or `table:Q:v0,v1,…,v(Q−1)`.
    fn from_str(s: &str) -> Result<Self> {
        let usage = || Error::Parse(format!("character spec {s:?}: expected kronecker:D or table:Q:v0,v1,..."));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(usage)?;
        match kind {
            "kronecker" => {
                let d: i64 = rest.trim().parse().map_err(|_| usage())?;
                Self::kronecker(d)
            }
            "table" => {
                let (q, body) = rest.split_once(':').ok_or_else(usage)?;
                let q: u64 = q.trim().parse().map_err(|_| usage())?;
                let values = body
                    .split(',')
                    .map(|v| v.trim().trim_start_matches('+').parse::<i8>().map_err(|_| usage()))
                    .collect::<Result<Vec<_>>>()?;
                Self::from_table(q, values)
            }
            _ => Err(usage()),
        }
    }
}

impl fmt::Display for QuadraticCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec)
    }
}

/// Truncation settings for `L(1, χ)` and `M_χ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MertensConfig {
    /// Primes `≤ prime_cutoff` enter the prime-power correction explicitly.
    pub prime_cutoff: u64,
    /// Full periods summed directly before the digamma tail takes over.
    pub period_blocks: u64,
    pub sieve: SieveConfig,
}

impl Default for MertensConfig {
    fn default() -> Self {
        MertensConfig { prime_cutoff: 10_000_000, period_blocks: 10_000, sieve: SieveConfig::default() }
    }
}

/// `ψ(z)` for `z ≥ 10` from the asymptotic series; truncation error below `z^{-12}`.
fn digamma_large(z: f64) -> f64 {
    let z2 = 1.0 / (z * z);
    let series = z2 * (1.0 / 12.0 - z2 * (1.0 / 120.0 - z2 * (1.0 / 252.0 - z2 * (1.0 / 240.0 - z2 / 132.0))));
    z.ln() - 0.5 / z - series
}

/// `L(1, χ)` with an error estimate.
///
/// The first `period_blocks` full periods are summed directly; the rest is
/// `−(1/Q) Σ_a χ(a) ψ(M + a/Q)`, valid because `Σ_a χ(a) = 0`.
pub fn l_function_at_one(chi: &QuadraticCharacter, period_blocks: u64) -> Result<(f64, f64)> {
    chi.ensure_valid()?;
    let q = chi.modulus();
    let blocks = period_blocks.max(10);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for m in 0..blocks {
        let mut block = 0.0;
        for a in 1..=q {
            let v = chi.value(a);
            if v != 0 {
                block += v as f64 / (m * q + a) as f64;
            }
        }
        // Kahan summation across blocks.
        let y = block - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let mf = blocks as f64;
    let tail: f64 =
        (1..=q).map(|a| chi.value(a) as f64 * (digamma_large(mf + a as f64 / q as f64) - mf.ln())).sum::<f64>()
            / -(q as f64);
    let err = mf.powi(-12) + (q + blocks) as f64 * f64::EPSILON;
    Ok((sum + tail, err))
}

/// `M_χ = Σ_p χ(p)/p` together with its ingredients and a rigorous truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MertensValue {
    pub value: f64,
    pub l_at_one: f64,
    /// `Σ_{p ≤ P} Σ_{k ≥ 2} χ(p)^k / (k p^k)`.
    pub prime_power_correction: f64,
    pub error_bound: f64,
    pub prime_cutoff: u64,
}

fn mertens_uncached(chi: &QuadraticCharacter, cfg: &MertensConfig) -> Result<MertensValue> {
    let (l1, l_err) = l_function_at_one(chi, cfg.period_blocks)?;
    if l1 <= 0.0 {
        return Err(Error::Domain(format!("L(1, χ) = {l1} is not positive")));
    }
    let cutoff = cfg.prime_cutoff.max(1000);
    let table = sieve_primes(cutoff, &cfg.sieve)?;
    const POWER_CAP: f64 = 1e18;
    let mut correction = 0.0f64;
    let mut power_tail = 0.0f64;
    // Largest primes first so the small terms accumulate before the large ones.
    for &p in table.primes().iter().rev() {
        let v = chi.value(p);
        if v == 0 {
            continue;
        }
        let pf = p as f64;
        let mut pk = pf * pf;
        let mut sign = 1.0; // χ(p)^k for k = 2
        let mut k = 2u32;
        let mut term_sum = 0.0;
        while pk <= POWER_CAP {
            term_sum += sign / (k as f64 * pk);
            k += 1;
            pk *= pf;
            sign *= v as f64;
        }
        correction += term_sum;
        // Omitted k ≥ k0: at most p^{-k0} / (k0 (1 − 1/p)).
        power_tail += 1.0 / (k as f64 * pk * (1.0 - 1.0 / pf));
    }
    // Primes beyond the cutoff: Σ_{p>P} 1/(2p(p−1)) ≤ 1.25506 / (P ln P) · P/(P−1)
    // by partial summation with π(u) < 1.25506 u / ln u.
    let pc = cutoff as f64;
    let prime_tail = 1.25506 / (pc * pc.ln()) * pc / (pc - 1.0);
    Ok(MertensValue {
        value: l1.ln() - correction,
        l_at_one: l1,
        prime_power_correction: correction,
        error_bound: prime_tail + power_tail + l_err / l1 + 1e-14,
        prime_cutoff: cutoff,
    })
}

type CacheKey = (Vec<i8>, u64, u64);

fn mertens_cache() -> &'static RwLock<HashMap<CacheKey, MertensValue>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, MertensValue>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `M_χ = Σ_p χ(p)/p`, cached per character and truncation setting.
pub fn mertens_chi(chi: &QuadraticCharacter, cfg: &MertensConfig) -> Result<MertensValue> {
    chi.ensure_valid()?;
    let key = (chi.values().to_vec(), cfg.prime_cutoff, cfg.period_blocks);
    if let Some(v) = mertens_cache().read().expect("mertens cache poisoned").get(&key) {
        return Ok(*v);
    }
    let mut guard = mertens_cache().write().expect("mertens cache poisoned");
    if let Some(v) = guard.get(&key) {
        return Ok(*v);
    }
    let v = mertens_uncached(chi, cfg)?;
    guard.insert(key, v);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMethod {
    MertensCompletion,
}

/// `L_χ(s) = (1/s) Σ_{p<√s} χ(p) p + Σ_{p≥√s} χ(p)/p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasCoefficient {
    pub s: Rational,
    pub head: f64,
    pub tail: f64,
    pub value: f64,
    pub tail_method: TailMethod,
    pub error_bound: f64,
}

/// Evaluates `L_χ(s)`; the tail is `M_χ − Σ_{p<√s} χ(p)/p`.
pub fn l_chi_s(chi: &QuadraticCharacter, s: &Rational, cfg: &MertensConfig) -> Result<BiasCoefficient> {
    chi.ensure_valid()?;
    if *s < Rational::from_int(4) {
        return Err(Error::Domain(format!("L_χ(s) needs s ≥ 4, got {s}")));
    }
    let m = mertens_chi(chi, cfg)?;
    let root = isqrt(s.floor());
    let table = sieve_primes(root, &cfg.sieve)?;
    let mut weighted: i128 = 0;
    let mut partial = 0.0f64;
    for &p in table.primes().iter().take_while(|&&p| s.square_lt(p)) {
        let v = chi.value(p);
        weighted += v as i128 * p as i128;
        partial += v as f64 / p as f64;
    }
    let head = weighted as f64 * s.denom() as f64 / s.numer() as f64;
    let tail = m.value - partial;
    let rounding = (table.len() as f64 + 1.0) * f64::EPSILON;
    Ok(BiasCoefficient {
        s: *s,
        head,
        tail,
        value: head + tail,
        tail_method: TailMethod::MertensCompletion,
        error_bound: m.error_bound + rounding,
    })
}

/// The envelope `Δ(√s)/log s` that bounds `|L_χ(s)|` up to a constant depending on `Q` and `K`.
pub fn l_chi_bound(s: f64, model: &ErrorModel, cfg: &QuadratureConfig) -> Result<f64> {
    if s.is_nan() || s < 4.0 {
        return Err(Error::Domain(format!("bias-coefficient envelope needs s ≥ 4, got {s}")));
    }
    Ok(big_delta(model, s.sqrt(), cfg)? / s.ln())
}
