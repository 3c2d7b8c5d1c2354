//! Segmented, odd-only sieve of Eratosthenes.
//!
//! Everything here is built on one primitive: [`sweep`] sieves the odd numbers
//! of a range segment by segment and hands each finished segment to a
//! callback. Segments are sieved in parallel on the current rayon pool, but the
//! per-segment results come back in ascending order and are merged
//! sequentially, so all counts are identical to a single-threaded run.
//!
//! Only the base primes up to `√hi` are kept in memory during a sweep.

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::QuadraticCharacter;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default number of odd entries per segment (one bit each, 128 KiB).
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 20;

/// Limits and tuning for sieve sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveConfig {
    /// Odd entries per segment.
    pub segment_len: usize,
    /// Largest value a streaming sweep may reach.
    pub max_limit: u64,
    /// Upper bound on the bytes a materialized [`PrimeTable`] may occupy.
    pub table_budget_bytes: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig { segment_len: DEFAULT_SEGMENT_LEN, max_limit: 1_000_000_000_000, table_budget_bytes: 1 << 31 }
    }
}

impl SieveConfig {
    pub fn with_segment_len(segment_len: usize) -> Self {
        SieveConfig { segment_len, ..Self::default() }
    }

    fn check(&self, hi: u64) -> Result<()> {
        if self.segment_len == 0 {
            return Err(Error::Contract("segment length must be positive".into()));
        }
        if hi > self.max_limit {
            return Err(Error::Resource(format!("sieve bound {hi} exceeds configured maximum {}", self.max_limit)));
        }
        Ok(())
    }
}

/// Plain sieve for the base primes `≤ n`; `n` is at most `√max_limit`.
fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// A sieved block of odd numbers `lo, lo+2, …`; bit `i` set iff `lo + 2i` is prime.
pub(crate) struct Segment<'a> {
    lo: u64,
    len: usize,
    bits: &'a [u64],
}

impl Segment<'_> {
    fn last(&self) -> u64 {
        self.lo + 2 * (self.len as u64 - 1)
    }

    /// Number of primes in the segment that are `≤ v`.
    fn count_le(&self, v: u64) -> u64 {
        if self.len == 0 || v < self.lo {
            return 0;
        }
        let idx = (((v - self.lo) / 2) as usize).min(self.len - 1);
        let full = idx / 64;
        let mut c: u64 = self.bits[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rem = idx % 64;
        let mask = if rem == 63 { u64::MAX } else { (1u64 << (rem + 1)) - 1 };
        c += (self.bits[full] & mask).count_ones() as u64;
        c
    }

    fn total(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let lo = self.lo;
        self.bits.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as u64;
                word &= word - 1;
                Some(lo + 2 * (wi as u64 * 64 + b))
            })
        })
    }
}

fn sieve_segment(lo: u64, len: usize, base: &[u64], buf: &mut Vec<u64>) {
    let words = len.div_ceil(64);
    buf.clear();
    buf.resize(words, u64::MAX);
    if len % 64 != 0 {
        buf[words - 1] = (1u64 << (len % 64)) - 1;
    }
    let hi = lo + 2 * (len as u64 - 1);
    for &p in base.iter().skip(1) {
        let sq = p * p;
        if sq > hi {
            break;
        }
        let mut m = if sq >= lo { sq } else { lo.div_ceil(p) * p };
        if m % 2 == 0 {
            m += p;
        }
        let mut idx = ((m - lo) / 2) as usize;
        let step = p as usize;
        while idx < len {
            buf[idx / 64] &= !(1u64 << (idx % 64));
            idx += step;
        }
    }
    if lo == 1 {
        buf[0] &= !1;
    }
}

/// Sieves the odd numbers in `[max(lo, 3), hi]` and maps every segment through `f`.
///
/// Results are returned in ascending segment order regardless of how the
/// segments were scheduled.
pub(crate) fn sweep<T, F>(lo: u64, hi: u64, cfg: &SieveConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Segment<'_>) -> T + Sync,
{
    cfg.check(hi)?;
    let start = lo.max(3) | 1;
    if start > hi {
        return Ok(Vec::new());
    }
    let base = small_primes(isqrt(hi));
    let total_odd = (hi - start) / 2 + 1;
    let seg = cfg.segment_len as u64;
    let nseg = total_odd.div_ceil(seg);
    let out = (0..nseg)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            let seg_lo = start + 2 * i * seg;
            let len = seg.min(total_odd - i * seg) as usize;
            sieve_segment(seg_lo, len, &base, buf);
            f(&Segment { lo: seg_lo, len, bits: buf })
        })
        .collect();
    Ok(out)
}

/// Streams the primes of `[lo, hi]` segment by segment, in ascending order of segments.
///
/// Only one segment's primes are materialized per worker, so `hi` may be far
/// beyond what a [`PrimeTable`] could hold.
pub fn map_prime_segments<T, F>(lo: u64, hi: u64, cfg: &SieveConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[u64]) -> T + Sync,
{
    let mut head = Vec::new();
    if lo <= 2 && hi >= 2 {
        head.push(f(&[2]));
    }
    let rest = sweep(lo, hi, cfg, |seg| {
        let primes: Vec<u64> = seg.primes().collect();
        f(&primes)
    })?;
    head.extend(rest);
    Ok(head)
}

/// All primes up to an inclusive limit, with `π(y)` lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `π(n)` for an integer `n ≤ limit`.
    pub fn pi(&self, n: u64) -> Result<u64> {
        if n > self.limit {
            return Err(Error::Resource(format!("π({n}) requested from a table sieved to {}", self.limit)));
        }
        Ok(self.pi_within(n))
    }

    pub(crate) fn pi_within(&self, n: u64) -> u64 {
        self.primes.partition_point(|&p| p <= n) as u64
    }

    /// `π(y)` for an exact rational `y`; `p ≤ y` iff `p ≤ ⌊y⌋`.
    pub fn count(&self, y: &Rational) -> Result<u64> {
        self.pi(y.floor())
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::Resource(format!("primality of {n} beyond table limit {}", self.limit)));
        }
        Ok(self.primes.binary_search(&n).is_ok())
    }
}

/// Builds the table of primes `≤ limit`.
pub fn sieve_primes(limit: u64, cfg: &SieveConfig) -> Result<PrimeTable> {
    // Rosser–Schoenfeld: π(x) < 1.25506 x / ln x for x > 1.
    let est = if limit < 17 { 8.0 } else { 1.25506 * limit as f64 / (limit as f64).ln() };
    let bytes = est * std::mem::size_of::<u64>() as f64;
    if bytes > cfg.table_budget_bytes as f64 {
        return Err(Error::Resource(format!(
            "a prime table to {limit} needs ~{bytes:.0} bytes, budget is {}",
            cfg.table_budget_bytes
        )));
    }
    let chunks = sweep(3, limit, cfg, |s| s.primes().collect::<Vec<_>>())?;
    let mut primes = Vec::with_capacity(est as usize);
    if limit >= 2 {
        primes.push(2);
    }
    for c in chunks {
        primes.extend(c);
    }
    Ok(PrimeTable { limit, primes })
}

/// Sorted list of exact rational thresholds for [`prime_count_batch`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ThresholdBatch {
    thresholds: Vec<Rational>,
}

impl ThresholdBatch {
    /// Wraps thresholds that must already be in ascending order.
    pub fn new(thresholds: Vec<Rational>) -> Result<Self> {
        if thresholds.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Contract("threshold batch is not sorted ascending".into()));
        }
        Ok(ThresholdBatch { thresholds })
    }

    /// Sorts arbitrary thresholds; `order[k]` is the original index of sorted entry `k`.
    pub fn sorted_from(thresholds: &[Rational]) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..thresholds.len()).collect();
        order.sort_by(|&a, &b| thresholds[a].cmp(&thresholds[b]));
        let sorted = order.iter().map(|&i| thresholds[i]).collect();
        (ThresholdBatch { thresholds: sorted }, order)
    }

    pub fn thresholds(&self) -> &[Rational] {
        &self.thresholds
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    fn floors(&self) -> Vec<u64> {
        self.thresholds.iter().map(Rational::floor).collect()
    }
}

/// Runs one sweep over `[3, x_max]` and merges segment-local results at
/// sorted integer thresholds into global prefix values.
fn batch_sweep<A, F>(x_max: u64, floors: &[u64], cfg: &SieveConfig, zero: A, local: F) -> Result<Vec<A>>
where
    A: Copy + Send + std::ops::Add<Output = A>,
    F: Fn(&Segment<'_>, &[u64]) -> (A, Vec<A>) + Sync,
{
    if let Some(&last) = floors.last() {
        if last > x_max {
            return Err(Error::Contract(format!("threshold {last} exceeds sweep bound {x_max}")));
        }
    }
    let mut out = vec![zero; floors.len()];
    if floors.is_empty() {
        return Ok(out);
    }
    let hi = *floors.last().unwrap();
    let parts = sweep(3, hi, cfg, |seg| {
        let a = floors.partition_point(|&t| t < seg.lo);
        let b = floors.partition_point(|&t| t <= seg.last() + 1);
        (a, local(seg, &floors[a..b]))
    })?;
    // Thresholds below 3 keep `zero`; every other one lies inside exactly one segment.
    let mut offset = zero;
    for (a, (seg_total, vals)) in parts {
        for (k, v) in vals.into_iter().enumerate() {
            out[a + k] = offset + v;
        }
        offset = offset + seg_total;
    }
    Ok(out)
}

/// `π(y)` computed by a streaming sweep to `⌊y⌋`.
pub fn prime_count(y: &Rational, cfg: &SieveConfig) -> Result<u64> {
    let batch = ThresholdBatch { thresholds: vec![*y] };
    Ok(prime_count_batch(y.floor(), &batch, cfg)?[0])
}

/// `π(t)` for every threshold of a sorted batch, in one sweep over `[2, x_max]`.
pub fn prime_count_batch(x_max: u64, batch: &ThresholdBatch, cfg: &SieveConfig) -> Result<Vec<u64>> {
    if batch.thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Contract("threshold batch is not sorted ascending".into()));
    }
    let floors = batch.floors();
    let odd =
        batch_sweep(x_max, &floors, cfg, 0u64, |seg, ts| (seg.total(), ts.iter().map(|&t| seg.count_le(t)).collect()))?;
    Ok(odd.into_iter().zip(&floors).map(|(c, &t)| c + u64::from(t >= 2)).collect())
}

/// Primes `≤ y` split by the value of a quadratic character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CharClassCount {
    pub plus: u64,
    pub minus: u64,
    pub zero: u64,
    /// `π(y, χ) = plus − minus`.
    pub signed_sum: i64,
}

impl CharClassCount {
    pub fn total(&self) -> u64 {
        self.plus + self.minus + self.zero
    }

    /// Count of the class where `χ(p) = value`.
    pub fn class(&self, value: i8) -> u64 {
        match value {
            1 => self.plus,
            -1 => self.minus,
            _ => self.zero,
        }
    }

    fn bump(&mut self, value: i8) {
        match value {
            1 => self.plus += 1,
            -1 => self.minus += 1,
            _ => self.zero += 1,
        }
        self.signed_sum = self.plus as i64 - self.minus as i64;
    }
}

impl std::ops::Add for CharClassCount {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let plus = self.plus + o.plus;
        let minus = self.minus + o.minus;
        CharClassCount { plus, minus, zero: self.zero + o.zero, signed_sum: plus as i64 - minus as i64 }
    }
}

/// Class counts at every threshold of a sorted batch, in one sweep.
pub fn class_count_batch(
    x_max: u64,
    batch: &ThresholdBatch,
    chi: &QuadraticCharacter,
    cfg: &SieveConfig,
) -> Result<Vec<CharClassCount>> {
    chi.ensure_valid()?;
    if batch.thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Contract("threshold batch is not sorted ascending".into()));
    }
    let floors = batch.floors();
    let odd = batch_sweep(x_max, &floors, cfg, CharClassCount::default(), |seg, ts| {
        let mut running = CharClassCount::default();
        let mut vals = Vec::with_capacity(ts.len());
        let mut cursor = 0;
        for p in seg.primes() {
            while cursor < ts.len() && ts[cursor] < p {
                vals.push(running);
                cursor += 1;
            }
            running.bump(chi.value(p));
        }
        vals.resize(ts.len(), running);
        (running, vals)
    })?;
    let mut two = CharClassCount::default();
    two.bump(chi.value(2));
    Ok(odd.into_iter().zip(&floors).map(|(c, &t)| if t >= 2 { c + two } else { c }).collect())
}

/// `#{p ≤ y}` by class of `χ(p)`.
pub fn prime_count_char(y: &Rational, chi: &QuadraticCharacter, cfg: &SieveConfig) -> Result<CharClassCount> {
    let batch = ThresholdBatch { thresholds: vec![*y] };
    Ok(class_count_batch(y.floor(), &batch, chi, cfg)?[0])
}

/// Σ_{t=x}^{2x−1} (π(t+h) − π(t) − h/ln t)², the unit-step discretization of
/// the mean-square deviation of primes in short intervals `(t, t+h]`.
pub fn short_interval_variance(x: u64, h: u64, cfg: &SieveConfig) -> Result<f64> {
    if x < 4 {
        return Err(Error::Domain(format!("short-interval variance needs x ≥ 4, got {x}")));
    }
    if h == 0 {
        return Ok(0.0);
    }
    let hi = (2 * x - 1).checked_add(h).ok_or(Error::Overflow("x + h"))?;
    let chunks = sweep(x + 1, hi, cfg, |s| s.primes().collect::<Vec<_>>())?;
    let primes: Vec<u64> = chunks.into_iter().flatten().collect();
    let hf = h as f64;
    let mut lower = 0usize;
    let mut upper = 0usize;
    let mut sum = 0.0f64;
    for t in x..2 * x {
        while lower < primes.len() && primes[lower] <= t {
            lower += 1;
        }
        while upper < primes.len() && primes[upper] <= t + h {
            upper += 1;
        }
        let dev = (upper - lower) as f64 - hf / (t as f64).ln();
        sum += dev * dev;
    }
    Ok(sum)
}

/// The envelope `x h²/(log x)² · (loglog x / log x)²` that bounds the variance up to a constant.
pub fn short_interval_envelope(x: u64, h: u64) -> f64 {
    let xf = x as f64;
    let lx = xf.ln();
    let hf = h as f64;
    xf * hf * hf / (lx * lx) * (lx.ln() / lx).powi(2)
}
