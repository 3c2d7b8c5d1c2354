mod common;

use proptest::prelude::*;
use rsaint::primes::{
    class_count_batch, map_prime_segments, prime_count, prime_count_batch, prime_count_char, short_interval_envelope,
    short_interval_variance, sieve_primes, SieveConfig, ThresholdBatch,
};
use rsaint::{QuadraticCharacter, Rational};

use common::{eratosthenes, pi_table};

fn pi_upto_million() -> &'static [u32] {
    use std::sync::OnceLock;
    static PI: OnceLock<Vec<u32>> = OnceLock::new();
    PI.get_or_init(|| pi_table(1_000_000))
}

fn arb_threshold() -> impl Strategy<Value = Rational> {
    (0u64..=1_000_000, 1u64..=7).prop_filter_map("fits", |(n, d)| {
        let r = Rational::new(n, d).ok()?;
        (r.floor() <= 1_000_000).then_some(r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn batch_matches_single_queries(mut ts in prop::collection::vec(arb_threshold(), 0..12), seg in 64usize..5000) {
        ts.sort();
        let cfg = SieveConfig::with_segment_len(seg);
        let x_max = ts.last().map_or(0, |t| t.floor());
        let batch = ThresholdBatch::new(ts.clone()).unwrap();
        let got = prime_count_batch(x_max, &batch, &cfg).unwrap();
        let pi = pi_upto_million();
        for (t, g) in ts.iter().zip(got) {
            prop_assert_eq!(g, pi[t.floor() as usize] as u64);
        }
    }

    #[test]
    fn sieve_sanity_bound(x in 0u64..5_000_000, h in 2u64..100_000) {
        // π(x + h) − π(x) ≤ 4h / log h
        let count = map_prime_segments(x + 1, x + h, &SieveConfig::default(), |ps| ps.len() as u64)
            .unwrap()
            .into_iter()
            .sum::<u64>();
        prop_assert!((count as f64) <= 4.0 * h as f64 / (h as f64).ln(), "x={} h={} count={}", x, h, count);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prime_count_is_monotone(a in 0u64..2_000_000, b in 0u64..2_000_000) {
        let cfg = SieveConfig::with_segment_len(4096);
        let (lo, hi) = (a.min(b), a.max(b));
        let p_lo = prime_count(&Rational::from_int(lo), &cfg).unwrap();
        let p_hi = prime_count(&Rational::from_int(hi), &cfg).unwrap();
        prop_assert!(p_lo <= p_hi);
    }

    #[test]
    fn class_counts_partition_pi(y in 0u64..1_000_000, d in prop::sample::select(vec![-4i64, -3, 5, 8, -8, 12, -7, 13])) {
        let chi = QuadraticCharacter::kronecker(d).unwrap();
        let c = prime_count_char(&Rational::from_int(y), &chi, &SieveConfig::with_segment_len(10_000)).unwrap();
        prop_assert_eq!(c.total(), pi_upto_million()[y as usize] as u64);
        prop_assert_eq!(c.signed_sum, c.plus as i64 - c.minus as i64);
    }
}

#[test]
fn tables_are_identical_across_segment_sizes() {
    let reference = sieve_primes(10_000_000, &SieveConfig::default()).unwrap();
    assert_eq!(reference.len(), 664_579);
    for seg in [1usize, 63, 64, 1000, 1 << 16] {
        let other = sieve_primes(10_000_000, &SieveConfig::with_segment_len(seg)).unwrap();
        assert_eq!(other, reference, "segment length {seg}");
    }
}

#[test]
fn table_matches_independent_sieve() {
    let table = sieve_primes(2_000_000, &SieveConfig::with_segment_len(777)).unwrap();
    assert_eq!(table.primes(), eratosthenes(2_000_000).as_slice());
    assert_eq!(table.pi(1).unwrap(), 0);
    assert_eq!(table.pi(table.limit()).unwrap(), table.len() as u64);
    assert!(table.primes().windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn streaming_segments_cover_the_range_in_order() {
    let cfg = SieveConfig::with_segment_len(1000);
    let chunks = map_prime_segments(0, 100_000, &cfg, |ps| ps.to_vec()).unwrap();
    let flat: Vec<u64> = chunks.into_iter().flatten().collect();
    assert_eq!(flat, eratosthenes(100_000));
    let tail = map_prime_segments(99_990, 100_000, &cfg, |ps| ps.to_vec()).unwrap();
    assert_eq!(tail.concat(), vec![99_991]);
    let tail = map_prime_segments(99_992, 100_000, &cfg, |ps| ps.to_vec()).unwrap();
    assert!(tail.concat().is_empty());
}

#[test]
fn class_batch_agrees_with_enumeration_for_tables() {
    let chi: QuadraticCharacter = "table:5:0,1,-1,-1,1".parse().unwrap();
    let primes = eratosthenes(300_000);
    let ts: Vec<Rational> = (0..300_000).step_by(997).map(Rational::from_int).collect();
    let batch = ThresholdBatch::new(ts.clone()).unwrap();
    let got = class_count_batch(300_000, &batch, &chi, &SieveConfig::with_segment_len(5000)).unwrap();
    for (t, c) in ts.iter().zip(got) {
        let below: Vec<u64> = primes.iter().copied().take_while(|&p| p <= t.floor()).collect();
        let plus = below.iter().filter(|&&p| chi.value(p) == 1).count() as u64;
        let minus = below.iter().filter(|&&p| chi.value(p) == -1).count() as u64;
        assert_eq!((c.plus, c.minus, c.zero), (plus, minus, below.len() as u64 - plus - minus));
    }
}

#[test]
fn short_interval_against_direct_double_sum() {
    let pi = pi_table(4000);
    for (x, h) in [(100u64, 10u64), (1000, 37), (1500, 1)] {
        let want: f64 = (x..2 * x)
            .map(|t| {
                let dev = (pi[(t + h) as usize] - pi[t as usize]) as f64 - h as f64 / (t as f64).ln();
                dev * dev
            })
            .sum();
        let got = short_interval_variance(x, h, &SieveConfig::with_segment_len(50)).unwrap();
        assert!((got - want).abs() <= 1e-9 * want, "x={x} h={h}: {got} vs {want}");
    }
    assert_eq!(short_interval_variance(100, 0, &SieveConfig::default()).unwrap(), 0.0);
    let ratio = short_interval_variance(1_000_000, 1000, &SieveConfig::default()).unwrap()
        / short_interval_envelope(1_000_000, 1000);
    assert!(ratio.is_finite() && ratio > 0.0);
}
