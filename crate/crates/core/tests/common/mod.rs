//! Test-side oracles, written independently of the library's sieve.
#![allow(dead_code)]

/// Primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Plain byte-per-number sieve of Eratosthenes.
pub fn eratosthenes(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Prefix counts `π(n)` for every `n ≤ limit`.
pub fn pi_table(limit: usize) -> Vec<u32> {
    let mut composite = vec![false; limit + 1];
    let mut pi = vec![0u32; limit + 1];
    let mut c = 0;
    for i in 2..=limit {
        if !composite[i] {
            c += 1;
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
        pi[i] = c;
    }
    pi
}

/// Kronecker-style character value from an explicit table.
pub fn table_value(table: &[i8], n: u64) -> i8 {
    table[(n % table.len() as u64) as usize]
}

/// `∫_a^b f` by composite Simpson with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + inner + f(b)) * h / 3.0
}

/// `(Σ_{p ≤ X} χ(p)/p, Σ_{p ≤ X} χ(p))` over primes streamed from the library sieve.
pub fn direct_prime_sums(table: &[i8], x: u64) -> (f64, i64) {
    let cfg = rsaint::SieveConfig::default();
    let parts = rsaint::primes::map_prime_segments(2, x, &cfg, |ps| {
        let mut s = 0.0f64;
        let mut c = 0i64;
        for &p in ps.iter().rev() {
            let v = table_value(table, p);
            s += v as f64 / p as f64;
            c += v as i64;
        }
        (s, c)
    })
    .unwrap();
    // Later segments hold the smaller terms; add them first.
    parts.iter().rev().fold((0.0, 0), |(s, c), &(ds, dc)| (s + ds, c + dc))
}

/// `Σ_{p > X} χ(p)/p` for a quadratic character, by partial summation with
/// `π(u, χ) ≈ −π(√u)/2` (the prime-square bias): `−π(X, χ)/X − ∫_{log X}^∞ e^{−t/2}/t dt`.
pub fn model_tail(pi_chi_x: i64, x: u64) -> f64 {
    let lx = (x as f64).ln();
    -(pi_chi_x as f64) / x as f64 - simpson(|t| (-t / 2.0).exp() / t, lx, lx + 120.0, 20_000)
}

/// `M_χ` by direct summation to `X` plus the model tail.
pub fn mertens_direct(table: &[i8], x: u64) -> f64 {
    let (s, c) = direct_prime_sums(table, x);
    s + model_tail(c, x)
}

/// Kronecker symbol `(d/n)` for `n ≥ 1`: Euler's criterion at odd primes, the
/// mod-8 rule at 2, extended completely multiplicatively through `spf`
/// (smallest prime factor table covering `n`).
pub fn kronecker_oracle(d: i64, n: u64, spf: &[u32]) -> i8 {
    let mut n = n;
    let mut out = 1i8;
    while n > 1 {
        let p = spf[n as usize] as u64;
        n /= p;
        out *= if p == 2 {
            match d.rem_euclid(8) {
                0 | 2 | 4 | 6 => 0,
                1 | 7 => 1,
                _ => -1,
            }
        } else {
            let a = d.rem_euclid(p as i64) as u64;
            let (mut base, mut e, mut acc) = (a, (p - 1) / 2, 1u64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            match acc {
                0 => 0,
                1 => 1,
                _ => -1,
            }
        };
        if out == 0 {
            break;
        }
    }
    out
}

/// Smallest prime factor of every `n ≤ limit` (`spf[0] = spf[1] = 0`).
pub fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}
