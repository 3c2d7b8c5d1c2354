//! Exact counting of RSA integers `pq ≤ x` with `p < q ≤ rp`, the analytic
//! approximations to that count, and the bias of `pq` across character classes.
//!
//! ```
//! use rsaint::{count_rsa_exact, RsaQuery, SieveConfig};
//!
//! let q = RsaQuery::new(100, "3".parse().unwrap()).unwrap();
//! assert_eq!(count_rsa_exact(&q, &SieveConfig::default()).unwrap().total, 9);
//! ```

pub mod asymptotics;
pub mod bias;
pub mod characters;
pub mod counting;
pub mod error;
pub mod primes;
pub mod rational;

pub use asymptotics::{
    big_delta, delta, g_r, g_r_alt, li, li2, loglog_diff, main_term, ApproxContext, ApproximantModel, ErrorModel,
    ErrorVariant, MainTerm, QuadratureConfig,
};
pub use bias::{bias_report, bias_table, empirical_bias, predicted_bias, BiasConfig, BiasReport, BiasStatus};
pub use characters::{l_chi_bound, l_chi_s, mertens_chi, BiasCoefficient, MertensConfig, QuadraticCharacter};
pub use counting::{
    count_pi2, count_rsa_classified, count_rsa_exact, count_rsa_oracle, ClassifiedCount, CountBreakdown, RsaQuery,
};
pub use error::{Error, Result};
pub use primes::{
    prime_count, prime_count_batch, prime_count_char, short_interval_variance, sieve_primes, CharClassCount,
    PrimeTable, SieveConfig, ThresholdBatch,
};
pub use rational::Rational;
