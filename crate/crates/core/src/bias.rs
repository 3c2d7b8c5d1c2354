//! The congruence-class bias of RSA integers: exact empirical ratios against
//! the predicted `(1/4)(1 + η L_χ(s) / (loglog xr − loglog(x/r)))`.
//!
//! The prediction keeps only the main term. The unspecified lower-order terms
//! are reported as separate uncertainty columns so that no fitted constant is
//! silently folded into it.

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{big_delta, delta, loglog_diff_exact, ErrorModel, ErrorVariant, QuadratureConfig};
use crate::characters::{l_chi_s, MertensConfig, QuadraticCharacter};
use crate::counting::{count_rsa_classified, ClassifiedCount, RsaQuery};
use crate::error::{Error, Result};
use crate::primes::SieveConfig;
use crate::rational::Rational;

/// Settings shared by every bias evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BiasConfig {
    pub sieve: SieveConfig,
    pub mertens: MertensConfig,
    pub quadrature: QuadratureConfig,
    pub error_model: ErrorModel,
}

impl Default for BiasConfig {
    fn default() -> Self {
        BiasConfig {
            sieve: SieveConfig::default(),
            mertens: MertensConfig::default(),
            quadrature: QuadratureConfig::default(),
            error_model: ErrorModel::standard(ErrorVariant::Grh),
        }
    }
}

fn check_eta(eta: i8) -> Result<()> {
    if eta == 1 || eta == -1 {
        Ok(())
    } else {
        Err(Error::Domain(format!("eta must be +1 or -1, got {eta}")))
    }
}

/// `#{χ(p) = χ(q) = η}` over `#{gcd(pq, Q) = 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmpiricalBias {
    pub num: u64,
    pub den: u64,
    /// `None` when no pair is coprime to the modulus.
    pub ratio: Option<f64>,
    pub counts: ClassifiedCount,
}

pub fn empirical_bias(q: &RsaQuery, chi: &QuadraticCharacter, eta: i8, cfg: &SieveConfig) -> Result<EmpiricalBias> {
    check_eta(eta)?;
    let counts = count_rsa_classified(q, chi, cfg)?;
    let num = counts.same_sign(eta)?;
    let den = counts.coprime_total;
    let ratio = (den > 0).then(|| num as f64 / den as f64);
    Ok(EmpiricalBias { num, den, ratio, counts })
}

/// Main-term prediction and its uncertainty columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictedBias {
    pub l_chi: f64,
    pub loglog_diff: f64,
    /// `η L_χ(s) / (loglog xr − loglog(x/r))`
    pub h_main: f64,
    /// `(1 + h_main) / 4`
    pub ratio: f64,
    /// `δ(√x)`
    pub delta_sqrt_x: f64,
    /// `Δ(√s) / log x`
    pub bigdelta_term: f64,
    /// `1 / loglog x`
    pub loglog_correction: f64,
}

impl PredictedBias {
    /// Size of the omitted terms with every implied constant set to 1:
    /// `(1/4)(δ(√x) + (|L_χ(s)|/loglog x + Δ(√s)/log x) / (loglog xr − loglog(x/r)))`.
    pub fn uncertainty_scale(&self) -> f64 {
        0.25 * (self.delta_sqrt_x + (self.l_chi.abs() * self.loglog_correction + self.bigdelta_term) / self.loglog_diff)
    }
}

pub fn predicted_bias(q: &RsaQuery, chi: &QuadraticCharacter, eta: i8, cfg: &BiasConfig) -> Result<PredictedBias> {
    check_eta(eta)?;
    if q.s() < Rational::from_int(4) {
        return Err(Error::Domain(format!("bias prediction needs s = x/r ≥ 4, got s = {}", q.s())));
    }
    let x = q.x() as f64;
    let coefficient = l_chi_s(chi, &q.s(), &cfg.mertens)?;
    let diff = loglog_diff_exact(x, &q.r())?;
    let h_main = eta as f64 * coefficient.value / diff;
    let s = q.s().to_f64();
    Ok(PredictedBias {
        l_chi: coefficient.value,
        loglog_diff: diff,
        h_main,
        ratio: 0.25 * (1.0 + h_main),
        delta_sqrt_x: delta(&cfg.error_model, x.sqrt())?,
        bigdelta_term: big_delta(&cfg.error_model, s.sqrt(), &cfg.quadrature)? / x.ln(),
        loglog_correction: 1.0 / x.ln().ln(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasStatus {
    Ok,
    /// No pair coprime to the modulus, so the ratio has no value.
    UndefinedRatio,
    Error(String),
}

impl std::fmt::Display for BiasStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BiasStatus::Ok => f.write_str("ok"),
            BiasStatus::UndefinedRatio => f.write_str("undefined_ratio"),
            BiasStatus::Error(e) => write!(f, "error: {e}"),
        }
    }
}

/// One row of a bias table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasReport {
    pub x: u64,
    pub r: Rational,
    pub s: Rational,
    pub modulus: u64,
    pub eta: i8,
    pub empirical: Option<EmpiricalBias>,
    pub predicted: Option<PredictedBias>,
    pub status: BiasStatus,
}

impl BiasReport {
    pub fn empirical_ratio(&self) -> Option<f64> {
        self.empirical.and_then(|e| e.ratio)
    }

    /// `|empirical − predicted| / uncertainty_scale`, the constant the omitted terms would need.
    pub fn required_constant(&self) -> Option<f64> {
        let p = self.predicted?;
        Some((self.empirical_ratio()? - p.ratio).abs() / p.uncertainty_scale())
    }
}

/// Empirical and predicted bias at one point; failures land in `status`.
pub fn bias_report(q: &RsaQuery, chi: &QuadraticCharacter, eta: i8, cfg: &BiasConfig) -> BiasReport {
    let mut report = BiasReport {
        x: q.x(),
        r: q.r(),
        s: q.s(),
        modulus: chi.modulus(),
        eta,
        empirical: None,
        predicted: None,
        status: BiasStatus::Ok,
    };
    match empirical_bias(q, chi, eta, &cfg.sieve) {
        Ok(e) => {
            if e.ratio.is_none() {
                report.status = BiasStatus::UndefinedRatio;
            }
            report.empirical = Some(e);
        }
        Err(e) => report.status = BiasStatus::Error(e.to_string()),
    }
    match predicted_bias(q, chi, eta, cfg) {
        Ok(p) => report.predicted = Some(p),
        Err(e) if report.status == BiasStatus::Ok => report.status = BiasStatus::Error(e.to_string()),
        Err(_) => {}
    }
    report
}

/// One report per `(x, s)` grid point, in input order.
pub fn bias_table(grid: &[(u64, Rational)], chi: &QuadraticCharacter, eta: i8, cfg: &BiasConfig) -> Vec<BiasReport> {
    grid.par_iter()
        .map(|&(x, s)| match RsaQuery::from_s(x, s) {
            Ok(q) => bias_report(&q, chi, eta, cfg),
            Err(e) => BiasReport {
                x,
                r: Rational::ZERO,
                s,
                modulus: chi.modulus(),
                eta,
                empirical: None,
                predicted: None,
                status: BiasStatus::Error(e.to_string()),
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi4() -> QuadraticCharacter {
        QuadraticCharacter::kronecker(-4).unwrap()
    }

    fn query(x: u64, r: &str) -> RsaQuery {
        RsaQuery::new(x, r.parse().unwrap()).unwrap()
    }

    #[test]
    fn empirical_examples() {
        let cfg = SieveConfig::default();
        let minus = empirical_bias(&query(100, "25"), &chi4(), -1, &cfg).unwrap();
        assert_eq!((minus.num, minus.den, minus.ratio), (6, 16, Some(0.375)));
        let plus = empirical_bias(&query(100, "25"), &chi4(), 1, &cfg).unwrap();
        assert_eq!((plus.num, plus.den, plus.ratio), (2, 16, Some(0.125)));
        for eta in [1, -1] {
            let e = empirical_bias(&query(10, "5/2"), &chi4(), eta, &cfg).unwrap();
            assert_eq!((e.num, e.den, e.ratio), (0, 0, None));
        }
        assert!(empirical_bias(&query(100, "25"), &chi4(), 0, &cfg).is_err());
    }

    #[test]
    fn undefined_ratio_is_a_status() {
        let r = bias_report(&query(10, "5/2"), &chi4(), 1, &BiasConfig::default());
        assert_eq!(r.status, BiasStatus::UndefinedRatio);
        assert!(r.predicted.is_some());
        assert!(r.empirical_ratio().is_none());
    }

    #[test]
    fn eta_antisymmetry() {
        let cfg = BiasConfig::default();
        let q = query(100_000, "100");
        let plus = predicted_bias(&q, &chi4(), 1, &cfg).unwrap();
        let minus = predicted_bias(&q, &chi4(), -1, &cfg).unwrap();
        assert_eq!(plus.h_main, -minus.h_main);
        assert_eq!(plus.ratio + minus.ratio, 0.5);
    }

    #[test]
    fn table_keeps_order_and_records_errors() {
        let grid = vec![
            (100, Rational::from_int(4)),
            (10, Rational::from_int(4)),
            (100, Rational::from_int(200)),
            (1000, Rational::from_int(10)),
        ];
        let rows = bias_table(&grid, &chi4(), -1, &BiasConfig::default());
        assert_eq!(rows.len(), 4);
        assert_eq!(rows.iter().map(|r| r.x).collect::<Vec<_>>(), vec![100, 10, 100, 1000]);
        assert_eq!(rows[0].status, BiasStatus::Ok);
        assert_eq!(rows[0].empirical_ratio(), Some(0.375));
        assert!(matches!(rows[2].status, BiasStatus::Error(_)));
        assert_eq!(rows[3].status, BiasStatus::Ok);
    }
}
