//! Analytic approximations to `π₂(x; r)` and the prime-number-theorem error models.
//!
//! All integrals go through one adaptive Simpson routine. Integrands stay on
//! closed intervals bounded away from `u = 1`, so no endpoint treatment is
//! needed. Inside integrands the difference `loglog(ur) − loglog(u/r)` is
//! always taken from [`loglog_diff_unchecked`], which is cancellation-free.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Tolerances for adaptive Simpson quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-10, rel_tol: 1e-8, max_depth: 60 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Contract("quadrature tolerances must be positive".into()));
        }
        if self.max_depth < 10 {
            return Err(Error::Contract("quadrature max_depth must be at least 10".into()));
        }
        Ok(())
    }

    /// Same depth, tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        QuadratureConfig { abs_tol: self.abs_tol * factor, rel_tol: self.rel_tol * factor, ..*self }
    }
}

const INITIAL_PANELS: usize = 16;

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps || m <= a || b <= m {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1)
        + simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1)
}

/// `∫_a^b f` by adaptive Simpson with Richardson correction.
///
/// The interval is first cut into a few equal panels; the error budget
/// `max(abs_tol, rel_tol·|I|)` is estimated from their coarse sum.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("non-finite integration bounds [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, cfg).map(|v| -v);
    }
    let h = (b - a) / INITIAL_PANELS as f64;
    let mut panels = Vec::with_capacity(INITIAL_PANELS);
    let mut coarse = 0.0;
    let mut fa = f(a);
    for i in 0..INITIAL_PANELS {
        let pa = a + h * i as f64;
        let pb = if i + 1 == INITIAL_PANELS { b } else { a + h * (i + 1) as f64 };
        let pm = 0.5 * (pa + pb);
        let (fm, fb) = (f(pm), f(pb));
        let whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        coarse += whole;
        panels.push((pa, fa, pm, fm, pb, fb, whole));
        fa = fb;
    }
    let budget = cfg.abs_tol.max(cfg.rel_tol * coarse.abs());
    let eps = budget / INITIAL_PANELS as f64;
    let total: f64 = panels
        .into_iter()
        .map(|(pa, fa, pm, fm, pb, fb, whole)| simpson_step(&f, pa, fa, pm, fm, pb, fb, whole, eps, cfg.max_depth))
        .sum();
    if !total.is_finite() {
        return Err(Error::Domain(format!("integral over [{a}, {b}] is not finite")));
    }
    Ok(total)
}

/// `Li(x) = ∫_2^x du / log u`.
pub fn li(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if x.is_nan() || x < 2.0 {
        return Err(Error::Domain(format!("Li(x) needs x ≥ 2, got {x}")));
    }
    integrate(|u| 1.0 / u.ln(), 2.0, x, cfg)
}

/// `Li₂(x) = ∫_2^x du / (log u)²`.
pub fn li2(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if x.is_nan() || x < 2.0 {
        return Err(Error::Domain(format!("Li₂(x) needs x ≥ 2, got {x}")));
    }
    integrate(
        |u| {
            let l = u.ln();
            1.0 / (l * l)
        },
        2.0,
        x,
        cfg,
    )
}

/// Ratio `log r / log x` below which the odd power series replaces the closed form.
pub const SERIES_SWITCH: f64 = 1e-4;
const SERIES_TERMS: usize = 8;

/// `loglog(xr) − loglog(x/r)` from `log x` and `log r`, for `0 ≤ log r < log x`.
pub fn loglog_diff_unchecked(log_x: f64, log_r: f64) -> f64 {
    let t = log_r / log_x;
    if t < SERIES_SWITCH {
        loglog_diff_series(t)
    } else {
        loglog_diff_direct(log_x, log_r)
    }
}

/// `2 Σ_{ℓ<8} t^{2ℓ+1}/(2ℓ+1)` with `t = log r / log x`.
pub fn loglog_diff_series(t: f64) -> f64 {
    let t2 = t * t;
    let mut term = t;
    let mut sum = 0.0;
    for l in 0..SERIES_TERMS {
        sum += term / (2 * l + 1) as f64;
        term *= t2;
    }
    2.0 * sum
}

/// `log(log x + log r) − log(log x − log r)`, written as one `ln_1p` so it stays accurate for small `t`.
pub fn loglog_diff_direct(log_x: f64, log_r: f64) -> f64 {
    (2.0 * log_r / (log_x - log_r)).ln_1p()
}

/// `loglog(xr) − loglog(x/r)` for `x ≥ 4` and `1 ≤ r ≤ x/4`.
pub fn loglog_diff(x: f64, r: f64) -> Result<f64> {
    if x.is_nan() || x < 4.0 {
        return Err(Error::Domain(format!("loglog difference needs x ≥ 4, got {x}")));
    }
    if r.is_nan() || r < 1.0 {
        return Err(Error::Domain(format!("loglog difference needs r ≥ 1, got {r}")));
    }
    if r > x / 4.0 {
        return Err(Error::Domain(format!("loglog difference needs r ≤ x/4, got r = {r}, x = {x}")));
    }
    Ok(loglog_diff_unchecked(x.ln(), r.ln()))
}

/// [`loglog_diff`] with `log r` taken from the exact rational, so `r` near 1 loses no digits.
pub fn loglog_diff_exact(x: f64, r: &Rational) -> Result<f64> {
    let rf = r.to_f64();
    loglog_diff(x, rf)?;
    Ok(loglog_diff_unchecked(x.ln(), r.ln()))
}

/// The prime-number-theorem error envelope `δ(x)` assumed by the bias analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorVariant {
    /// de la Vallée Poussin: `exp(−c √log x)`.
    Dlvp,
    /// Korobov–Vinogradov: `exp(−c (log x)^{3/5} / (loglog(x+4))^{1/5})`.
    Kv,
    /// Riemann hypothesis for Dirichlet L-functions: `x^{−1/2} (log x)²`.
    Grh,
}

impl ErrorVariant {
    pub const ALL: [ErrorVariant; 3] = [ErrorVariant::Dlvp, ErrorVariant::Kv, ErrorVariant::Grh];

    pub fn name(&self) -> &'static str {
        match self {
            ErrorVariant::Dlvp => "dlvp",
            ErrorVariant::Kv => "kv",
            ErrorVariant::Grh => "grh",
        }
    }

    /// Smallest round `K` for which the growth conditions hold on `[2, 10¹²]` with `c = 1`.
    pub fn default_k(&self) -> f64 {
        match self {
            ErrorVariant::Dlvp => 2.0,
            ErrorVariant::Kv => 2.0,
            ErrorVariant::Grh => 50.0,
        }
    }
}

impl FromStr for ErrorVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dlvp" => Ok(ErrorVariant::Dlvp),
            "kv" => Ok(ErrorVariant::Kv),
            "grh" => Ok(ErrorVariant::Grh),
            other => Err(Error::Parse(format!("unknown error model {other:?}; valid: dlvp, kv, grh"))),
        }
    }
}

impl fmt::Display for ErrorVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An error envelope `δ` with its constants `c` (decay rate) and `K` (growth slack).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorModel {
    pub variant: ErrorVariant,
    pub c: f64,
    pub k: f64,
}

impl ErrorModel {
    pub fn new(variant: ErrorVariant, c: f64, k: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("error-model constant c must be positive, got {c}")));
        }
        if !(k >= 1.0 && k.is_finite()) {
            return Err(Error::Domain(format!("error-model constant K must be ≥ 1, got {k}")));
        }
        Ok(ErrorModel { variant, c, k })
    }

    /// `c = 1` and the variant's default `K`.
    pub fn standard(variant: ErrorVariant) -> Self {
        ErrorModel { variant, c: 1.0, k: variant.default_k() }
    }

    /// `δ(e^t)`, the integrand of the tail after `u = e^t`.
    fn delta_at_log(&self, t: f64) -> f64 {
        match self.variant {
            ErrorVariant::Dlvp => (-self.c * t.sqrt()).exp(),
            ErrorVariant::Kv => {
                // log(e^t + 4) without overflowing e^t.
                let log_x4 = t + (4.0 * (-t).exp()).ln_1p();
                (-self.c * t.powf(0.6) / log_x4.ln().powf(0.2)).exp()
            }
            ErrorVariant::Grh => (-0.5 * t).exp() * t * t,
        }
    }

    /// `(a, β, m)` with `δ(e^t) ≤ t^m exp(−a t^β)` for `t ≥ 1`.
    fn decay_shape(&self) -> (f64, f64, f64) {
        match self.variant {
            ErrorVariant::Dlvp => (self.c, 0.5, 0.0),
            // log(e^t + 4) ≤ 2t for t ≥ 1.
            ErrorVariant::Kv => (self.c * 2f64.powf(-0.2), 0.4, 0.0),
            ErrorVariant::Grh => (0.5, 1.0, 2.0),
        }
    }

    /// Upper bound for `∫_T^∞ δ(e^t) dt`, or `None` if `T` is too small for the bound to apply.
    ///
    /// With `w = t^β` the integral is `(1/β) ∫_W^∞ w^k e^{−aw} dw`, `k = (m+1)/β − 1`,
    /// and concavity of `k log w` gives `≤ W^k e^{−aW} / (β (a − k/W))`.
    pub fn tail_bound_from(&self, t: f64) -> Option<f64> {
        let (a, beta, m) = self.decay_shape();
        if t < 1.0 {
            return None;
        }
        let w = t.powf(beta);
        let k = (m + 1.0) / beta - 1.0;
        let rate = a - k / w;
        if rate <= 0.0 {
            return None;
        }
        Some((k * w.ln() - a * w).exp() / (beta * rate))
    }
}

/// `δ(x)` for `x ≥ 2`.
pub fn delta(model: &ErrorModel, x: f64) -> Result<f64> {
    if x.is_nan() || x < 2.0 {
        return Err(Error::Domain(format!("δ(x) needs x ≥ 2, got {x}")));
    }
    let l = x.ln();
    Ok(match model.variant {
        ErrorVariant::Dlvp => (-model.c * l.sqrt()).exp(),
        ErrorVariant::Kv => (-model.c * l.powf(0.6) / (x + 4.0).ln().ln().powf(0.2)).exp(),
        ErrorVariant::Grh => l * l / x.sqrt(),
    })
}

/// `∫_x^∞ δ(u)/u du` by quadrature in `t = log u`, truncated where the decay bound is below tolerance.
pub fn tail_integral_quadrature(model: &ErrorModel, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if x.is_nan() || x < 2.0 {
        return Err(Error::Domain(format!("tail integral needs x ≥ 2, got {x}")));
    }
    let lo = x.ln();
    let target = 0.01 * cfg.abs_tol;
    let mut upper = (2.0 * lo).max(8.0);
    loop {
        if let Some(b) = model.tail_bound_from(upper) {
            if b <= target {
                break;
            }
        }
        upper *= 2.0;
        if upper > 1e9 {
            return Err(Error::Domain("error-model tail does not decay fast enough".into()));
        }
    }
    // Split at powers of 2 in t so each panel sees a comparable decay scale.
    let mut total = 0.0;
    let mut a = lo;
    while a < upper {
        let b = (2.0 * a).max(a + 1.0).min(upper);
        total += integrate(|t| model.delta_at_log(t), a, b, cfg)?;
        a = b;
    }
    Ok(total)
}

/// `∫_x^∞ u^{−3/2} (log u)² du = 2 ((log x)² + 4 log x + 8) / √x`.
pub fn grh_tail_closed_form(x: f64) -> f64 {
    let l = x.ln();
    2.0 * (l * l + 4.0 * l + 8.0) / x.sqrt()
}

/// `∫_x^∞ δ(u)/u du`: closed form under GRH, quadrature otherwise.
pub fn tail_integral(model: &ErrorModel, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    match model.variant {
        ErrorVariant::Grh => {
            if x.is_nan() || x < 2.0 {
                return Err(Error::Domain(format!("tail integral needs x ≥ 2, got {x}")));
            }
            Ok(grh_tail_closed_form(x))
        }
        _ => tail_integral_quadrature(model, x, cfg),
    }
}

/// `Δ(x) = δ(x) + ∫_x^∞ δ(u)/u du`.
pub fn big_delta(model: &ErrorModel, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(delta(model, x)? + tail_integral(model, x, cfg)?)
}

/// Smallest `K` for which the growth conditions on `δ` hold over the grid:
/// `1/K ≤ xδ(x)/log x ≤ K yδ(y)/log y` and `δ(y) log y ≤ K δ(x) log x` for `x ≤ y`.
pub fn admissible_k(model: &ErrorModel, grid: &[f64]) -> Result<f64> {
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut k: f64 = 1.0;
    let mut max_g = f64::MIN;
    let mut min_h = f64::MAX;
    for &x in &sorted {
        let d = delta(model, x)?;
        let l = x.ln();
        let g = x * d / l;
        let h = d * l;
        k = k.max(1.0 / g);
        if max_g > f64::MIN {
            k = k.max(max_g / g).max(h / min_h);
        }
        max_g = max_g.max(g);
        min_h = min_h.min(h);
    }
    Ok(k)
}

/// The closed-form and integral main terms for `π₂(x; r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ApproximantModel {
    /// `x loglog x / log x`.
    Landau,
    /// `2x log r / (log x)²`.
    DeckerMoree,
    /// `(x / log x)(loglog xr − loglog(x/r))`, with `x^δ ≤ r ≤ x/4`.
    Justus,
    /// `∫_{2r}^x (loglog ur − loglog(u/r)) du / log u`.
    FR,
    /// The three-integral smooth model of the prime-sum dissection.
    GR,
    /// `∫_{4r}^x (loglog ur − loglog(u/r)) du / log u + 4r loglog 4r / log 4r`.
    ThmLargeInt,
    /// Same main term as Justus, for `1 + exp(−c√log x) ≤ r ≤ x/4`.
    ThmLarge,
    /// `2x log r / (log x)²` for `1 + x^{−5/12} < r ≤ 3/2`.
    ThmSmall,
    /// Same main term as Justus, for `1 + x^{−5/12} < r ≤ x/4`.
    Uniform,
}

impl ApproximantModel {
    pub const ALL: [ApproximantModel; 9] = [
        ApproximantModel::Landau,
        ApproximantModel::DeckerMoree,
        ApproximantModel::Justus,
        ApproximantModel::FR,
        ApproximantModel::GR,
        ApproximantModel::ThmLargeInt,
        ApproximantModel::ThmLarge,
        ApproximantModel::ThmSmall,
        ApproximantModel::Uniform,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ApproximantModel::Landau => "landau",
            ApproximantModel::DeckerMoree => "decker_moree",
            ApproximantModel::Justus => "justus",
            ApproximantModel::FR => "f_r",
            ApproximantModel::GR => "g_r",
            ApproximantModel::ThmLargeInt => "thm_large_int",
            ApproximantModel::ThmLarge => "thm_large",
            ApproximantModel::ThmSmall => "thm_small",
            ApproximantModel::Uniform => "uniform",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|m| m.name()).collect::<Vec<_>>().join(", ")
    }
}

impl FromStr for ApproximantModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown model {s:?}; valid: {}", Self::valid_names())))
    }
}

impl fmt::Display for ApproximantModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shared settings for [`main_term`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxContext {
    pub quadrature: QuadratureConfig,
    /// The unspecified constant `c` in the validity ranges.
    pub range_c: f64,
    /// Turn validity-range violations into errors.
    pub strict: bool,
}

impl Default for ApproxContext {
    fn default() -> Self {
        ApproxContext { quadrature: QuadratureConfig::default(), range_c: 1.0, strict: false }
    }
}

/// A main-term value plus the hypothesis it violates, if any.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainTerm {
    pub model: ApproximantModel,
    pub value: f64,
    pub range_warning: Option<String>,
}

fn check_range(model: ApproximantModel, x: f64, r: f64, c: f64) -> Option<String> {
    let lx = x.ln();
    let dlvp_floor = 1.0 + (-c * lx.sqrt()).exp();
    let small_floor = 1.0 + x.powf(-5.0 / 12.0);
    let quarter = x / 4.0;
    let (ok, hypothesis) = match model {
        ApproximantModel::Landau => (r >= quarter, "r ≥ x/4 (so that π₂(x; r) = π₂(x))".to_string()),
        ApproximantModel::DeckerMoree | ApproximantModel::FR => {
            let ceiling = (c * lx.sqrt()).exp();
            (
                r >= dlvp_floor && r <= ceiling,
                format!("1 + exp(−c√log x) ≤ r ≤ exp(c√log x), i.e. {dlvp_floor:.6} ≤ r ≤ {ceiling:.6} (c = {c})"),
            )
        }
        ApproximantModel::Justus => (r > 1.0 && r <= quarter, "1 < r ≤ x/4".to_string()),
        ApproximantModel::GR | ApproximantModel::ThmLargeInt => (r >= 1.0 && r <= quarter, "1 ≤ r ≤ x/4".to_string()),
        ApproximantModel::ThmLarge => (
            r >= dlvp_floor && r <= quarter,
            format!("1 + exp(−c√log x) ≤ r ≤ x/4, i.e. {dlvp_floor:.6} ≤ r ≤ {quarter} (c = {c})"),
        ),
        ApproximantModel::ThmSmall => {
            (r > small_floor && r <= 1.5, format!("1 + x^(−5/12) < r ≤ 3/2, i.e. {small_floor:.6} < r ≤ 1.5"))
        }
        ApproximantModel::Uniform => {
            (r > small_floor && r <= quarter, format!("1 + x^(−5/12) < r ≤ x/4, i.e. {small_floor:.6} < r ≤ {quarter}"))
        }
    };
    (!ok).then_some(hypothesis)
}

fn domain(model: ApproximantModel, what: &str) -> Error {
    Error::Domain(format!("{model}: {what}"))
}

/// `(x / log x)(loglog xr − loglog(x/r))`.
fn loglog_main(x: f64, r: &Rational) -> f64 {
    let lx = x.ln();
    x / lx * loglog_diff_unchecked(lx, r.ln())
}

/// `∫_a^x (loglog ur − loglog(u/r)) du / log u`.
fn loglog_integral(a: f64, x: f64, lr: f64, cfg: &QuadratureConfig) -> Result<f64> {
    integrate(
        |u| {
            let lu = u.ln();
            loglog_diff_unchecked(lu, lr) / lu
        },
        a,
        x,
        cfg,
    )
}

/// Main term of `model` at `(x, r)`; integrals are evaluated numerically.
///
/// Values outside the model's validity range are still returned, with the
/// violated hypothesis in `range_warning`, unless `ctx.strict` is set.
pub fn main_term(model: ApproximantModel, x: f64, r: &Rational, ctx: &ApproxContext) -> Result<MainTerm> {
    let rf = r.to_f64();
    if !(x >= 4.0 && x.is_finite()) {
        return Err(domain(model, &format!("x must be ≥ 4, got {x}")));
    }
    if rf.is_nan() || rf < 1.0 {
        return Err(domain(model, &format!("r must be ≥ 1, got {r}")));
    }
    let range_warning = check_range(model, x, rf, ctx.range_c);
    if let (true, Some(h)) = (ctx.strict, &range_warning) {
        return Err(Error::Range { model: model.name().into(), hypothesis: h.clone() });
    }
    let lx = x.ln();
    let cfg = &ctx.quadrature;
    let value = match model {
        ApproximantModel::Landau => x * lx.ln() / lx,
        ApproximantModel::DeckerMoree | ApproximantModel::ThmSmall => 2.0 * x * r.ln() / (lx * lx),
        ApproximantModel::Justus | ApproximantModel::ThmLarge | ApproximantModel::Uniform => {
            if rf >= x {
                return Err(domain(model, "needs r < x so that loglog(x/r) is defined"));
            }
            loglog_main(x, r)
        }
        ApproximantModel::FR => {
            if 2.0 * rf > x {
                return Err(domain(model, "needs 2r ≤ x"));
            }
            loglog_integral(2.0 * rf, x, r.ln(), cfg)?
        }
        ApproximantModel::ThmLargeInt => {
            if 4.0 * rf > x {
                return Err(domain(model, "needs 4r ≤ x"));
            }
            let l4r = (4.0 * rf).ln();
            loglog_integral(4.0 * rf, x, r.ln(), cfg)? + 4.0 * rf * l4r.ln() / l4r
        }
        ApproximantModel::GR => g_r(x, rf, cfg)?,
    };
    Ok(MainTerm { model, value, range_warning })
}

fn g_domain(x: f64, r: f64) -> Result<()> {
    if r.is_nan() || r < 1.0 || x.is_nan() || x < 4.0 * r || !x.is_finite() {
        return Err(Error::Domain(format!("G_r(x) needs 1 ≤ r and x ≥ 4r, got x = {x}, r = {r}")));
    }
    Ok(())
}

/// `G_r(x) = ∫_2^{√(x/r)} Li(ru)/log u du + ∫_{√(x/r)}^{√x} Li(x/u)/log u du − Li(√x)²/2`.
pub fn g_r(x: f64, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    g_domain(x, r)?;
    let inner = cfg.scaled(1e-2);
    let a = (x / r).sqrt();
    let b = x.sqrt();
    let first = integrate(|u| li(r * u, &inner).unwrap_or(f64::NAN) / u.ln(), 2.0, a, cfg)?;
    let second = integrate(|u| li(x / u, &inner).unwrap_or(f64::NAN) / u.ln(), a, b, cfg)?;
    let lb = li(b, &inner)?;
    Ok(first + second - 0.5 * lb * lb)
}

/// The equivalent form `Li(√x)²/2 − ∫_{2r}^{√(xr)} Li(t/r)/log t dt + ∫_{√x}^{√(xr)} Li(x/t)/log t dt`.
pub fn g_r_alt(x: f64, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    g_domain(x, r)?;
    let inner = cfg.scaled(1e-2);
    let top = (x * r).sqrt();
    let b = x.sqrt();
    let lb = li(b, &inner)?;
    let first = integrate(|t| li(t / r, &inner).unwrap_or(f64::NAN) / t.ln(), 2.0 * r, top, cfg)?;
    let second = integrate(|t| li(x / t, &inner).unwrap_or(f64::NAN) / t.ln(), b, top, cfg)?;
    Ok(0.5 * lb * lb - first + second)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson on a fixed uniform grid.
    fn fixed_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn li_and_li2_against_fixed_grid() {
        let cfg = QuadratureConfig::default();
        assert_eq!(li(2.0, &cfg).unwrap(), 0.0);
        assert_eq!(li2(2.0, &cfg).unwrap(), 0.0);
        let want = fixed_simpson(|u| 1.0 / u.ln(), 2.0, 4.0, 20_000);
        assert!((li(4.0, &cfg).unwrap() - want).abs() < 1e-10);
        let want2 = fixed_simpson(|u| 1.0 / u.ln().powi(2), 2.0, 4.0, 20_000);
        assert!((li2(4.0, &cfg).unwrap() - want2).abs() < 1e-10);
        assert!(li(1.5, &cfg).is_err());
        assert!(li2(f64::NAN, &cfg).is_err());
    }

    #[test]
    fn li_reference_value() {
        // li(10^6) − li(2) with li(10^6) = 78627.549159462181919...
        let cfg = QuadratureConfig { abs_tol: 1e-12, rel_tol: 1e-13, max_depth: 60 };
        let li_of_2 = 1.045_163_780_117_493;
        let got = li(1e6, &cfg).unwrap();
        assert!((got - (78_627.549_159_462_18 - li_of_2)).abs() < 1e-6, "{got}");
    }

    #[test]
    fn loglog_examples() {
        assert_eq!(loglog_diff(1e6, 1.0).unwrap(), 0.0);
        assert!((loglog_diff(16.0, 4.0).unwrap() - 3f64.ln()).abs() < 1e-15);
        // 2 atanh(t) with t = log(1+1e-8)/log(1e6); atanh(t) = t to 1e-30 here.
        let t = 1e-8f64.ln_1p() / 1e6f64.ln();
        let r = Rational::new(100_000_001, 100_000_000).unwrap();
        let got = loglog_diff_exact(1e6, &r).unwrap();
        assert!(((got - 2.0 * t) / (2.0 * t)).abs() < 1e-12);
        assert!(loglog_diff(100.0, 26.0).is_err());
        assert!(loglog_diff(3.0, 1.0).is_err());
        assert!(loglog_diff(100.0, 0.5).is_err());
    }

    #[test]
    fn loglog_branches_agree_at_switch() {
        for lx in [2.0f64, 10.0, 40.0, 400.0] {
            for scale in [0.5, 0.9, 1.0, 1.1, 2.0] {
                let t = SERIES_SWITCH * scale;
                let a = loglog_diff_series(t);
                let b = loglog_diff_direct(lx, t * lx);
                assert!(((a - b) / a).abs() < 1e-12, "lx={lx} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn model_names_round_trip() {
        for m in ApproximantModel::ALL {
            assert_eq!(m.name().parse::<ApproximantModel>().unwrap(), m);
        }
        assert!("bogus".parse::<ApproximantModel>().is_err());
        for v in ErrorVariant::ALL {
            assert_eq!(v.name().parse::<ErrorVariant>().unwrap(), v);
        }
    }

    #[test]
    fn closed_form_main_terms() {
        let ctx = ApproxContext::default();
        let l = 100f64.ln();
        let landau = main_term(ApproximantModel::Landau, 100.0, &Rational::from_int(25), &ctx).unwrap();
        assert!((landau.value - 100.0 * l.ln() / l).abs() < 1e-12);
        assert!(landau.range_warning.is_none());
        let dm = main_term(ApproximantModel::DeckerMoree, 100.0, &Rational::from_int(3), &ctx).unwrap();
        assert!((dm.value - 200.0 * 3f64.ln() / (l * l)).abs() < 1e-12);
        let uni = main_term(ApproximantModel::Uniform, 100.0, &Rational::from_int(25), &ctx).unwrap();
        let want = 100.0 / l * (2500f64.ln().ln() - 4f64.ln().ln());
        assert!((uni.value - want).abs() < 1e-12 * want);
    }

    #[test]
    fn strict_mode_turns_warnings_into_errors() {
        let r = Rational::from_int(2);
        let loose = main_term(ApproximantModel::ThmSmall, 1e6, &r, &ApproxContext::default()).unwrap();
        assert!(loose.range_warning.unwrap().contains("3/2"));
        let strict = ApproxContext { strict: true, ..ApproxContext::default() };
        assert!(matches!(main_term(ApproximantModel::ThmSmall, 1e6, &r, &strict), Err(Error::Range { .. })));
        assert!(main_term(ApproximantModel::FR, 10.0, &Rational::from_int(6), &strict).is_err());
    }

    #[test]
    fn f_r_and_thm_large_int_are_consistent() {
        // F_r integrates from 2r, the refined form from 4r plus a closed-form head.
        let ctx = ApproxContext::default();
        let r = Rational::from_int(3);
        let f = main_term(ApproximantModel::FR, 1e6, &r, &ctx).unwrap().value;
        let t = main_term(ApproximantModel::ThmLargeInt, 1e6, &r, &ctx).unwrap().value;
        let gap = loglog_integral(6.0, 12.0, 3f64.ln(), &ctx.quadrature).unwrap();
        let head = 12.0 * 12f64.ln().ln() / 12f64.ln();
        assert!((f - (t - head + gap)).abs() < 1e-6 * f);
    }

    #[test]
    fn g_r_vanishes_at_r_one() {
        let cfg = QuadratureConfig::default();
        assert!(g_r(1e4, 1.0, &cfg).unwrap().abs() < 1e-6);
        assert!(g_r_alt(1e4, 1.0, &cfg).unwrap().abs() < 1e-6);
        assert!(g_r(30.0, 10.0, &cfg).is_err());
    }

    #[test]
    fn delta_examples() {
        let cfg = QuadratureConfig::default();
        let dlvp = ErrorModel::new(ErrorVariant::Dlvp, 1.0, 1.0).unwrap();
        assert!((delta(&dlvp, std::f64::consts::E).unwrap() - (-1f64).exp()).abs() < 1e-15);
        let grh = ErrorModel::standard(ErrorVariant::Grh);
        let l4 = 4f64.ln();
        assert!((delta(&grh, 4.0).unwrap() - l4 * l4 / 2.0).abs() < 1e-15);
        assert!((tail_integral(&grh, 4.0, &cfg).unwrap() - (l4 * l4 + 4.0 * l4 + 8.0)).abs() < 1e-12);
        assert!(delta(&grh, 1.0).is_err());
        assert!(ErrorModel::new(ErrorVariant::Kv, 0.0, 1.0).is_err());
        assert!(ErrorModel::new(ErrorVariant::Kv, 1.0, 0.5).is_err());
    }

    #[test]
    fn grh_antiderivative_by_differentiation() {
        // d/du [−2u^{−1/2}((log u)² + 4 log u + 8)] = u^{−3/2}(log u)².
        let anti = |u: f64| -grh_tail_closed_form(u);
        for u in [4.0f64, 50.0, 1e4] {
            let h = u * 1e-5;
            let fd = (anti(u + h) - anti(u - h)) / (2.0 * h);
            let want = u.ln().powi(2) / u.powf(1.5);
            assert!(((fd - want) / want).abs() < 1e-8);
        }
    }

    #[test]
    fn dlvp_tail_matches_closed_form() {
        // ∫_{L}^∞ e^{−c√t} dt = (2/c²)(1 + c√L) e^{−c√L}.
        let cfg = QuadratureConfig::default();
        for c in [0.5, 1.0, 2.0] {
            let m = ErrorModel::new(ErrorVariant::Dlvp, c, 2.0).unwrap();
            for x in [2.0f64, 100.0, 1e8] {
                let s = x.ln().sqrt();
                let want = 2.0 / (c * c) * (1.0 + c * s) * (-c * s).exp();
                let got = tail_integral_quadrature(&m, x, &cfg).unwrap();
                assert!(((got - want) / want).abs() < 1e-7, "c={c} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn tail_bounds_dominate_quadrature() {
        let cfg = QuadratureConfig { abs_tol: 1e-14, rel_tol: 1e-12, max_depth: 60 };
        for v in ErrorVariant::ALL {
            let m = ErrorModel::standard(v);
            for t in [30.0f64, 60.0] {
                if let Some(bound) = m.tail_bound_from(t) {
                    let x = t.exp();
                    let actual = tail_integral_quadrature(&m, x, &cfg).unwrap();
                    assert!(actual <= bound * (1.0 + 1e-9), "{v} t={t}: {actual} > {bound}");
                }
            }
        }
    }
}
