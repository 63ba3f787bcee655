//! Two-sample test and Cornish–Fisher confidence interval for the
//! sparsity-scaled moment discrepancy `d = ρ_A⁻ˢμ_A − ρ_B⁻ˢμ_B`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::edgeworth::{self, combine, cornish_fisher, smoothing_noise, EdgeworthCoeffs, NetworkSummary};
use crate::error::{Error, Result};

pub const DEFAULT_TEST_LEVEL: f64 = 0.05;
pub const DEFAULT_CI_LEVEL: f64 = 0.90;

/// Outcome of one two-sided test of `d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub d_hat: f64,
    pub s_hat: f64,
    /// `D̂/Ŝ + δ_T`.
    pub t_obs: f64,
    pub delta_t: f64,
    pub p_value: f64,
    pub reject: bool,
    pub level: f64,
    pub coeffs: EdgeworthCoeffs,
}

/// Open interval `(lo, hi)` for `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub level: f64,
    pub d_hat: f64,
    pub s_hat: f64,
    pub delta_t: f64,
    /// Cornish–Fisher quantiles at `(1 − level)/2` and `(1 + level)/2`.
    pub q_lo: f64,
    pub q_hi: f64,
}

impl ConfidenceInterval {
    pub fn contains(&self, d: f64) -> bool {
        self.lo < d && d < self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Plug-in discrepancy `ρ̂_A⁻ˢÛ − ρ̂_B⁻ˢV̂`.
pub fn discrepancy(sa: &NetworkSummary, sb: &NetworkSummary) -> Result<f64> {
    if sa.motif != sb.motif {
        return Err(Error::MotifMismatch(sa.motif.name.clone(), sb.motif.name.clone()));
    }
    Ok(sa.scaled_moment() - sb.scaled_moment())
}

fn check_level(level: f64) -> Result<()> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidArgument(format!("level {level} outside (0, 1)")));
    }
    Ok(())
}

/// Two-sided p-value `2·min{Ĝ(t), 1 − Ĝ(t)}`.
pub fn p_value(c: &EdgeworthCoeffs, t_obs: f64) -> f64 {
    let g = edgeworth::cdf(c, t_obs);
    (2.0 * g.min(1.0 - g)).clamp(0.0, 1.0)
}

/// Test with an externally supplied smoothing draw.
pub fn test_with_delta(sa: &NetworkSummary, sb: &NetworkSummary, level: f64, delta_t: f64) -> Result<TestResult> {
    check_level(level)?;
    let coeffs = combine(sa, sb)?;
    let d_hat = discrepancy(sa, sb)?;
    let t_obs = d_hat / coeffs.s_hat + delta_t;
    let p = p_value(&coeffs, t_obs);
    Ok(TestResult {
        d_hat,
        s_hat: coeffs.s_hat,
        t_obs,
        delta_t,
        p_value: p,
        reject: p < level,
        level,
        coeffs,
    })
}

/// Tests `d = 0`, drawing one smoothing term from `rng`.
pub fn test<R: Rng + ?Sized>(
    sa: &NetworkSummary,
    sb: &NetworkSummary,
    level: f64,
    c_delta: f64,
    rng: &mut R,
) -> Result<TestResult> {
    let delta = smoothing_noise(sa.n, sb.n, c_delta, rng);
    test_with_delta(sa, sb, level, delta)
}

/// Interval from precomputed coefficients and discrepancy.
pub fn interval_from_coeffs(c: &EdgeworthCoeffs, d_hat: f64, level: f64, delta_t: f64) -> Result<ConfidenceInterval> {
    check_level(level)?;
    let alpha = 1.0 - level;
    let q_lo = cornish_fisher(c, alpha / 2.0)?;
    let q_hi = cornish_fisher(c, 1.0 - alpha / 2.0)?;
    if q_lo >= q_hi {
        return Err(Error::Pathological(format!(
            "Cornish–Fisher quantiles out of order: q_lo = {q_lo}, q_hi = {q_hi} (i0 = {}, q1 = {}, q2 = {})",
            c.i0, c.q1, c.q2
        )));
    }
    Ok(ConfidenceInterval {
        lo: d_hat - (q_hi - delta_t) * c.s_hat,
        hi: d_hat - (q_lo - delta_t) * c.s_hat,
        level,
        d_hat,
        s_hat: c.s_hat,
        delta_t,
        q_lo,
        q_hi,
    })
}

/// Confidence interval with an externally supplied smoothing draw.
pub fn confidence_interval_with_delta(
    sa: &NetworkSummary,
    sb: &NetworkSummary,
    level: f64,
    delta_t: f64,
) -> Result<ConfidenceInterval> {
    let coeffs = combine(sa, sb)?;
    let d_hat = discrepancy(sa, sb)?;
    interval_from_coeffs(&coeffs, d_hat, level, delta_t)
}

/// Two-sided Cornish–Fisher interval at confidence `level`.
pub fn confidence_interval<R: Rng + ?Sized>(
    sa: &NetworkSummary,
    sb: &NetworkSummary,
    level: f64,
    c_delta: f64,
    rng: &mut R,
) -> Result<ConfidenceInterval> {
    let delta = smoothing_noise(sa.n, sb.n, c_delta, rng);
    confidence_interval_with_delta(sa, sb, level, delta)
}

/// Test and interval sharing one smoothing draw.
pub fn analyze<R: Rng + ?Sized>(
    sa: &NetworkSummary,
    sb: &NetworkSummary,
    test_level: f64,
    ci_level: f64,
    c_delta: f64,
    rng: &mut R,
) -> Result<(TestResult, ConfidenceInterval)> {
    let delta = smoothing_noise(sa.n, sb.n, c_delta, rng);
    let t = test_with_delta(sa, sb, test_level, delta)?;
    let ci = interval_from_coeffs(&t.coeffs, t.d_hat, ci_level, delta)?;
    Ok((t, ci))
}
