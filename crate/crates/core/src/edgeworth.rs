//! Empirical Edgeworth expansion for the studentized, sparsity-scaled
//! moment discrepancy between two networks.
//!
//! Each network is reduced once to a [`NetworkSummary`]; every pairwise
//! quantity is then a closed-form function of two summaries. That split is
//! what makes offline hashing possible.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::motif::{Motif, MotifDescriptor};
use crate::normal;
use crate::projections::{project, ProjectionSet};

/// Smoothing constant used throughout the experiments.
pub const DEFAULT_C_DELTA: f64 = 0.01;

/// Per-network, per-motif statistics sufficient for all pairwise inference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub network_id: String,
    pub n: usize,
    pub motif: MotifDescriptor,
    pub rho_hat: f64,
    pub u_hat: f64,
    pub alpha0_hat: f64,
    /// Variance of the first-order motif projection.
    pub xi_g1_sq: f64,
    /// Mean of `α̂₁²`.
    pub xi_alpha1_sq: f64,
    pub e_a1_cubed: f64,
    pub e_a1_a3: f64,
    pub e_a4_a1: f64,
    pub e_a1a1a2: f64,
}

impl NetworkSummary {
    /// Sparsity-normalized moment `ρ̂⁻ˢ Û`.
    pub fn scaled_moment(&self) -> f64 {
        self.u_hat / self.rho_hat.powi(self.motif.s as i32)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("summary {}: {what}", self.network_id)));
        if !(self.rho_hat > 0.0 && self.rho_hat < 1.0) {
            return bad("rho_hat outside (0, 1)");
        }
        if !(0.0..=1.0).contains(&self.u_hat) {
            return bad("u_hat outside [0, 1]");
        }
        if self.n < self.motif.r + 1 {
            return bad("too few nodes for motif");
        }
        let fields = [
            self.alpha0_hat,
            self.xi_g1_sq,
            self.xi_alpha1_sq,
            self.e_a1_cubed,
            self.e_a1_a3,
            self.e_a4_a1,
            self.e_a1a1a2,
        ];
        if fields.iter().any(|x| !x.is_finite()) {
            return bad("non-finite statistic");
        }
        if self.xi_g1_sq < 0.0 || self.xi_alpha1_sq < 0.0 {
            return bad("negative variance");
        }
        Ok(())
    }
}

/// Edgeworth coefficients for one ordered network pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeworthCoeffs {
    pub m: usize,
    pub n: usize,
    /// Studentizing scale `Ŝ_{m,n}`.
    pub s_hat: f64,
    pub i0: f64,
    pub q1: f64,
    pub q2: f64,
    /// Motif edge count.
    pub s: usize,
}

impl EdgeworthCoeffs {
    /// Coefficients with all corrections switched off.
    pub fn normal(m: usize, n: usize, s_hat: f64, s: usize) -> Self {
        EdgeworthCoeffs {
            m,
            n,
            s_hat,
            i0: 0.0,
            q1: 0.0,
            q2: 0.0,
            s,
        }
    }
}

/// `ρ̂⁻ᵏ` table.
struct InvPowers(Vec<f64>);

impl InvPowers {
    fn new(rho: f64, max: usize, motif: &Motif) -> Result<Self> {
        let inv = 1.0 / rho;
        let table: Vec<f64> = (0..=max as i32).map(|k| inv.powi(k)).collect();
        if table.iter().any(|x| !x.is_finite()) {
            return Err(Error::ExtremeSparsity {
                motif: motif.name().to_string(),
                rho,
            });
        }
        Ok(InvPowers(table))
    }

    #[inline]
    fn get(&self, k: usize) -> f64 {
        self.0[k]
    }
}

/// Hashes one network for one motif.
pub fn summarize(g: &Graph, motif: &Motif, id: &str) -> Result<NetworkSummary> {
    let m = g.node_count();
    if m < motif.r() + 1 {
        return Err(Error::InvalidArgument(format!(
            "{id}: motif {} needs at least {} nodes, graph has {m}",
            motif.name(),
            motif.r() + 1
        )));
    }
    let ps = project(g, motif)?;
    if ps.rho_hat >= 1.0 {
        return Err(Error::DegenerateSparsity(ps.rho_hat));
    }
    let summary = summarize_projections(g, &ps, id)?;
    summary.validate().map_err(|_| Error::ExtremeSparsity {
        motif: motif.name().to_string(),
        rho: ps.rho_hat,
    })?;
    Ok(summary)
}

fn alpha1_values(ps: &ProjectionSet, ip: &InvPowers) -> Vec<f64> {
    let s_int = ps.motif.s();
    let (r, s) = (ps.motif.r() as f64, s_int as f64);
    let mu_over_rho = ps.u_hat / ps.rho_hat;
    ps.g1
        .iter()
        .zip(&ps.grho1)
        .map(|(&ga, &gr)| ip.get(s_int) * (r * ga - 2.0 * s * mu_over_rho * gr))
        .collect()
}

/// Scaled moment `ρ̂⁻ˢÛ` and `ξ̂²_{α1}` alone, the ingredients of the
/// studentized statistic without the expansion terms.
pub fn first_order_summary(g: &Graph, motif: &Motif) -> Result<(f64, f64)> {
    let ps = project(g, motif)?;
    if ps.rho_hat >= 1.0 {
        return Err(Error::DegenerateSparsity(ps.rho_hat));
    }
    let ip = InvPowers::new(ps.rho_hat, motif.s(), motif)?;
    let alpha1 = alpha1_values(&ps, &ip);
    let xi = alpha1.iter().map(|x| x * x).sum::<f64>() / ps.m as f64;
    Ok((ps.u_hat / ps.rho_hat.powi(motif.s() as i32), xi))
}

fn summarize_projections(g: &Graph, ps: &ProjectionSet, id: &str) -> Result<NetworkSummary> {
    let m = ps.m;
    let r = ps.motif.r() as f64;
    let s_int = ps.motif.s();
    let s = s_int as f64;
    let mu = ps.u_hat;
    let rho = ps.rho_hat;
    let xa = ps.xi_a1_sq;
    let xr = ps.xi_rho1_sq;
    let xc = ps.xi_cross;
    let ip = InvPowers::new(rho, 2 * s_int + 3, &ps.motif)?;

    let alpha0 = 2.0 * s * (s + 1.0) * ip.get(s_int + 2) * mu * xr - 2.0 * r * s * ip.get(s_int + 1) * xc;

    let alpha1 = alpha1_values(ps, &ip);

    let alpha3: Vec<f64> = ps
        .g1
        .iter()
        .zip(&ps.grho1)
        .map(|(&ga, &gr)| {
            let inner = -(4.0 * s + 2.0) * ip.get(2 * s_int + 2) * gr * mu * xc
                + r * ip.get(2 * s_int + 1) * ga * xc
                + ip.get(2 * s_int + 1) * mu * (ga * gr - xc);
            -4.0 * r * r * s * ip.get(2 * s_int + 1) * xa * gr
                + r * r * ip.get(2 * s_int) * (ga * ga - xa)
                - 16.0 * s * s * (s + 1.0) * ip.get(2 * s_int + 3) * mu * mu * xr * gr
                + 8.0 * r * s * s * ip.get(2 * s_int + 2) * mu * ga * xr
                + 4.0 * s * s * ip.get(2 * s_int + 2) * mu * mu * (gr * gr - xr)
                - 4.0 * r * s * inner
        })
        .collect();

    // α̂₂(a, b) = c_g2·g2 − c_r2·gρ2 + c_rr·gρ1[a]gρ1[b] − c_rg·gρ1[a]g1[b]
    let c_g2 = r * (r - 1.0) / 2.0 * ip.get(s_int);
    let c_r2 = s * ip.get(s_int + 1) * mu;
    let c_rr = 2.0 * ip.get(s_int) * mu * s * (s + 1.0) * ip.get(2);
    let c_rg = 2.0 * r * s * ip.get(s_int + 1);
    // α̂₄(a, b) = g2·(k_gg·g1[a] − k_rg·gρ1[a]) + gρ2·(k_rr·gρ1[a] − k_gr·g1[a])
    let k_gg = 2.0 * r * r * (r - 1.0) * ip.get(2 * s_int);
    let k_rr = 8.0 * s * s * ip.get(2 * s_int + 2) * mu * mu;
    let k_rg = 4.0 * r * (r - 1.0) * s * ip.get(2 * s_int + 1) * mu;
    let k_gr = 4.0 * r * s * ip.get(2 * s_int + 1) * mu;
    let w_g2: Vec<f64> = (0..m).map(|a| k_gg * ps.g1[a] - k_rg * ps.grho1[a]).collect();
    let w_r2: Vec<f64> = (0..m).map(|a| k_rr * ps.grho1[a] - k_gr * ps.g1[a]).collect();

    // Row partial sums are reduced in index order, so the result does not
    // depend on the thread count.
    let rows: Vec<(f64, f64)> = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut s112 = 0.0;
            let mut s41 = 0.0;
            for b in (a + 1)..m {
                let (g2, gr2) = ps.pair_terms(g, a, b);
                let common = c_g2 * g2 - c_r2 * gr2 + c_rr * ps.grho1[a] * ps.grho1[b];
                let alpha2_ab = common - c_rg * ps.grho1[a] * ps.g1[b];
                let alpha2_ba = common - c_rg * ps.grho1[b] * ps.g1[a];
                s112 += alpha1[a] * alpha1[b] * (alpha2_ab + alpha2_ba);
                let alpha4_ab = g2 * w_g2[a] + gr2 * w_r2[a];
                let alpha4_ba = g2 * w_g2[b] + gr2 * w_r2[b];
                s41 += alpha4_ab * alpha1[b] + alpha4_ba * alpha1[a];
            }
            (s112, s41)
        })
        .collect();
    let ordered_pairs = (m * (m - 1)) as f64;
    let (s112, s41) = rows
        .iter()
        .fold((0.0, 0.0), |(x, y), &(a, b)| (x + a, y + b));

    let mf = m as f64;
    Ok(NetworkSummary {
        network_id: id.to_string(),
        n: m,
        motif: ps.motif.descriptor(),
        rho_hat: rho,
        u_hat: mu,
        alpha0_hat: alpha0,
        xi_g1_sq: xa,
        xi_alpha1_sq: alpha1.iter().map(|x| x * x).sum::<f64>() / mf,
        e_a1_cubed: alpha1.iter().map(|x| x * x * x).sum::<f64>() / mf,
        e_a1_a3: alpha1.iter().zip(&alpha3).map(|(a, b)| a * b).sum::<f64>() / mf,
        e_a4_a1: s41 / ordered_pairs,
        e_a1a1a2: s112 / ordered_pairs,
    })
}

/// Combines two summaries of the same motif into expansion coefficients.
///
/// The formulas are written so that swapping the arguments negates
/// `i0`, `q1`, `q2` exactly and leaves `s_hat` unchanged.
pub fn combine(sa: &NetworkSummary, sb: &NetworkSummary) -> Result<EdgeworthCoeffs> {
    if sa.motif != sb.motif {
        return Err(Error::MotifMismatch(sa.motif.name.clone(), sb.motif.name.clone()));
    }
    if sa.xi_alpha1_sq == 0.0 || sb.xi_alpha1_sq == 0.0 {
        let which = if sa.xi_alpha1_sq == 0.0 { &sa.network_id } else { &sb.network_id };
        return Err(Error::DegenerateVariance(format!(
            "first-order projection of {which} vanishes for motif {}",
            sa.motif.name
        )));
    }
    let m = sa.n as f64;
    let n = sb.n as f64;
    let xa = sa.xi_alpha1_sq;
    let xb = sb.xi_alpha1_sq;
    let s2 = xa / m + xb / n;
    if !(s2 > 0.0 && s2.is_finite()) {
        return Err(Error::DegenerateVariance(format!("Ŝ² = {s2}")));
    }
    let s_hat = s2.sqrt();
    let s3 = s_hat * s2;
    let s5 = s3 * s2;

    let i0 = (sa.alpha0_hat / m - sb.alpha0_hat / n) / s_hat;

    let ea = sa.e_a1_a3 + sa.e_a4_a1;
    let eb = sb.e_a1_a3 + sb.e_a4_a1;
    let q1 = 0.5 * (-(ea / (m * m)) + eb / (n * n)) / s3;

    let ca = sa.e_a1_cubed / 6.0 + sa.e_a1a1a2;
    let cb = sb.e_a1_cubed / 6.0 + sb.e_a1a1a2;
    let wa = xa / (m * m * m) + xb / (m * m * n);
    let wb = xa / (m * n * n) + xb / (n * n * n);
    let q2 = (ca / (m * m) - cb / (n * n)) / s3 + 0.5 * (-(wa * ea) + wb * eb) / s5;

    let coeffs = EdgeworthCoeffs {
        m: sa.n,
        n: sb.n,
        s_hat,
        i0,
        q1,
        q2,
        s: sa.motif.s,
    };
    if ![i0, q1, q2].iter().all(|x| x.is_finite()) {
        return Err(Error::Pathological(format!("{coeffs:?}")));
    }
    Ok(coeffs)
}

/// Empirical Edgeworth distribution function, clamped to `[0, 1]`.
pub fn cdf(c: &EdgeworthCoeffs, u: f64) -> f64 {
    let g = normal::cdf(u) - normal::pdf(u) * (c.q1 + c.q2 * (u * u + 1.0) + c.i0);
    g.clamp(0.0, 1.0)
}

/// Cornish–Fisher approximation of the lower `level` quantile.
pub fn cornish_fisher(c: &EdgeworthCoeffs, level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidArgument(format!("quantile level {level} outside (0, 1)")));
    }
    let z = normal::quantile(level);
    Ok(z + c.i0 + c.q1 + c.q2 * (z * z - 1.0))
}

/// Variance of the smoothing noise `δ_T` for sizes `m`, `n`.
pub fn smoothing_variance(m: usize, n: usize, c_delta: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    c_delta * (m.ln() / m + n.ln() / n)
}

/// One draw of the smoothing noise. Always consumes one normal variate so
/// that streams stay aligned whatever `c_delta` is.
pub fn smoothing_noise<R: Rng + ?Sized>(m: usize, n: usize, c_delta: f64, rng: &mut R) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    if c_delta == 0.0 {
        return 0.0;
    }
    smoothing_variance(m, n, c_delta).sqrt() * z
}

/// Error-rate scale of the expansion for one network; values at or above 1
/// mean the expansion carries no guarantee at this size and sparsity.
pub fn rate_diagnostic(m: usize, rho: f64, motif: &Motif) -> f64 {
    let mf = m as f64;
    let log = mf.ln();
    let tail = log.powf(1.5) / mf;
    let head = if motif.is_cyclic() {
        rho.powf(-(motif.r() as f64) / 2.0) * log.sqrt() / mf
    } else {
        log.sqrt() / (rho * mf)
    };
    let value = head + tail;
    if value >= 1.0 {
        log::warn!(
            "rate diagnostic {value:.3} >= 1 for motif {} at m = {m}, rho = {rho:.4}: expansion order is vacuous",
            motif.name()
        );
    }
    value
}
