//! Node subsampling and resampling baselines for the studentized statistic.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edgeworth::{first_order_summary, smoothing_noise};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::motif::Motif;
use crate::rng;

pub const DEFAULT_N_BOOT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BootstrapMode {
    /// `m_sub` nodes without replacement.
    Subsample,
    /// `m` nodes with replacement; repeated nodes become non-adjacent copies.
    Resample,
}

/// `⌊√m⌋`.
pub fn default_subsample_size(m: usize) -> usize {
    (m as f64).sqrt().floor() as usize
}

/// Plug-in discrepancy and standard error of one pair of networks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Studentized {
    pub d_hat: f64,
    pub s_hat: f64,
}

/// `D̂` and `Ŝ` for `ga` against `gb`.
pub fn studentized(ga: &Graph, gb: &Graph, motif: &Motif) -> Result<Studentized> {
    let (ua, xa) = first_order_summary(ga, motif)?;
    let (ub, xb) = first_order_summary(gb, motif)?;
    let s2 = xa / ga.node_count() as f64 + xb / gb.node_count() as f64;
    if !(s2 > 0.0 && s2.is_finite()) {
        return Err(Error::DegenerateVariance(format!("Ŝ² = {s2}")));
    }
    Ok(Studentized {
        d_hat: ua - ub,
        s_hat: s2.sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapOutput {
    /// `T̂⁽ᵇ⁾ = (D̂⁽ᵇ⁾ − D̂)/Ŝ⁽ᵇ⁾ + δ⁽ᵇ⁾`, one per kept replicate, in replicate order.
    pub stats: Vec<f64>,
    /// Raw replicate `(D̂⁽ᵇ⁾, Ŝ⁽ᵇ⁾)`.
    pub replicates: Vec<Studentized>,
    pub dropped: usize,
    pub full: Studentized,
}

impl BootstrapOutput {
    /// Empirical `q`-quantile of the replicate statistics.
    pub fn quantile(&self, q: f64) -> Option<f64> {
        if self.stats.is_empty() {
            return None;
        }
        let mut sorted = self.stats.clone();
        sorted.sort_by(f64::total_cmp);
        let pos = (q * sorted.len() as f64).ceil() as usize;
        Some(sorted[pos.clamp(1, sorted.len()) - 1])
    }

    /// Empirical CDF at `u`.
    pub fn cdf(&self, u: f64) -> f64 {
        if self.stats.is_empty() {
            return f64::NAN;
        }
        self.stats.iter().filter(|&&t| t <= u).count() as f64 / self.stats.len() as f64
    }
}

fn draw(rng: &mut rng::SimRng, m: usize, size: usize, mode: BootstrapMode) -> Vec<usize> {
    match mode {
        BootstrapMode::Subsample => index::sample(rng, m, size).into_vec(),
        BootstrapMode::Resample => (0..size).map(|_| rng.random_range(0..m)).collect(),
    }
}

/// Bootstrap replicates of the studentized discrepancy.
///
/// `sizes` overrides the per-network replicate sizes; the defaults are
/// `⌊√m⌋` when subsampling and `m` when resampling.
#[allow(clippy::too_many_arguments)]
pub fn bootstrap_distribution<R: Rng + ?Sized>(
    ga: &Graph,
    gb: &Graph,
    motif: &Motif,
    mode: BootstrapMode,
    n_boot: usize,
    sizes: Option<(usize, usize)>,
    c_delta: f64,
    rng: &mut R,
) -> Result<BootstrapOutput> {
    if n_boot == 0 {
        return Err(Error::InvalidArgument("n_boot must be at least 1".into()));
    }
    let (m, n) = (ga.node_count(), gb.node_count());
    let (ma, nb) = sizes.unwrap_or(match mode {
        BootstrapMode::Subsample => (default_subsample_size(m), default_subsample_size(n)),
        BootstrapMode::Resample => (m, n),
    });
    if mode == BootstrapMode::Subsample && (ma > m || nb > n) {
        return Err(Error::InvalidArgument(format!(
            "subsample sizes ({ma}, {nb}) exceed node counts ({m}, {n})"
        )));
    }
    if ma < 2 || nb < 2 {
        return Err(Error::InvalidArgument(format!("replicate sizes ({ma}, {nb}) below 2")));
    }
    let full = studentized(ga, gb, motif)?;
    let master: u64 = rng.random();
    let results: Vec<Option<(Studentized, f64)>> = (0..n_boot as u64)
        .into_par_iter()
        .map(|b| {
            let mut r = rng::stream(master, b);
            let sa = ga.select(&draw(&mut r, m, ma, mode)).ok()?;
            let sb = gb.select(&draw(&mut r, n, nb, mode)).ok()?;
            let st = studentized(&sa, &sb, motif).ok()?;
            let delta = smoothing_noise(ma, nb, c_delta, &mut r);
            Some((st, delta))
        })
        .collect();
    let mut out = BootstrapOutput {
        stats: Vec::with_capacity(n_boot),
        replicates: Vec::with_capacity(n_boot),
        dropped: 0,
        full,
    };
    for r in results {
        match r {
            Some((st, delta)) => {
                out.stats.push((st.d_hat - full.d_hat) / st.s_hat + delta);
                out.replicates.push(st);
            }
            None => out.dropped += 1,
        }
    }
    if out.dropped > 0 {
        log::debug!("bootstrap dropped {} of {n_boot} replicates", out.dropped);
    }
    Ok(out)
}
