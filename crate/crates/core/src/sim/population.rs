//! Population values of the sparsity-scaled motif moment `ρ⁻ˢμ`.
//!
//! `μ = E[h]` where, given latents `X₁..X_r`, the conditional containment
//! probability is an exact sum over all `2^{C(r,2)}` edge configurations.
//! The sparsity entering the scaling is the effective one, `ρ_eff = E[W]`,
//! which equals `ρ` unless edge probabilities are clamped; this is the value
//! the empirical density estimates.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::graphon::Graphon;
use super::quadrature::gauss_legendre;
use crate::error::{Error, Result};
use crate::motif::{contains_motif, Motif};

/// Smallest Monte Carlo size accepted by [`population_scaled_moment`].
pub const MIN_MC_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopulationMoment {
    /// `ρ_eff⁻ˢ μ`.
    pub value: f64,
    /// Monte Carlo standard error; zero for deterministic rules.
    pub std_error: f64,
    pub mu: f64,
    pub rho_eff: f64,
}

/// `h` for every edge mask over the `C(r, 2)` pairs, evaluated by
/// [`contains_motif`], with pairs in row-major upper-triangle order.
pub struct ContainmentTable {
    r: usize,
    pairs: Vec<(usize, usize)>,
    hits: Vec<u32>,
}

impl ContainmentTable {
    pub fn new(motif: &Motif) -> Result<Self> {
        let r = motif.r();
        let pairs: Vec<(usize, usize)> = (0..r).flat_map(|a| ((a + 1)..r).map(move |b| (a, b))).collect();
        let mut hits = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let mut sub = vec![vec![false; r]; r];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    sub[a][b] = true;
                    sub[b][a] = true;
                }
            }
            if contains_motif(&sub, motif)? {
                hits.push(mask);
            }
        }
        Ok(ContainmentTable { r, pairs, hits })
    }

    /// `E[h | W]` for pair probabilities `w` in table order.
    pub fn conditional(&self, w: &[f64]) -> f64 {
        self.hits
            .iter()
            .map(|&mask| {
                w.iter()
                    .enumerate()
                    .map(|(k, &p)| if mask >> k & 1 == 1 { p } else { 1.0 - p })
                    .product::<f64>()
            })
            .sum()
    }

    fn conditional_at(&self, graphon: &Graphon, rho: f64, x: &[f64], w: &mut [f64]) -> f64 {
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            w[k] = graphon.edge_prob(rho, x[a], x[b]).0;
        }
        self.conditional(w)
    }
}

/// `E[clamp(ρf)]` over independent uniform latents.
pub fn effective_density(graphon: &Graphon, rho: f64) -> f64 {
    if let Some((sizes, probs)) = graphon.blocks() {
        let mut s = 0.0;
        for (a, pa) in sizes.iter().enumerate() {
            for (b, pb) in sizes.iter().enumerate() {
                s += pa * pb * (rho * probs[a][b]).clamp(0.0, 1.0);
            }
        }
        return s;
    }
    super::quadrature::integrate_2d_composite(64, 8, |u, v| graphon.edge_prob(rho, u, v).0)
}

fn scaled(mu: f64, rho_eff: f64, motif: &Motif, std_error: f64) -> PopulationMoment {
    let scale = rho_eff.powi(-(motif.s() as i32));
    PopulationMoment {
        value: mu * scale,
        std_error: std_error * scale,
        mu,
        rho_eff,
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::InvalidArgument(format!("sparsity {rho} outside (0, 1]")));
    }
    Ok(())
}

/// Monte Carlo estimate over `n_mc` independent latent `r`-tuples.
pub fn population_scaled_moment<R: Rng + ?Sized>(
    graphon: &Graphon,
    motif: &Motif,
    rho: f64,
    n_mc: usize,
    rng: &mut R,
) -> Result<PopulationMoment> {
    check_rho(rho)?;
    if n_mc < MIN_MC_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "n_mc = {n_mc}; at least {MIN_MC_SAMPLES} samples are required"
        )));
    }
    let table = ContainmentTable::new(motif)?;
    let mut x = vec![0.0; table.r];
    let mut w = vec![0.0; table.pairs.len()];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..n_mc {
        x.iter_mut().for_each(|xi| *xi = rng.random::<f64>());
        let h = table.conditional_at(graphon, rho, &x, &mut w);
        sum += h;
        sum_sq += h * h;
    }
    let n = n_mc as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(scaled(mean, effective_density(graphon, rho), motif, (var / n).sqrt()))
}

/// Exact value for a block model, enumerating community assignments.
pub fn block_scaled_moment_exact(graphon: &Graphon, motif: &Motif, rho: f64) -> Result<PopulationMoment> {
    check_rho(rho)?;
    let (sizes, probs) = graphon
        .blocks()
        .ok_or_else(|| Error::InvalidArgument(format!("{} is not a block model", graphon.name())))?;
    let table = ContainmentTable::new(motif)?;
    let (k, r) = (sizes.len(), table.r);
    let mut assign = vec![0usize; r];
    let mut w = vec![0.0; table.pairs.len()];
    let mut mu = 0.0;
    loop {
        let weight: f64 = assign.iter().map(|&c| sizes[c]).product();
        for (slot, &(a, b)) in table.pairs.iter().enumerate() {
            w[slot] = (rho * probs[assign[a]][assign[b]]).clamp(0.0, 1.0);
        }
        mu += weight * table.conditional(&w);
        // odometer over k^r assignments
        let mut pos = 0;
        while pos < r {
            assign[pos] += 1;
            if assign[pos] < k {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
        if pos == r {
            break;
        }
    }
    Ok(scaled(mu, effective_density(graphon, rho), motif, 0.0))
}

/// Composite Gauss–Legendre cubature over `[0,1]^r` with `panels` cells and
/// `order` nodes per cell along each axis.
pub fn scaled_moment_cubature(
    graphon: &Graphon,
    motif: &Motif,
    rho: f64,
    panels: usize,
    order: usize,
) -> Result<PopulationMoment> {
    check_rho(rho)?;
    let table = ContainmentTable::new(motif)?;
    let (x0, w0) = gauss_legendre(order);
    let h = 1.0 / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        for (x, w) in x0.iter().zip(&w0) {
            nodes.push((p as f64 + x) * h);
            weights.push(w * h);
        }
    }
    let (n, r) = (nodes.len(), table.r);
    let mut idx = vec![0usize; r];
    let mut x = vec![0.0; r];
    let mut w = vec![0.0; table.pairs.len()];
    let mut mu = 0.0;
    loop {
        let mut weight = 1.0;
        for (a, &i) in idx.iter().enumerate() {
            x[a] = nodes[i];
            weight *= weights[i];
        }
        mu += weight * table.conditional_at(graphon, rho, &x, &mut w);
        let mut pos = 0;
        while pos < r {
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == r {
            break;
        }
    }
    Ok(scaled(mu, effective_density(graphon, rho), motif, 0.0))
}

/// Deterministic reference value: exact for block models, otherwise a
/// cubature sized to the motif.
pub fn true_scaled_moment(graphon: &Graphon, motif: &Motif, rho: f64) -> Result<PopulationMoment> {
    if graphon.is_block_model() {
        return block_scaled_moment_exact(graphon, motif, rho);
    }
    let (panels, order) = match motif.r() {
        2 => (64, 8),
        3 => (8, 8),
        4 => (3, 6),
        _ => (2, 4),
    };
    scaled_moment_cubature(graphon, motif, rho, panels, order)
}
