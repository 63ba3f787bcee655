//! Built-in graphons and user block models, normalized so `∫∫f = 1`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate_2d, integrate_2d_composite};
use crate::error::{Error, Result};

/// Tolerance on `|∫∫f − 1|` enforced at construction.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// A user-specified stochastic block model, before normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub name: String,
    /// Community proportions, summing to one.
    pub sizes: Vec<f64>,
    /// Symmetric unnormalized connection matrix.
    pub probs: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Smooth(u8),
    Block { cuts: Vec<f64>, sizes: Vec<f64>, probs: Vec<Vec<f64>> },
}

/// A symmetric `f : [0,1]² → ℝ⁺` scaled by `tau` to unit integral.
#[derive(Debug, Clone, PartialEq)]
pub struct Graphon {
    name: String,
    shape: Shape,
    tau: f64,
}

fn smooth6_base(u: f64, v: f64) -> f64 {
    let r2 = u * u + v * v;
    if r2 == 0.0 {
        0.15
    } else {
        r2 / 3.0 * (1.0 / r2).cos() + 0.15
    }
}

fn smooth_base(k: u8, u: f64, v: f64) -> f64 {
    match k {
        1 => u + v,
        2 => (u + v) * (u + v) / 2.0,
        3 => (-(u + v) / 2.0).exp(),
        4 => (-(u + v) / 3.0).exp(),
        5 => ((u + v) / 2.0).cos(),
        6 => smooth6_base(u, v),
        _ => unreachable!("smooth graphon index"),
    }
}

fn smooth6_tau() -> f64 {
    static TAU: OnceLock<f64> = OnceLock::new();
    // the oscillation near the origin is damped by u² + v², so a fine
    // composite rule converges well past the normalization tolerance
    *TAU.get_or_init(|| 1.0 / integrate_2d_composite(256, 8, smooth6_base))
}

fn smooth_tau(k: u8) -> f64 {
    let e = std::f64::consts::E;
    match k {
        1 => 1.0,
        2 => 12.0 / 7.0,
        3 => 1.0 / (2.0 * (1.0 - e.powf(-0.5))).powi(2),
        4 => 1.0 / (3.0 * (1.0 - e.powf(-1.0 / 3.0))).powi(2),
        5 => 1.0 / (4.0 * (2.0 * 0.5f64.cos() - 1f64.cos() - 1.0)),
        6 => smooth6_tau(),
        _ => unreachable!("smooth graphon index"),
    }
}

impl Graphon {
    /// `SmoothGraphon-k` for `k = 1..=6`.
    pub fn smooth(k: u8) -> Result<Self> {
        if !(1..=6).contains(&k) {
            return Err(Error::InvalidArgument(format!("no smooth graphon {k}")));
        }
        let g = Graphon {
            name: format!("SmoothGraphon-{k}"),
            shape: Shape::Smooth(k),
            tau: smooth_tau(k),
        };
        g.check_normalization()?;
        Ok(g)
    }

    /// `BlockModel-k` for `k = 1..=5`.
    pub fn block_model(k: u8) -> Result<Self> {
        let (sizes, probs): (Vec<f64>, [[f64; 2]; 2]) = match k {
            1 => (vec![0.5, 0.5], [[0.6, 0.2], [0.2, 0.2]]),
            2 => (vec![0.5, 0.5], [[0.4, 0.1], [0.1, 0.1]]),
            3 => (vec![0.75, 0.25], [[0.6, 0.2], [0.2, 0.2]]),
            4 => (vec![1.0 / 3.0, 2.0 / 3.0], [[0.8, 0.4], [0.4, 0.2]]),
            5 => (vec![2.0 / 3.0, 1.0 / 3.0], [[0.8, 0.2], [0.2, 0.2]]),
            _ => return Err(Error::InvalidArgument(format!("no block model {k}"))),
        };
        Graphon::from_block(&BlockSpec {
            name: format!("BlockModel-{k}"),
            sizes,
            probs: probs.iter().map(|r| r.to_vec()).collect(),
        })
    }

    /// Normalizes a user block model.
    pub fn from_block(spec: &BlockSpec) -> Result<Self> {
        let k = spec.sizes.len();
        let bad = |msg: &str| Err(Error::InvalidArgument(format!("block model {}: {msg}", spec.name)));
        if k == 0 {
            return bad("no communities");
        }
        if spec.sizes.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return bad("community sizes must be positive");
        }
        if (spec.sizes.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return bad("community sizes must sum to 1");
        }
        if spec.probs.len() != k || spec.probs.iter().any(|r| r.len() != k) {
            return bad("connection matrix shape does not match the communities");
        }
        for a in 0..k {
            for b in 0..k {
                let p = spec.probs[a][b];
                if !(p >= 0.0 && p.is_finite()) {
                    return bad("connection rates must be finite and non-negative");
                }
                if p != spec.probs[b][a] {
                    return bad("connection matrix must be symmetric");
                }
            }
        }
        let mass: f64 = (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .map(|(a, b)| spec.sizes[a] * spec.sizes[b] * spec.probs[a][b])
            .sum();
        if mass <= 0.0 {
            return bad("connection matrix is zero");
        }
        let mut cuts = Vec::with_capacity(k);
        let mut acc = 0.0;
        for s in &spec.sizes[..k - 1] {
            acc += s;
            cuts.push(acc);
        }
        Ok(Graphon {
            name: spec.name.clone(),
            shape: Shape::Block {
                cuts,
                sizes: spec.sizes.clone(),
                probs: spec.probs.clone(),
            },
            tau: 1.0 / mass,
        })
    }

    /// Looks up a built-in graphon, e.g. `SmoothGraphon-2`, `smooth-2` or `block-1`.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase().replace('_', "-");
        let (head, idx) = lower
            .rsplit_once('-')
            .or_else(|| lower.char_indices().find(|(_, c)| c.is_ascii_digit()).map(|(i, _)| lower.split_at(i)))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown graphon {name}")))?;
        let k: u8 = idx
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown graphon {name}")))?;
        match head {
            "smoothgraphon" | "smooth" => Graphon::smooth(k),
            "blockmodel" | "block" | "sbm" => Graphon::block_model(k),
            _ => Err(Error::InvalidArgument(format!("unknown graphon {name}"))),
        }
    }

    /// The ten database graphons: five smooth forms and five block models.
    pub fn library() -> Vec<Graphon> {
        (1..=5)
            .map(|k| Graphon::smooth(k).expect("built-in"))
            .chain((1..=5).map(|k| Graphon::block_model(k).expect("built-in")))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn is_block_model(&self) -> bool {
        matches!(self.shape, Shape::Block { .. })
    }

    /// Community proportions and normalized connection matrix `τB`.
    pub fn blocks(&self) -> Option<(Vec<f64>, Vec<Vec<f64>>)> {
        match &self.shape {
            Shape::Block { sizes, probs, .. } => Some((
                sizes.clone(),
                probs.iter().map(|r| r.iter().map(|p| p * self.tau).collect()).collect(),
            )),
            Shape::Smooth(_) => None,
        }
    }

    /// Community of latent position `u` (block models only).
    pub fn community(&self, u: f64) -> Option<usize> {
        match &self.shape {
            Shape::Block { cuts, .. } => Some(cuts.iter().take_while(|&&c| u >= c).count()),
            Shape::Smooth(_) => None,
        }
    }

    /// Normalized `f(u, v)`.
    #[inline]
    pub fn f(&self, u: f64, v: f64) -> f64 {
        match &self.shape {
            Shape::Smooth(k) => self.tau * smooth_base(*k, u, v),
            Shape::Block { cuts, probs, .. } => {
                let a = cuts.iter().take_while(|&&c| u >= c).count();
                let b = cuts.iter().take_while(|&&c| v >= c).count();
                self.tau * probs[a][b]
            }
        }
    }

    /// `clamp(ρ·f(u, v), 0, 1)` and whether clamping was needed.
    #[inline]
    pub fn edge_prob(&self, rho: f64, u: f64, v: f64) -> (f64, bool) {
        let w = rho * self.f(u, v);
        if w > 1.0 {
            (1.0, true)
        } else if w < 0.0 {
            (0.0, true)
        } else {
            (w, false)
        }
    }

    /// `∫∫f`: exact for block models, quadrature for smooth forms.
    pub fn integral(&self) -> f64 {
        match &self.shape {
            Shape::Block { sizes, probs, .. } => {
                let k = sizes.len();
                let mut s = 0.0;
                for a in 0..k {
                    for b in 0..k {
                        s += sizes[a] * sizes[b] * probs[a][b];
                    }
                }
                self.tau * s
            }
            Shape::Smooth(6) => integrate_2d_composite(64, 8, |u, v| self.f(u, v)),
            Shape::Smooth(_) => integrate_2d(64, |u, v| self.f(u, v)),
        }
    }

    fn check_normalization(&self) -> Result<()> {
        let err = (self.integral() - 1.0).abs();
        if err > NORMALIZATION_TOL {
            return Err(Error::InvalidArgument(format!(
                "graphon {} integrates to 1 ± {err:e}",
                self.name
            )));
        }
        Ok(())
    }

    /// Largest `ρ` with no clamping, `1 / sup f`.
    pub fn clamp_free_rho(&self) -> f64 {
        let sup = match &self.shape {
            Shape::Block { probs, .. } => probs.iter().flatten().cloned().fold(0.0, f64::max) * self.tau,
            Shape::Smooth(_) => {
                let mut sup: f64 = 0.0;
                let n = 400;
                for a in 0..=n {
                    for b in 0..=n {
                        sup = sup.max(self.f(a as f64 / n as f64, b as f64 / n as f64));
                    }
                }
                sup
            }
        };
        1.0 / sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recomputed_normalizers() {
        // published three-significant-digit values
        let printed = [(2, 1.71), (3, 1.61), (4, 1.38), (5, 1.16), (6, 4.57)];
        for (k, tau) in printed {
            let g = Graphon::smooth(k).unwrap();
            assert!((g.tau() - tau).abs() < 0.006, "{}: {}", g.name(), g.tau());
        }
        assert_eq!(Graphon::smooth(2).unwrap().tau(), 12.0 / 7.0);
        let blocks = [(1, 3.33), (2, 5.71), (3, 2.35), (4, 2.81), (5, 2.14)];
        for (k, tau) in blocks {
            let g = Graphon::block_model(k).unwrap();
            assert!((g.tau() - tau).abs() < 0.006, "{}: {}", g.name(), g.tau());
        }
        assert!((Graphon::block_model(1).unwrap().tau() - 10.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn every_graphon_integrates_to_one() {
        let mut all = Graphon::library();
        all.push(Graphon::smooth(6).unwrap());
        for g in all {
            assert!((g.integral() - 1.0).abs() < NORMALIZATION_TOL, "{}", g.name());
            // independent midpoint rule; 840 cells align with every community cut
            let n = 840;
            let h = 1.0 / n as f64;
            let mut s = 0.0;
            for a in 0..n {
                for b in 0..n {
                    s += g.f((a as f64 + 0.5) * h, (b as f64 + 0.5) * h);
                }
            }
            assert!((s * h * h - 1.0).abs() < 1e-4, "{}: {}", g.name(), s * h * h);
        }
    }

    #[test]
    fn block_model_one_probability() {
        let g = Graphon::block_model(1).unwrap();
        let (p, clamped) = g.edge_prob(0.4, 0.1, 0.3);
        assert!((p - 0.8).abs() < 1e-12 && !clamped);
        assert!((g.edge_prob(0.4, 0.1, 0.7).0 - 0.8 / 3.0).abs() < 1e-12);
        assert_eq!(g.community(0.49), Some(0));
        assert_eq!(g.community(0.5), Some(1));
    }

    #[test]
    fn clamping_is_reported() {
        let g = Graphon::smooth(2).unwrap();
        assert_eq!(g.edge_prob(0.4, 1.0, 1.0), (1.0, true));
        assert!(!g.edge_prob(0.25, 1.0, 1.0).1);
        assert!((g.clamp_free_rho() - 7.0 / 24.0).abs() < 1e-12);
    }

    #[test]
    fn lookup_and_symmetry() {
        for name in ["SmoothGraphon-3", "smooth-3", "smooth3", "BlockModel-4", "block-4", "sbm_4"] {
            Graphon::by_name(name).unwrap();
        }
        assert!(Graphon::by_name("smooth-7").is_err());
        assert!(Graphon::by_name("wavelet-1").is_err());
        assert_eq!(Graphon::library().len(), 10);
        for g in Graphon::library() {
            for (u, v) in [(0.1, 0.8), (0.33, 0.66), (0.9, 0.2)] {
                assert_eq!(g.f(u, v), g.f(v, u));
                assert!(g.f(u, v) >= 0.0);
            }
        }
    }

    #[test]
    fn user_block_models() {
        let spec = BlockSpec {
            name: "mine".into(),
            sizes: vec![0.2, 0.3, 0.5],
            probs: vec![vec![1.0, 0.1, 0.1], vec![0.1, 0.5, 0.0], vec![0.1, 0.0, 0.3]],
        };
        let g = Graphon::from_block(&spec).unwrap();
        assert!((g.integral() - 1.0).abs() < 1e-14);
        assert_eq!(g.community(0.45), Some(1));
        let mut asym = spec.clone();
        asym.probs[0][1] = 0.2;
        assert!(Graphon::from_block(&asym).is_err());
        let mut unnormalized = spec;
        unnormalized.sizes[0] = 0.3;
        assert!(Graphon::from_block(&unnormalized).is_err());
    }
}
