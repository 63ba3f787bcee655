//! Drawing networks from a graphon.

use rand::Rng;

use super::graphon::Graphon;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct SampledNetwork {
    pub graph: Graph,
    /// Latent position of each node.
    pub latents: Vec<f64>,
    /// Node pairs whose edge probability had to be clamped into `[0, 1]`.
    pub clamp_count: u64,
}

/// Samples `m` nodes: uniform latents, then independent edges with
/// probability `clamp(ρ·f(Xᵢ, Xⱼ), 0, 1)`.
pub fn sample_network<R: Rng + ?Sized>(graphon: &Graphon, rho: f64, m: usize, rng: &mut R) -> Result<SampledNetwork> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::InvalidArgument(format!("sparsity {rho} outside (0, 1]")));
    }
    let mut graph = Graph::empty(m)?;
    let latents: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
    let mut clamp_count = 0;
    for i in 0..m {
        for j in (i + 1)..m {
            let (w, clamped) = graphon.edge_prob(rho, latents[i], latents[j]);
            clamp_count += clamped as u64;
            if rng.random::<f64>() < w {
                graph.insert(i, j);
            }
        }
    }
    Ok(SampledNetwork {
        graph,
        latents,
        clamp_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::quadrature::integrate_2d;
    use crate::rng;

    #[test]
    fn density_matches_the_graphon() {
        for (name, rho) in [("smooth-2", 0.4), ("block-3", 0.3), ("smooth-5", 0.2)] {
            let g = Graphon::by_name(name).unwrap();
            let target = integrate_2d(64, |u, v| g.edge_prob(rho, u, v).0);
            let mut rng = rng::stream(11, 0);
            let d: Vec<f64> = (0..200)
                .map(|_| sample_network(&g, rho, 60, &mut rng).unwrap().graph.density())
                .collect();
            let mean = d.iter().sum::<f64>() / d.len() as f64;
            let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (d.len() - 1) as f64;
            let se = (var / d.len() as f64).sqrt();
            assert!((mean - target).abs() < 3.0 * se, "{name}: {mean} vs {target} (se {se})");
        }
    }

    #[test]
    fn fixed_pair_edge_frequency() {
        // two-node networks isolate a single pair
        let g = Graphon::block_model(4).unwrap();
        let rho = 0.4;
        let mut rng = rng::stream(5, 1);
        let (mut hits, mut want, draws) = (0u32, 0.0, 10_000);
        for _ in 0..draws {
            let s = sample_network(&g, rho, 2, &mut rng).unwrap();
            hits += s.graph.has_edge(0, 1) as u32;
            want += g.edge_prob(rho, s.latents[0], s.latents[1]).0;
        }
        let p = want / draws as f64;
        let sd = (p * (1.0 - p) * draws as f64).sqrt();
        assert!((hits as f64 - want).abs() < 3.0 * sd);
    }

    #[test]
    fn clamp_counting_and_validation() {
        let g = Graphon::smooth(2).unwrap();
        let mut rng = rng::stream(3, 0);
        assert_eq!(sample_network(&g, 0.25, 80, &mut rng).unwrap().clamp_count, 0);
        assert!(sample_network(&g, 0.6, 80, &mut rng).unwrap().clamp_count > 0);
        assert!(sample_network(&g, 0.0, 10, &mut rng).is_err());
        assert!(sample_network(&g, 0.2, 1, &mut rng).is_err());
        let s = sample_network(&g, 0.2, 30, &mut rng).unwrap();
        assert!(s.latents.iter().all(|x| (0.0..=1.0).contains(x)));
    }
}
