//! First- and second-order Hoeffding projections estimated from a single
//! network, for both the motif moment and the edge density.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::motif::{binomial, node_counts, pair_count_unchecked, Motif};

/// Per-node projections plus their variance and covariance scalars.
///
/// Second-order projections are not stored; [`g2`] and [`grho2`] evaluate
/// them for one pair at a time.
#[derive(Debug, Clone)]
pub struct ProjectionSet {
    pub motif: Motif,
    pub m: usize,
    pub u_hat: f64,
    pub rho_hat: f64,
    /// `ĝ_{A;1}(X_i)`: node moment minus the global moment.
    pub g1: Vec<f64>,
    /// `ĝ_{ρ;1}(X_i)`: normalized degree minus the density.
    pub grho1: Vec<f64>,
    pub xi_a1_sq: f64,
    pub xi_rho1_sq: f64,
    pub xi_cross: f64,
    pair_norm: f64,
}

fn mean(values: impl Iterator<Item = f64>, n: usize) -> f64 {
    values.sum::<f64>() / n as f64
}

/// Estimates the first-order projections of `g` for `motif`.
///
/// Fails on an edgeless graph, since every downstream term divides by the
/// density.
pub fn project(g: &Graph, motif: &Motif) -> Result<ProjectionSet> {
    let m = g.node_count();
    let r = motif.r();
    if m < r {
        return Err(Error::InvalidArgument(format!(
            "graph has {m} nodes, motif {} needs at least {r}",
            motif.name()
        )));
    }
    let rho_hat = g.density();
    if rho_hat == 0.0 {
        return Err(Error::DegenerateSparsity(rho_hat));
    }
    let counts = node_counts(g, motif)?;
    // every motif-bearing subset is counted once per member
    let total: u64 = counts.iter().sum::<u64>() / r as u64;
    let u_hat = total as f64 / binomial(m, r) as f64;
    let node_norm = binomial(m - 1, r - 1) as f64;
    let g1: Vec<f64> = counts.iter().map(|&c| c as f64 / node_norm - u_hat).collect();
    let grho1: Vec<f64> = (0..m)
        .map(|i| g.degree(i) as f64 / (m - 1) as f64 - rho_hat)
        .collect();
    let xi_a1_sq = mean(g1.iter().map(|x| x * x), m);
    let xi_rho1_sq = mean(grho1.iter().map(|x| x * x), m);
    let xi_cross = mean(g1.iter().zip(&grho1).map(|(a, b)| a * b), m);
    Ok(ProjectionSet {
        motif: motif.clone(),
        m,
        u_hat,
        rho_hat,
        g1,
        grho1,
        xi_a1_sq,
        xi_rho1_sq,
        xi_cross,
        pair_norm: binomial(m - 2, r - 2) as f64,
    })
}

impl ProjectionSet {
    /// `(ĝ_{A;2}, ĝ_{ρ;2})` for a pair, without range checks.
    #[inline]
    pub(crate) fn pair_terms(&self, g: &Graph, i: usize, j: usize) -> (f64, f64) {
        let pm = pair_count_unchecked(g, &self.motif, i, j) as f64 / self.pair_norm;
        let a = g.has_edge(i, j) as u8 as f64;
        let (i, j) = (i.min(j), i.max(j));
        (
            pm - self.g1[i] - self.g1[j] - self.u_hat,
            a - self.grho1[i] - self.grho1[j] - self.rho_hat,
        )
    }

    fn check_pair(&self, g: &Graph, i: usize, j: usize) -> Result<()> {
        if g.node_count() != self.m {
            return Err(Error::InvalidArgument(
                "graph does not match the projection set".into(),
            ));
        }
        if i >= self.m || j >= self.m {
            return Err(Error::InvalidArgument(format!(
                "pair ({i}, {j}) out of range for {} nodes",
                self.m
            )));
        }
        if i == j {
            return Err(Error::InvalidArgument(
                "second-order projections need two distinct nodes".into(),
            ));
        }
        Ok(())
    }
}

/// Second-order motif projection `ĝ_{A;2}(X_i, X_j)`.
pub fn g2(g: &Graph, ps: &ProjectionSet, i: usize, j: usize) -> Result<f64> {
    ps.check_pair(g, i, j)?;
    Ok(ps.pair_terms(g, i, j).0)
}

/// Second-order density projection `ĝ_{ρ;2}(X_i, X_j)`.
pub fn grho2(g: &Graph, ps: &ProjectionSet, i: usize, j: usize) -> Result<f64> {
    ps.check_pair(g, i, j)?;
    Ok(ps.pair_terms(g, i, j).1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-14
    }

    #[test]
    fn complete_triangle_has_flat_projections() {
        let ps = project(&triangle(), &Motif::triangle()).unwrap();
        assert_eq!(ps.g1, vec![0.0; 3]);
        assert_eq!(ps.xi_a1_sq, 0.0);
        assert_eq!(g2(&triangle(), &ps, 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn path_density_projections() {
        for motif in [Motif::edge(), Motif::vshape(), Motif::triangle()] {
            let ps = project(&path3(), &motif).unwrap();
            let want = [-1.0 / 6.0, 1.0 / 3.0, -1.0 / 6.0];
            for (got, want) in ps.grho1.iter().zip(want) {
                assert!(close(*got, want));
            }
            assert!(close(ps.xi_rho1_sq, 1.0 / 18.0));
        }
    }

    #[test]
    fn star_vshape_projections() {
        let g = star4();
        let ps = project(&g, &Motif::vshape()).unwrap();
        let want = [0.25, -1.0 / 12.0, -1.0 / 12.0, -1.0 / 12.0];
        for (got, want) in ps.g1.iter().zip(want) {
            assert!(close(*got, want), "{got} vs {want}");
        }
        assert!(close(g2(&g, &ps, 1, 2).unwrap(), -1.0 / 12.0));
    }

    #[test]
    fn path_second_order() {
        let g = path3();
        let ps = project(&g, &Motif::vshape()).unwrap();
        assert!(close(g2(&g, &ps, 0, 2).unwrap(), 0.0));
        assert!(close(grho2(&g, &ps, 0, 1).unwrap(), 1.0 / 6.0));
        assert!(close(grho2(&g, &ps, 0, 2).unwrap(), -1.0 / 3.0));
        assert!(g2(&g, &ps, 1, 1).is_err());
        assert!(grho2(&g, &ps, 0, 0).is_err());
    }

    #[test]
    fn edgeless_graph_is_degenerate() {
        let g = Graph::empty(5).unwrap();
        assert!(matches!(project(&g, &Motif::edge()), Err(Error::DegenerateSparsity(_))));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (4usize..16).prop_flat_map(|m| {
            proptest::collection::vec(proptest::bool::weighted(0.4), m * (m - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..m {
                    for j in (i + 1)..m {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(m, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn projection_invariants(g in arb_graph(), perm_seed in any::<u64>()) {
            prop_assume!(g.edge_count() > 0);
            let m = g.node_count();
            for motif in Motif::builtins() {
                let ps = project(&g, &motif).unwrap();
                prop_assert!(ps.g1.iter().sum::<f64>().abs() <= 1e-10 * m as f64);
                prop_assert!(ps.grho1.iter().sum::<f64>().abs() <= 1e-10 * m as f64);
                prop_assert!(ps.xi_a1_sq >= 0.0 && ps.xi_rho1_sq >= 0.0);
                prop_assert!(ps.xi_cross.abs() <= (ps.xi_a1_sq * ps.xi_rho1_sq).sqrt() + 1e-12);
                let mut pair_sum = 0.0;
                for i in 0..m {
                    for j in (i + 1)..m {
                        let a = g2(&g, &ps, i, j).unwrap();
                        prop_assert_eq!(a, g2(&g, &ps, j, i).unwrap());
                        prop_assert_eq!(grho2(&g, &ps, i, j).unwrap(), grho2(&g, &ps, j, i).unwrap());
                        pair_sum += a;
                    }
                }
                prop_assert!(pair_sum.abs() <= 1e-8 * (m * m) as f64);
                if motif.s() == 1 {
                    prop_assert_eq!(&ps.g1, &ps.grho1);
                }
            }
            // equivariance under relabelling
            let mut perm: Vec<usize> = (0..m).collect();
            let mut state = perm_seed;
            for k in (1..m).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(k, (state >> 33) as usize % (k + 1));
            }
            let h = g.permute(&perm).unwrap();
            let motif = Motif::triangle();
            let a = project(&g, &motif).unwrap();
            let b = project(&h, &motif).unwrap();
            for i in 0..m {
                prop_assert_eq!(a.g1[i], b.g1[perm[i]]);
                prop_assert_eq!(a.grho1[i], b.grho1[perm[i]]);
            }
        }
    }
}
