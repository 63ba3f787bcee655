//! Declarative experiment configuration, read from TOML.
//!
//! Every field has a default, so an empty file runs the reference setup.
//! A coverage config might read:
//!
//! ```toml
//! seed = 7
//! graphon_a = "SmoothGraphon-2"
//! graphon_b = "SmoothGraphon-4"
//! sizes = [20, 160, [40, 80]]
//! motifs = ["triangle", "vshape"]
//! reps = 5000
//! ```

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::bootstrap::{BootstrapMode, DEFAULT_N_BOOT};
use super::graphon::{BlockSpec, Graphon};
use crate::edgeworth::DEFAULT_C_DELTA;
use crate::error::{Error, Result};
use crate::motif::Motif;

/// Network sizes `(m, n)`; a bare integer means `m = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SizeSpec {
    Equal(usize),
    Pair([usize; 2]),
}

impl SizeSpec {
    pub fn pair(self) -> (usize, usize) {
        match self {
            SizeSpec::Equal(m) => (m, m),
            SizeSpec::Pair([m, n]) => (m, n),
        }
    }
}

/// Looks a graphon up among the built-ins, then the config's own block models.
pub fn resolve_graphon(name: &str, user: &[BlockSpec]) -> Result<Graphon> {
    if let Some(spec) = user.iter().find(|b| b.name == name) {
        return Graphon::from_block(spec);
    }
    Graphon::by_name(name).map_err(|_| Error::Config(format!("unknown graphon {name}")))
}

fn parse_motifs(names: &[String]) -> Result<Vec<Motif>> {
    names
        .iter()
        .map(|n| Motif::parse(n).map_err(|e| Error::Config(e.to_string())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BootstrapSettings {
    pub modes: Vec<BootstrapMode>,
    pub n_boot: usize,
    /// Replicates on which the bootstrap is run; it is far costlier than
    /// the analytic approximation.
    pub eval_reps: usize,
}

impl Default for BootstrapSettings {
    fn default() -> Self {
        BootstrapSettings {
            modes: vec![BootstrapMode::Subsample, BootstrapMode::Resample],
            n_boot: DEFAULT_N_BOOT,
            eval_reps: 20,
        }
    }
}

/// Distribution-approximation experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CdfConfig {
    pub seed: u64,
    pub graphon_a: String,
    pub graphon_b: String,
    pub rho_a: f64,
    pub rho_b: f64,
    pub sizes: Vec<SizeSpec>,
    pub motif: String,
    /// Monte Carlo replicates approximating the true distribution.
    pub reps: usize,
    /// Replicates on which the empirical expansion is evaluated and compared.
    pub eval_reps: usize,
    pub c_delta: f64,
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub grid_points: usize,
    pub bootstrap: Option<BootstrapSettings>,
    pub block_models: Vec<BlockSpec>,
}

impl Default for CdfConfig {
    fn default() -> Self {
        CdfConfig {
            seed: 1,
            graphon_a: "SmoothGraphon-2".into(),
            graphon_b: "SmoothGraphon-4".into(),
            rho_a: 0.25,
            rho_b: 0.25,
            sizes: vec![SizeSpec::Equal(40), SizeSpec::Equal(80), SizeSpec::Equal(160)],
            motif: "triangle".into(),
            reps: 10_000,
            eval_reps: 100,
            c_delta: DEFAULT_C_DELTA,
            grid_lo: -2.0,
            grid_hi: 2.0,
            grid_points: 401,
            bootstrap: None,
            block_models: Vec::new(),
        }
    }
}

/// Confidence-interval coverage experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverageConfig {
    pub seed: u64,
    pub graphon_a: String,
    pub graphon_b: String,
    pub rho_a: f64,
    pub rho_b: f64,
    pub sizes: Vec<SizeSpec>,
    pub motifs: Vec<String>,
    pub reps: usize,
    pub level: f64,
    pub c_delta: f64,
    pub bootstrap: Option<BootstrapSettings>,
    pub block_models: Vec<BlockSpec>,
}

impl Default for CoverageConfig {
    fn default() -> Self {
        CoverageConfig {
            seed: 1,
            graphon_a: "SmoothGraphon-2".into(),
            graphon_b: "SmoothGraphon-4".into(),
            rho_a: 0.25,
            rho_b: 0.25,
            sizes: [10, 20, 40, 80, 160].map(SizeSpec::Equal).to_vec(),
            motifs: vec!["triangle".into(), "vshape".into()],
            reps: 5000,
            level: 0.90,
            c_delta: DEFAULT_C_DELTA,
            bootstrap: None,
            block_models: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeywordSpec {
    pub name: String,
    pub graphon: String,
}

/// Hashing and querying benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QueryBenchConfig {
    pub seed: u64,
    pub rho: f64,
    pub n: usize,
    pub graphons: Vec<String>,
    pub entries_per_graphon: usize,
    pub keywords: Vec<KeywordSpec>,
    /// Fresh keyword networks drawn per keyword; the database is reused.
    pub keyword_reps: usize,
    pub motif: String,
    pub level: f64,
    pub c_delta: f64,
    /// Matched-null pairs for the p-value uniformity check; 0 disables it.
    pub null_pairs: usize,
    pub null_graphon: String,
    /// Bin edges of the `log₁₀ p` histograms.
    pub histogram_edges: Vec<f64>,
    pub block_models: Vec<BlockSpec>,
}

impl Default for QueryBenchConfig {
    fn default() -> Self {
        QueryBenchConfig {
            seed: 1,
            rho: 0.4,
            n: 400,
            graphons: Graphon::library().iter().map(|g| g.name().to_string()).collect(),
            entries_per_graphon: 20,
            keywords: vec![
                KeywordSpec {
                    name: "keyword-1".into(),
                    graphon: "BlockModel-1".into(),
                },
                KeywordSpec {
                    name: "keyword-2".into(),
                    graphon: "SmoothGraphon-6".into(),
                },
            ],
            keyword_reps: 1,
            motif: "triangle".into(),
            level: 0.05,
            c_delta: DEFAULT_C_DELTA,
            null_pairs: 2000,
            null_graphon: "SmoothGraphon-1".into(),
            histogram_edges: vec![-16.0, -8.0, -6.0, -4.0, -3.0, -2.0, -1.30103, -1.0, -0.5, 0.0],
            block_models: Vec::new(),
        }
    }
}

/// Stand-alone bootstrap run on one sampled pair of networks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BootstrapConfig {
    pub seed: u64,
    pub graphon_a: String,
    pub graphon_b: String,
    pub rho_a: f64,
    pub rho_b: f64,
    pub m: usize,
    pub n: usize,
    pub motif: String,
    pub modes: Vec<BootstrapMode>,
    pub n_boot: usize,
    /// Replicate sizes; defaults follow the mode.
    pub sizes: Option<[usize; 2]>,
    pub c_delta: f64,
    pub block_models: Vec<BlockSpec>,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            seed: 1,
            graphon_a: "SmoothGraphon-2".into(),
            graphon_b: "SmoothGraphon-4".into(),
            rho_a: 0.25,
            rho_b: 0.25,
            m: 80,
            n: 80,
            motif: "triangle".into(),
            modes: vec![BootstrapMode::Subsample, BootstrapMode::Resample],
            n_boot: DEFAULT_N_BOOT,
            sizes: None,
            c_delta: DEFAULT_C_DELTA,
            block_models: Vec::new(),
        }
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Config(format!("{name} = {x} must lie in (0, 1)")));
    }
    Ok(())
}

fn check_rho(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Config(format!("{name} = {x} must lie in (0, 1]")));
    }
    Ok(())
}

fn check_sizes(sizes: &[SizeSpec]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::Config("no network sizes given".into()));
    }
    for s in sizes {
        let (m, n) = s.pair();
        if m < 5 || n < 5 {
            return Err(Error::Config(format!("sizes ({m}, {n}) too small; need at least 5 nodes")));
        }
    }
    Ok(())
}

impl CdfConfig {
    pub fn validate(&self) -> Result<()> {
        check_rho("rho_a", self.rho_a)?;
        check_rho("rho_b", self.rho_b)?;
        check_sizes(&self.sizes)?;
        if self.reps < 1000 {
            return Err(Error::Config(format!("reps = {} below the minimum of 1000", self.reps)));
        }
        if self.eval_reps == 0 || self.eval_reps > self.reps {
            return Err(Error::Config("eval_reps must lie in 1..=reps".into()));
        }
        if self.grid_points < 2 || !(self.grid_lo < self.grid_hi) {
            return Err(Error::Config("evaluation grid is empty".into()));
        }
        parse_motifs(std::slice::from_ref(&self.motif))?;
        resolve_graphon(&self.graphon_a, &self.block_models)?;
        resolve_graphon(&self.graphon_b, &self.block_models)?;
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let k = self.grid_points - 1;
        (0..=k)
            .map(|i| self.grid_lo + (self.grid_hi - self.grid_lo) * i as f64 / k as f64)
            .collect()
    }
}

impl CoverageConfig {
    pub fn validate(&self) -> Result<()> {
        check_rho("rho_a", self.rho_a)?;
        check_rho("rho_b", self.rho_b)?;
        check_unit("level", self.level)?;
        check_sizes(&self.sizes)?;
        if self.reps < 1000 {
            return Err(Error::Config(format!("reps = {} below the minimum of 1000", self.reps)));
        }
        self.motif_list()?;
        resolve_graphon(&self.graphon_a, &self.block_models)?;
        resolve_graphon(&self.graphon_b, &self.block_models)?;
        Ok(())
    }

    pub fn motif_list(&self) -> Result<Vec<Motif>> {
        if self.motifs.is_empty() {
            return Err(Error::Config("no motifs given".into()));
        }
        parse_motifs(&self.motifs)
    }
}

impl QueryBenchConfig {
    pub fn validate(&self) -> Result<()> {
        check_rho("rho", self.rho)?;
        check_unit("level", self.level)?;
        if self.n < 5 || self.entries_per_graphon == 0 || self.keyword_reps == 0 {
            return Err(Error::Config("n, entries_per_graphon and keyword_reps must be positive".into()));
        }
        if self.graphons.is_empty() {
            return Err(Error::Config("database has no graphons".into()));
        }
        for g in &self.graphons {
            resolve_graphon(g, &self.block_models)?;
        }
        for k in &self.keywords {
            resolve_graphon(&k.graphon, &self.block_models)?;
        }
        if self.null_pairs > 0 {
            resolve_graphon(&self.null_graphon, &self.block_models)?;
        }
        if self.histogram_edges.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Config("histogram edges must increase".into()));
        }
        parse_motifs(std::slice::from_ref(&self.motif))?;
        Ok(())
    }
}

impl BootstrapConfig {
    pub fn validate(&self) -> Result<()> {
        check_rho("rho_a", self.rho_a)?;
        check_rho("rho_b", self.rho_b)?;
        check_sizes(&[SizeSpec::Pair([self.m, self.n])])?;
        if self.n_boot == 0 || self.modes.is_empty() {
            return Err(Error::Config("n_boot and modes must be non-empty".into()));
        }
        parse_motifs(std::slice::from_ref(&self.motif))?;
        resolve_graphon(&self.graphon_a, &self.block_models)?;
        resolve_graphon(&self.graphon_b, &self.block_models)?;
        Ok(())
    }
}

/// Parses a TOML config.
pub fn parse_config<T: DeserializeOwned>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
}

/// Reads a TOML config file.
pub fn load_config<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c: CoverageConfig = parse_config("").unwrap();
        assert_eq!(c, CoverageConfig::default());
        c.validate().unwrap();
        let q: QueryBenchConfig = parse_config("").unwrap();
        assert_eq!(q.graphons.len(), 10);
        q.validate().unwrap();
        CdfConfig::default().validate().unwrap();
        BootstrapConfig::default().validate().unwrap();
    }

    #[test]
    fn mixed_sizes_and_user_blocks() {
        let c: CoverageConfig = parse_config(
            r#"
            sizes = [20, [40, 80]]
            graphon_a = "mine"
            [[block_models]]
            name = "mine"
            sizes = [0.5, 0.5]
            probs = [[1.0, 0.2], [0.2, 0.5]]
            "#,
        )
        .unwrap();
        assert_eq!(c.sizes[1].pair(), (40, 80));
        c.validate().unwrap();
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(parse_config::<CoverageConfig>("repz = 3").is_err());
        let c: CoverageConfig = parse_config("level = 1.5").unwrap();
        assert!(c.validate().is_err());
        let c: CoverageConfig = parse_config("graphon_a = \"nope\"").unwrap();
        assert!(c.validate().is_err());
        let c: CdfConfig = parse_config("reps = 10").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn grid_endpoints() {
        let g = CdfConfig::default().grid();
        assert_eq!((g.len(), g[0], g[400]), (401, -2.0, 2.0));
        assert!((g[200]).abs() < 1e-15);
    }
}
