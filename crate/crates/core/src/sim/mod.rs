//! Graphon library, network sampling, population moments and the
//! simulation harnesses built on them.

pub mod bootstrap;
pub mod config;
pub mod experiments;
pub mod graphon;
pub mod output;
pub mod population;
pub mod quadrature;
pub mod sampling;

pub use bootstrap::{bootstrap_distribution, BootstrapMode, BootstrapOutput};
pub use graphon::{BlockSpec, Graphon};
pub use population::{population_scaled_moment, true_scaled_moment, PopulationMoment};
pub use sampling::{sample_network, SampledNetwork};
pub use config::{load_config, BootstrapConfig, CdfConfig, CoverageConfig, QueryBenchConfig, SizeSpec};
pub use experiments::{run_bootstrap, run_cdf, run_coverage, run_query_bench};
