//! Two-sample inference on sparsity-scaled network motif moments, with
//! Edgeworth-corrected p-values and Cornish–Fisher intervals.
//!
//! The pipeline runs graph → motif counts → projections → per-network
//! summary → combined coefficients → test or interval. Summaries are small
//! and self-contained, so networks can be hashed once and queried many times
//! (see [`hashdb`]).

pub mod edgeworth;
pub mod error;
pub mod graph;
pub mod hashdb;
pub mod inference;
pub mod motif;
pub mod normal;
pub mod projections;
pub mod rng;
pub mod sim;

pub use edgeworth::{combine, summarize, EdgeworthCoeffs, NetworkSummary, DEFAULT_C_DELTA};
pub use error::{Error, Result};
pub use graph::{load_edge_list, Graph, Indexing, LoadReport};
pub use hashdb::{db_append, db_load, hash_network, query, HashDb, HashRecord, QueryHit, QueryOutcome, QueryStatus};
pub use inference::{ConfidenceInterval, TestResult, DEFAULT_CI_LEVEL, DEFAULT_TEST_LEVEL};
pub use motif::{Motif, MotifDescriptor};
pub use projections::{project, ProjectionSet};
