use std::path::PathBuf;

/// Errors produced by the inference pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid motif: {0}")]
    InvalidMotif(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate sparsity: empirical density is {0}")]
    DegenerateSparsity(f64),
    #[error("degenerate variance: {0}")]
    DegenerateVariance(String),
    #[error("sparsity too extreme for motif {motif}: density {rho}")]
    ExtremeSparsity { motif: String, rho: f64 },
    #[error("motif mismatch: {0} vs {1}")]
    MotifMismatch(String, String),
    #[error("pathological expansion coefficients: {0}")]
    Pathological(String),
    #[error("database line {line}: {message}")]
    Database { line: usize, message: String },
    #[error("unsupported schema version {0}")]
    UnsupportedSchema(u32),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::InvalidMotif(_) => "invalid_motif",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::DegenerateSparsity(_) => "degenerate_sparsity",
            Error::DegenerateVariance(_) => "degenerate_variance",
            Error::ExtremeSparsity { .. } => "extreme_sparsity",
            Error::MotifMismatch(..) => "motif_mismatch",
            Error::Pathological(_) => "pathological",
            Error::Database { .. } => "database",
            Error::UnsupportedSchema(_) => "unsupported_schema",
            Error::Config(_) => "config",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
