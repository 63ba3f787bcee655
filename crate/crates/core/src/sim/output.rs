//! CSV tables and JSON metadata sidecars for experiment results.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

/// Provenance written next to every results table.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub experiment: String,
    pub seed: u64,
    pub version: String,
    pub clamp_count: u64,
    pub config: serde_json::Value,
}

impl Metadata {
    pub fn new(experiment: &str, seed: u64, clamp_count: u64, config: &impl Serialize) -> Self {
        Metadata {
            experiment: experiment.to_string(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            clamp_count,
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
        }
    }
}

/// Rows as CSV with a header line.
pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))
}

/// Writes `<stem>.csv` and `<stem>.meta.json`, returning both paths.
pub fn write_table<T: Serialize>(stem: impl AsRef<Path>, rows: &[T], meta: &Metadata) -> Result<(PathBuf, PathBuf)> {
    let stem = stem.as_ref();
    let csv_path = stem.with_extension("csv");
    let meta_path = stem.with_extension("meta.json");
    let write = |path: &Path, text: &str| -> Result<()> {
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
    };
    write(&csv_path, &csv_string(rows)?)?;
    let json = serde_json::to_string_pretty(meta).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    write(&meta_path, &(json + "\n"))?;
    Ok((csv_path, meta_path))
}
