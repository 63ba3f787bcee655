//! File access for the command line, with an optional access log on stderr.

use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};

use netmoment::Error;

static TRACE: AtomicBool = AtomicBool::new(false);

pub fn enable_trace() {
    TRACE.store(true, Ordering::Relaxed);
}

fn log(op: &str, role: &str, path: &Path, bytes: usize) {
    if TRACE.load(Ordering::Relaxed) {
        let line = serde_json::json!({ "io": op, "role": role, "path": path.display().to_string(), "bytes": bytes });
        eprintln!("{line}");
    }
}

/// Reads a whole file. `role` names what the file is for in the log.
pub fn read(path: &Path, role: &str) -> Result<String, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    log("read", role, path, text.len());
    Ok(text)
}

/// Records a write performed elsewhere.
pub fn note_write(path: &Path, role: &str) {
    let bytes = std::fs::metadata(path).map(|m| m.len() as usize).unwrap_or(0);
    log("write", role, path, bytes);
}
