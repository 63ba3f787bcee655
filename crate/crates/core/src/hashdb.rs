//! Offline network hashing and fast querying.
//!
//! A network is hashed once into a [`HashRecord`] of per-motif
//! [`NetworkSummary`] values. Queries compare the keyword's record against
//! every stored record using only those summaries; no adjacency data is
//! reachable from the query path.
//!
//! Records persist as NDJSON, one object per line:
//!
//! ```text
//! {"schema_version":1,"network_id":"g1","created_at":"...","n":400,
//!  "summaries":[{"motif":{"name":"triangle","r":3,"s":3},"rho_hat":...,...}]}
//! ```
//!
//! Floating-point fields are written with 17 significant digits.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::edgeworth::{summarize, NetworkSummary};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inference;
use crate::motif::{Motif, MotifDescriptor};
use crate::rng;

pub const SCHEMA_VERSION: u32 = 1;

/// One hashed network: a summary per motif.
#[derive(Debug, Clone, PartialEq)]
pub struct HashRecord {
    pub schema_version: u32,
    pub network_id: String,
    pub created_at: String,
    pub n: usize,
    pub summaries: Vec<NetworkSummary>,
}

impl HashRecord {
    pub fn summary(&self, motif: &str) -> Option<&NetworkSummary> {
        self.summaries.iter().find(|s| s.motif.name == motif)
    }

    pub fn motif_names(&self) -> impl Iterator<Item = &str> {
        self.summaries.iter().map(|s| s.motif.name.as_str())
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::UnsupportedSchema(self.schema_version));
        }
        let mut names = HashSet::new();
        for s in &self.summaries {
            if !names.insert(s.motif.name.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "record {}: motif {} appears twice",
                    self.network_id, s.motif.name
                )));
            }
            if s.network_id != self.network_id || s.n != self.n {
                return Err(Error::InvalidArgument(format!(
                    "record {}: summary identity does not match the record",
                    self.network_id
                )));
            }
            s.validate()?;
        }
        Ok(())
    }

    pub fn to_json_line(&self) -> Result<String> {
        serde_json::to_string(&RecordWire::from(self))
            .map_err(|e| Error::InvalidArgument(format!("cannot encode record {}: {e}", self.network_id)))
    }

    pub fn from_json_line(line: &str) -> std::result::Result<Self, String> {
        let wire: RecordWire = serde_json::from_str(line).map_err(|e| e.to_string())?;
        Ok(wire.into_record())
    }
}

fn f17<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return Err(serde::ser::Error::custom("non-finite statistic"));
    }
    let raw = RawValue::from_string(format!("{x:.16e}")).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

#[derive(Serialize, Deserialize)]
struct SummaryWire {
    motif: MotifDescriptor,
    #[serde(serialize_with = "f17")]
    rho_hat: f64,
    #[serde(serialize_with = "f17")]
    u_hat: f64,
    #[serde(serialize_with = "f17")]
    alpha0_hat: f64,
    #[serde(serialize_with = "f17")]
    xi_g1_sq: f64,
    #[serde(serialize_with = "f17")]
    xi_alpha1_sq: f64,
    #[serde(serialize_with = "f17")]
    e_a1_cubed: f64,
    #[serde(serialize_with = "f17")]
    e_a1_a3: f64,
    #[serde(serialize_with = "f17")]
    e_a4_a1: f64,
    #[serde(serialize_with = "f17")]
    e_a1a1a2: f64,
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    schema_version: u32,
    network_id: String,
    created_at: String,
    n: usize,
    summaries: Vec<SummaryWire>,
}

impl From<&HashRecord> for RecordWire {
    fn from(r: &HashRecord) -> Self {
        RecordWire {
            schema_version: r.schema_version,
            network_id: r.network_id.clone(),
            created_at: r.created_at.clone(),
            n: r.n,
            summaries: r
                .summaries
                .iter()
                .map(|s| SummaryWire {
                    motif: s.motif.clone(),
                    rho_hat: s.rho_hat,
                    u_hat: s.u_hat,
                    alpha0_hat: s.alpha0_hat,
                    xi_g1_sq: s.xi_g1_sq,
                    xi_alpha1_sq: s.xi_alpha1_sq,
                    e_a1_cubed: s.e_a1_cubed,
                    e_a1_a3: s.e_a1_a3,
                    e_a4_a1: s.e_a4_a1,
                    e_a1a1a2: s.e_a1a1a2,
                })
                .collect(),
        }
    }
}

impl RecordWire {
    fn into_record(self) -> HashRecord {
        let summaries = self
            .summaries
            .into_iter()
            .map(|w| NetworkSummary {
                network_id: self.network_id.clone(),
                n: self.n,
                motif: w.motif,
                rho_hat: w.rho_hat,
                u_hat: w.u_hat,
                alpha0_hat: w.alpha0_hat,
                xi_g1_sq: w.xi_g1_sq,
                xi_alpha1_sq: w.xi_alpha1_sq,
                e_a1_cubed: w.e_a1_cubed,
                e_a1_a3: w.e_a1_a3,
                e_a4_a1: w.e_a4_a1,
                e_a1a1a2: w.e_a1a1a2,
            })
            .collect();
        HashRecord {
            schema_version: self.schema_version,
            network_id: self.network_id,
            created_at: self.created_at,
            n: self.n,
            summaries,
        }
    }
}

/// Hashes `g` for each motif, stamping the record with `created_at`.
///
/// Motifs whose summary cannot be computed are left out with a warning;
/// the call fails only if none succeed.
pub fn hash_network_at(g: &Graph, motifs: &[Motif], id: &str, created_at: &str) -> Result<HashRecord> {
    let mut summaries = Vec::new();
    let mut failures = Vec::new();
    let mut seen = HashSet::new();
    for motif in motifs {
        if !seen.insert(motif.name()) {
            continue;
        }
        match summarize(g, motif, id) {
            Ok(s) => summaries.push(s),
            Err(e) => {
                log::warn!("{id}: motif {} omitted: {e}", motif.name());
                failures.push(format!("{}: {e}", motif.name()));
            }
        }
    }
    if summaries.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{id}: no motif could be hashed ({})",
            failures.join("; ")
        )));
    }
    Ok(HashRecord {
        schema_version: SCHEMA_VERSION,
        network_id: id.to_string(),
        created_at: created_at.to_string(),
        n: g.node_count(),
        summaries,
    })
}

/// Hashes `g`, stamped with the current UTC time.
pub fn hash_network(g: &Graph, motifs: &[Motif], id: &str) -> Result<HashRecord> {
    let now = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    hash_network_at(g, motifs, id, &now)
}

/// In-memory database keyed by network id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HashDb {
    records: BTreeMap<String, HashRecord>,
}

impl HashDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a record, returning the one it replaces.
    pub fn insert(&mut self, record: HashRecord) -> Option<HashRecord> {
        self.records.insert(record.network_id.clone(), record)
    }

    pub fn get(&self, id: &str) -> Option<&HashRecord> {
        self.records.get(id)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records in network-id order.
    pub fn records(&self) -> impl Iterator<Item = &HashRecord> {
        self.records.values()
    }
}

impl FromIterator<HashRecord> for HashDb {
    fn from_iter<I: IntoIterator<Item = HashRecord>>(iter: I) -> Self {
        let mut db = HashDb::new();
        for r in iter {
            db.insert(r);
        }
        db
    }
}

/// Appends one record as a line of NDJSON.
pub fn db_append(path: impl AsRef<Path>, record: &HashRecord) -> Result<()> {
    let path = path.as_ref();
    record.validate()?;
    let mut line = record.to_json_line()?;
    line.push('\n');
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    file.write_all(line.as_bytes()).map_err(|e| Error::io(path, e))
}

/// Parses NDJSON database text. Any malformed line fails the whole load.
pub fn parse_db(text: &str) -> Result<HashDb> {
    let mut db = HashDb::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record = HashRecord::from_json_line(line).map_err(|message| Error::Database { line: lineno, message })?;
        match record.validate() {
            Ok(()) => {}
            Err(Error::UnsupportedSchema(v)) => return Err(Error::UnsupportedSchema(v)),
            Err(e) => {
                return Err(Error::Database {
                    line: lineno,
                    message: e.to_string(),
                })
            }
        }
        if let Some(old) = db.insert(record) {
            log::warn!(
                "line {lineno}: duplicate network id {}; keeping the later record",
                old.network_id
            );
        }
    }
    Ok(db)
}

/// Loads a database file.
pub fn db_load(path: impl AsRef<Path>) -> Result<HashDb> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_db(&text)
}

/// One database entry's screening result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryHit {
    pub network_id: String,
    pub motif: String,
    pub p_value: f64,
    pub passed_screen: bool,
    pub n: usize,
    pub t_obs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryStatus {
    Found,
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryOutcome {
    pub status: QueryStatus,
    pub level: f64,
    /// All compared entries, highest p-value first.
    pub hits: Vec<QueryHit>,
    /// Entries that could not be compared, with the reason.
    pub skipped: Vec<(String, String)>,
}

impl QueryOutcome {
    /// Entries passing the screen.
    pub fn screened(&self) -> impl Iterator<Item = &QueryHit> {
        self.hits.iter().filter(|h| h.passed_screen)
    }

    fn finish(level: f64, mut hits: Vec<QueryHit>, skipped: Vec<(String, String)>) -> Self {
        hits.sort_by(|a, b| {
            b.p_value
                .total_cmp(&a.p_value)
                .then_with(|| a.network_id.cmp(&b.network_id))
        });
        let status = if hits.iter().any(|h| h.passed_screen) {
            QueryStatus::Found
        } else {
            QueryStatus::NotFound
        };
        QueryOutcome {
            status,
            level,
            hits,
            skipped,
        }
    }
}

/// How per-motif p-values merge into one screening decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Combine {
    /// `min(1, k · min_j p_j)` over the `k` motifs.
    #[default]
    Bonferroni,
}

fn entry_p_value(
    keyword: &NetworkSummary,
    entry: &NetworkSummary,
    level: f64,
    c_delta: f64,
    seed: u64,
) -> Result<inference::TestResult> {
    let mut rng = rng::keyed(seed, &format!("{}\u{1f}{}", entry.network_id, entry.motif.name));
    inference::test(keyword, entry, level, c_delta, &mut rng)
}

/// Screens every entry of `db` against the keyword for one motif.
pub fn query(
    keyword: &HashRecord,
    db: &HashDb,
    motif: &str,
    level: f64,
    c_delta: f64,
    seed: u64,
) -> Result<QueryOutcome> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidArgument(format!("level {level} outside (0, 1)")));
    }
    let key = keyword
        .summary(motif)
        .ok_or_else(|| Error::InvalidArgument(format!("keyword {} has no summary for motif {motif}", keyword.network_id)))?;
    let records: Vec<&HashRecord> = db.records().collect();
    let results: Vec<Option<std::result::Result<QueryHit, (String, String)>>> = records
        .par_iter()
        .map(|rec| {
            let entry = rec.summary(motif)?;
            Some(
                entry_p_value(key, entry, level, c_delta, seed)
                    .map(|t| QueryHit {
                        network_id: rec.network_id.clone(),
                        motif: motif.to_string(),
                        p_value: t.p_value,
                        passed_screen: t.p_value >= level,
                        n: rec.n,
                        t_obs: t.t_obs,
                    })
                    .map_err(|e| (rec.network_id.clone(), e.to_string())),
            )
        })
        .collect();
    let mut hits = Vec::new();
    let mut skipped = Vec::new();
    for r in results.into_iter().flatten() {
        match r {
            Ok(h) => hits.push(h),
            Err(s) => skipped.push(s),
        }
    }
    Ok(QueryOutcome::finish(level, hits, skipped))
}

/// Screens on several motifs at once, merging p-values per entry.
/// Entries lacking any of the motifs are skipped.
pub fn query_combined(
    keyword: &HashRecord,
    db: &HashDb,
    motifs: &[String],
    level: f64,
    c_delta: f64,
    seed: u64,
    combine: Combine,
) -> Result<QueryOutcome> {
    if motifs.is_empty() {
        return Err(Error::InvalidArgument("no motifs requested".into()));
    }
    let per_motif = motifs
        .iter()
        .map(|m| query(keyword, db, m, level, c_delta, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut skipped = Vec::new();
    let mut hits = Vec::new();
    for rec in db.records() {
        let mut ps = Vec::with_capacity(motifs.len());
        for outcome in &per_motif {
            match outcome.hits.iter().find(|h| h.network_id == rec.network_id) {
                Some(h) => ps.push(h.p_value),
                None => break,
            }
        }
        if ps.len() != motifs.len() {
            skipped.push((rec.network_id.clone(), "missing or degenerate motif summary".into()));
            continue;
        }
        let p = match combine {
            Combine::Bonferroni => (ps.iter().cloned().fold(f64::INFINITY, f64::min) * ps.len() as f64).min(1.0),
        };
        hits.push(QueryHit {
            network_id: rec.network_id.clone(),
            motif: motifs.join(","),
            p_value: p,
            passed_screen: p >= level,
            n: rec.n,
            t_obs: f64::NAN,
        });
    }
    Ok(QueryOutcome::finish(level, hits, skipped))
}
