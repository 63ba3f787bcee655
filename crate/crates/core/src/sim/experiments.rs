//! Simulation harnesses: distribution accuracy, interval coverage, the
//! hashing/query benchmark and stand-alone bootstrap runs.
//!
//! Replicate `k` of a condition draws from its own stream derived from the
//! master seed and the condition label, and replicate outputs are reduced
//! in index order, so results do not depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bootstrap::{bootstrap_distribution, BootstrapMode, BootstrapOutput};
use super::config::{resolve_graphon, BootstrapConfig, CdfConfig, CoverageConfig, QueryBenchConfig};
use super::graphon::Graphon;
use super::population::true_scaled_moment;
use super::sampling::sample_network;
use crate::edgeworth::{self, combine, smoothing_noise, summarize, EdgeworthCoeffs};
use crate::error::{Error, Result};
use crate::hashdb::{hash_network_at, query, HashDb, HashRecord};
use crate::inference::{discrepancy, interval_from_coeffs, test_with_delta};
use crate::motif::Motif;
use crate::normal;
use crate::rng::{self, SimRng};

/// Timestamp stamped on simulated hash records, keeping outputs reproducible.
pub const SIMULATED_TIMESTAMP: &str = "1970-01-01T00:00:00Z";

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Empirical CDF of sorted `values` at each grid point.
fn ecdf_on_grid(sorted: &[f64], grid: &[f64]) -> Vec<f64> {
    let n = sorted.len() as f64;
    grid.iter()
        .map(|&u| sorted.partition_point(|&t| t <= u) as f64 / n)
        .collect()
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Two independently sampled networks for one replicate.
struct PairDraw {
    a: crate::graph::Graph,
    b: crate::graph::Graph,
    clamps: u64,
}

struct Condition<'a> {
    ga: &'a Graphon,
    gb: &'a Graphon,
    rho_a: f64,
    rho_b: f64,
    m: usize,
    n: usize,
}

impl Condition<'_> {
    fn draw(&self, r: &mut SimRng) -> Result<PairDraw> {
        let a = sample_network(self.ga, self.rho_a, self.m, r)?;
        let b = sample_network(self.gb, self.rho_b, self.n, r)?;
        Ok(PairDraw {
            a: a.graph,
            b: b.graph,
            clamps: a.clamp_count + b.clamp_count,
        })
    }

    fn truth(&self, motif: &Motif) -> Result<f64> {
        Ok(true_scaled_moment(self.ga, motif, self.rho_a)?.value - true_scaled_moment(self.gb, motif, self.rho_b)?.value)
    }
}

// ---------------------------------------------------------------------------
// distribution accuracy

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfRow {
    pub m: usize,
    pub n: usize,
    pub motif: String,
    pub approximant: String,
    /// Truncated sup-distance to the Monte Carlo distribution.
    pub distance: f64,
    /// Spread of the distance across evaluated replicates.
    pub distance_sd: f64,
    pub evaluated: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfCurve {
    pub m: usize,
    pub n: usize,
    /// Monte Carlo CDF of `T̂ + δ` on the grid.
    pub monte_carlo: Vec<f64>,
    /// Empirical expansion averaged over the evaluated replicates.
    pub edgeworth_mean: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfReport {
    pub rows: Vec<CdfRow>,
    pub grid: Vec<f64>,
    pub curves: Vec<CdfCurve>,
    /// `(m, n, true d)` per condition.
    pub truth: Vec<(usize, usize, f64)>,
    pub skipped: usize,
    pub clamp_count: u64,
}

struct CdfRep {
    t: f64,
    coeffs: Option<EdgeworthCoeffs>,
    boot: Vec<Option<BootstrapOutput>>,
    clamps: u64,
}

pub fn run_cdf(cfg: &CdfConfig) -> Result<CdfReport> {
    cfg.validate()?;
    let ga = resolve_graphon(&cfg.graphon_a, &cfg.block_models)?;
    let gb = resolve_graphon(&cfg.graphon_b, &cfg.block_models)?;
    let motif = Motif::parse(&cfg.motif)?;
    let grid = cfg.grid();
    let phi: Vec<f64> = grid.iter().map(|&u| normal::cdf(u)).collect();
    let boot = cfg.bootstrap.clone();
    let mut report = CdfReport {
        rows: Vec::new(),
        grid: grid.clone(),
        curves: Vec::new(),
        truth: Vec::new(),
        skipped: 0,
        clamp_count: 0,
    };
    for size in &cfg.sizes {
        let (m, n) = size.pair();
        let cond = Condition {
            ga: &ga,
            gb: &gb,
            rho_a: cfg.rho_a,
            rho_b: cfg.rho_b,
            m,
            n,
        };
        let d = cond.truth(&motif)?;
        let master = rng::derive_seed(cfg.seed, &format!("cdf/{m}/{n}/{}", motif.name()));
        let boot_reps = boot.as_ref().map_or(0, |b| b.eval_reps);
        let reps: Vec<Option<CdfRep>> = (0..cfg.reps)
            .into_par_iter()
            .map(|k| {
                let mut r = rng::stream(master, k as u64);
                let draw = cond.draw(&mut r).ok()?;
                let delta = smoothing_noise(m, n, cfg.c_delta, &mut r);
                let (t, coeffs) = if k < cfg.eval_reps {
                    let sa = summarize(&draw.a, &motif, "a").ok()?;
                    let sb = summarize(&draw.b, &motif, "b").ok()?;
                    let c = combine(&sa, &sb).ok()?;
                    ((discrepancy(&sa, &sb).ok()? - d) / c.s_hat + delta, Some(c))
                } else {
                    let st = super::bootstrap::studentized(&draw.a, &draw.b, &motif).ok()?;
                    ((st.d_hat - d) / st.s_hat + delta, None)
                };
                let mut boots = Vec::new();
                if let Some(b) = boot.as_ref().filter(|_| k < boot_reps) {
                    for mode in &b.modes {
                        boots.push(bootstrap_distribution(&draw.a, &draw.b, &motif, *mode, b.n_boot, None, cfg.c_delta, &mut r).ok());
                    }
                }
                Some(CdfRep {
                    t,
                    coeffs,
                    boot: boots,
                    clamps: draw.clamps,
                })
            })
            .collect();
        report.skipped += reps.iter().filter(|r| r.is_none()).count();
        let reps: Vec<CdfRep> = reps.into_iter().flatten().collect();
        if reps.is_empty() {
            return Err(Error::DegenerateVariance(format!("every replicate at ({m}, {n}) was degenerate")));
        }
        report.clamp_count += reps.iter().map(|r| r.clamps).sum::<u64>();
        let mut ts: Vec<f64> = reps.iter().map(|r| r.t).collect();
        ts.sort_by(f64::total_cmp);
        let truth = ecdf_on_grid(&ts, &grid);

        let mut ew_dist = Vec::new();
        let mut ew_mean = vec![0.0; grid.len()];
        for c in reps.iter().filter_map(|r| r.coeffs.as_ref()) {
            let curve: Vec<f64> = grid.iter().map(|&u| edgeworth::cdf(c, u)).collect();
            ew_dist.push(sup_distance(&curve, &truth));
            ew_mean.iter_mut().zip(&curve).for_each(|(a, b)| *a += b);
        }
        let k = ew_dist.len().max(1) as f64;
        ew_mean.iter_mut().for_each(|x| *x /= k);
        let (dm, ds) = mean_sd(&ew_dist);
        let row = |approximant: &str, distance: f64, distance_sd: f64, evaluated: usize| CdfRow {
            m,
            n,
            motif: motif.name().to_string(),
            approximant: approximant.to_string(),
            distance,
            distance_sd,
            evaluated,
        };
        report.rows.push(row("edgeworth", dm, ds, ew_dist.len()));
        report.rows.push(row("normal", sup_distance(&phi, &truth), 0.0, 1));
        if let Some(b) = &boot {
            for (j, mode) in b.modes.iter().enumerate() {
                let dists: Vec<f64> = reps
                    .iter()
                    .filter_map(|r| r.boot.get(j).and_then(Option::as_ref))
                    .filter(|o| !o.stats.is_empty())
                    .map(|o| {
                        let curve: Vec<f64> = grid.iter().map(|&u| o.cdf(u)).collect();
                        sup_distance(&curve, &truth)
                    })
                    .collect();
                let (bm, bs) = mean_sd(&dists);
                report.rows.push(row(mode_name(*mode), bm, bs, dists.len()));
            }
        }
        report.curves.push(CdfCurve {
            m,
            n,
            monte_carlo: truth,
            edgeworth_mean: ew_mean,
        });
        report.truth.push((m, n, d));
    }
    Ok(report)
}

fn mode_name(mode: BootstrapMode) -> &'static str {
    match mode {
        BootstrapMode::Subsample => "subsample",
        BootstrapMode::Resample => "resample",
    }
}

// ---------------------------------------------------------------------------
// coverage

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRow {
    pub m: usize,
    pub n: usize,
    pub motif: String,
    pub method: String,
    pub coverage: f64,
    /// Binomial standard error of the coverage estimate.
    pub std_error: f64,
    pub mean_length: f64,
    pub reps: usize,
    pub skipped: usize,
    pub true_d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub rows: Vec<CoverageRow>,
    pub clamp_count: u64,
}

impl CoverageReport {
    pub fn find(&self, m: usize, n: usize, motif: &str, method: &str) -> Option<&CoverageRow> {
        self.rows
            .iter()
            .find(|r| r.m == m && r.n == n && r.motif == motif && r.method == method)
    }
}

/// Per-replicate interval outcomes `(covered, length)` by method.
struct CoverageRep {
    outcomes: Vec<Option<(bool, f64)>>,
    clamps: u64,
}

pub fn run_coverage(cfg: &CoverageConfig) -> Result<CoverageReport> {
    cfg.validate()?;
    let ga = resolve_graphon(&cfg.graphon_a, &cfg.block_models)?;
    let gb = resolve_graphon(&cfg.graphon_b, &cfg.block_models)?;
    let motifs = cfg.motif_list()?;
    let mut methods = vec!["edgeworth", "normal"];
    let boot = cfg.bootstrap.clone().unwrap_or_default();
    if cfg.bootstrap.is_some() {
        methods.extend(boot.modes.iter().map(|m| mode_name(*m)));
    }
    let alpha = 1.0 - cfg.level;
    let mut report = CoverageReport {
        rows: Vec::new(),
        clamp_count: 0,
    };
    for size in &cfg.sizes {
        let (m, n) = size.pair();
        let cond = Condition {
            ga: &ga,
            gb: &gb,
            rho_a: cfg.rho_a,
            rho_b: cfg.rho_b,
            m,
            n,
        };
        for motif in &motifs {
            let d = cond.truth(motif)?;
            let master = rng::derive_seed(cfg.seed, &format!("coverage/{m}/{n}/{}", motif.name()));
            let reps: Vec<Option<CoverageRep>> = (0..cfg.reps)
                .into_par_iter()
                .map(|k| {
                    let mut r = rng::stream(master, k as u64);
                    let draw = cond.draw(&mut r).ok()?;
                    let delta = smoothing_noise(m, n, cfg.c_delta, &mut r);
                    let sa = summarize(&draw.a, motif, "a").ok()?;
                    let sb = summarize(&draw.b, motif, "b").ok()?;
                    let c = combine(&sa, &sb).ok()?;
                    let d_hat = discrepancy(&sa, &sb).ok()?;
                    let judge = |lo: f64, hi: f64| (lo < d && d < hi, hi - lo);
                    let mut outcomes = Vec::with_capacity(methods.len());
                    outcomes.push(interval_from_coeffs(&c, d_hat, cfg.level, delta).ok().map(|ci| judge(ci.lo, ci.hi)));
                    let z = EdgeworthCoeffs::normal(m, n, c.s_hat, motif.s());
                    outcomes.push(interval_from_coeffs(&z, d_hat, cfg.level, delta).ok().map(|ci| judge(ci.lo, ci.hi)));
                    if cfg.bootstrap.is_some() {
                        for mode in &boot.modes {
                            let out = if k < boot.eval_reps {
                                bootstrap_distribution(&draw.a, &draw.b, motif, *mode, boot.n_boot, None, cfg.c_delta, &mut r).ok()
                            } else {
                                None
                            };
                            outcomes.push(out.and_then(|o| {
                                let (ql, qh) = (o.quantile(alpha / 2.0)?, o.quantile(1.0 - alpha / 2.0)?);
                                Some(judge(d_hat - (qh - delta) * c.s_hat, d_hat - (ql - delta) * c.s_hat))
                            }));
                        }
                    }
                    Some(CoverageRep {
                        outcomes,
                        clamps: draw.clamps,
                    })
                })
                .collect();
            let reps: Vec<CoverageRep> = reps.into_iter().flatten().collect();
            report.clamp_count += reps.iter().map(|r| r.clamps).sum::<u64>();
            for (j, method) in methods.iter().enumerate() {
                let judged: Vec<(bool, f64)> = reps.iter().filter_map(|r| r.outcomes[j]).collect();
                let used = judged.len();
                let expected = if j >= 2 { boot.eval_reps.min(cfg.reps) } else { cfg.reps };
                let cover = judged.iter().filter(|(c, _)| *c).count() as f64 / used.max(1) as f64;
                report.rows.push(CoverageRow {
                    m,
                    n,
                    motif: motif.name().to_string(),
                    method: method.to_string(),
                    coverage: cover,
                    std_error: (cover * (1.0 - cover) / used.max(1) as f64).sqrt(),
                    mean_length: judged.iter().map(|(_, l)| l).sum::<f64>() / used.max(1) as f64,
                    reps: used,
                    skipped: expected.saturating_sub(used),
                    true_d: d,
                });
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// hashing and querying benchmark

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeywordResult {
    pub name: String,
    pub graphon: String,
    pub in_database: bool,
    /// Per keyword draw; absent when the keyword's graphon is not in the database.
    pub aucs: Vec<f64>,
    pub auc_mean: Option<f64>,
    pub auc_sd: Option<f64>,
    pub mean_screened: f64,
    pub found_rate: f64,
    /// ROC of the first keyword draw as `(false positive rate, true positive rate)`.
    pub roc: Vec<(f64, f64)>,
    /// `log₁₀ p` over all draws and entries.
    pub histogram: Vec<HistogramBin>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullResult {
    pub graphon: String,
    pub pairs: usize,
    pub skipped: usize,
    /// Kolmogorov–Smirnov distance of the p-values from Uniform(0, 1).
    pub ks_statistic: f64,
    pub rejection_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryBenchReport {
    pub db_size: usize,
    pub db_skipped: usize,
    pub keywords: Vec<KeywordResult>,
    pub null: Option<NullResult>,
    pub clamp_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryBenchRow {
    pub condition: String,
    pub graphon: String,
    pub auc: Option<f64>,
    pub auc_sd: Option<f64>,
    pub mean_screened: Option<f64>,
    pub ks_statistic: Option<f64>,
    pub rejection_rate: Option<f64>,
}

impl QueryBenchReport {
    pub fn rows(&self) -> Vec<QueryBenchRow> {
        let mut rows: Vec<QueryBenchRow> = self
            .keywords
            .iter()
            .map(|k| QueryBenchRow {
                condition: k.name.clone(),
                graphon: k.graphon.clone(),
                auc: k.auc_mean,
                auc_sd: k.auc_sd,
                mean_screened: Some(k.mean_screened),
                ks_statistic: None,
                rejection_rate: None,
            })
            .collect();
        if let Some(nr) = &self.null {
            rows.push(QueryBenchRow {
                condition: "matched-null".into(),
                graphon: nr.graphon.clone(),
                auc: None,
                auc_sd: None,
                mean_screened: None,
                ks_statistic: Some(nr.ks_statistic),
                rejection_rate: Some(nr.rejection_rate),
            });
        }
        rows
    }
}

/// Mann–Whitney AUC of `scores` (higher = predicted positive), ties counted half.
pub fn auc(scores: &[f64], labels: &[bool]) -> Option<f64> {
    let pos: Vec<f64> = scores.iter().zip(labels).filter(|(_, &l)| l).map(|(s, _)| *s).collect();
    let neg: Vec<f64> = scores.iter().zip(labels).filter(|(_, &l)| !l).map(|(s, _)| *s).collect();
    if pos.is_empty() || neg.is_empty() {
        return None;
    }
    let mut wins = 0.0;
    for p in &pos {
        for q in &neg {
            wins += if p > q {
                1.0
            } else if p == q {
                0.5
            } else {
                0.0
            };
        }
    }
    Some(wins / (pos.len() * neg.len()) as f64)
}

/// ROC points sweeping the threshold down through the distinct scores.
pub fn roc_curve(scores: &[f64], labels: &[bool]) -> Vec<(f64, f64)> {
    let p = labels.iter().filter(|&&l| l).count().max(1) as f64;
    let q = labels.iter().filter(|&&l| !l).count().max(1) as f64;
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut pts = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0.0, 0.0);
    for (idx, &i) in order.iter().enumerate() {
        if labels[i] {
            tp += 1.0;
        } else {
            fp += 1.0;
        }
        let last_of_tie = order.get(idx + 1).is_none_or(|&j| scores[j] != scores[i]);
        if last_of_tie {
            pts.push((fp / q, tp / p));
        }
    }
    pts
}

/// One-sample KS distance of `values` from Uniform(0, 1).
pub fn ks_uniform(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = x.clamp(0.0, 1.0);
            ((i + 1) as f64 / n - x).max(x - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

fn histogram(log_p: &[f64], edges: &[f64]) -> Vec<HistogramBin> {
    let mut bins: Vec<HistogramBin> = edges
        .windows(2)
        .map(|w| HistogramBin {
            lo: w[0],
            hi: w[1],
            count: 0,
        })
        .collect();
    if bins.is_empty() {
        return bins;
    }
    let last = bins.len() - 1;
    for &x in log_p {
        let k = bins.iter().position(|b| x < b.hi).unwrap_or(last);
        bins[k].count += 1;
    }
    bins
}

/// Hashes `count` networks per graphon into a database.
pub fn build_database(
    graphons: &[Graphon],
    rho: f64,
    n: usize,
    count: usize,
    motifs: &[Motif],
    seed: u64,
) -> Result<(HashDb, Vec<String>, u64)> {
    let master = rng::derive_seed(seed, "database");
    let jobs: Vec<(usize, usize)> = (0..graphons.len()).flat_map(|g| (0..count).map(move |e| (g, e))).collect();
    let results: Vec<Result<(HashRecord, u64)>> = jobs
        .par_iter()
        .enumerate()
        .map(|(k, &(g, e))| {
            let mut r = rng::stream(master, k as u64);
            let s = sample_network(&graphons[g], rho, n, &mut r)?;
            let id = format!("{}#{e:03}", graphons[g].name());
            Ok((hash_network_at(&s.graph, motifs, &id, SIMULATED_TIMESTAMP)?, s.clamp_count))
        })
        .collect();
    let mut db = HashDb::new();
    let mut skipped = Vec::new();
    let mut clamps = 0;
    for (res, &(g, e)) in results.into_iter().zip(&jobs) {
        match res {
            Ok((rec, c)) => {
                clamps += c;
                db.insert(rec);
            }
            Err(err) => {
                log::warn!("database entry {}#{e:03} skipped: {err}", graphons[g].name());
                skipped.push(format!("{}#{e:03}", graphons[g].name()));
            }
        }
    }
    Ok((db, skipped, clamps))
}

fn graphon_of(id: &str) -> &str {
    id.rsplit_once('#').map_or(id, |(g, _)| g)
}

pub fn run_query_bench(cfg: &QueryBenchConfig) -> Result<QueryBenchReport> {
    cfg.validate()?;
    let motif = Motif::parse(&cfg.motif)?;
    let graphons = cfg
        .graphons
        .iter()
        .map(|g| resolve_graphon(g, &cfg.block_models))
        .collect::<Result<Vec<_>>>()?;
    let started = std::time::Instant::now();
    let (db, db_skipped, mut clamp_count) =
        build_database(&graphons, cfg.rho, cfg.n, cfg.entries_per_graphon, std::slice::from_ref(&motif), cfg.seed)?;
    log::info!("hashed {} records in {:.2?}", db.len(), started.elapsed());

    let mut keywords = Vec::new();
    for (ki, spec) in cfg.keywords.iter().enumerate() {
        let kg = resolve_graphon(&spec.graphon, &cfg.block_models)?;
        let in_database = graphons.iter().any(|g| g.name() == kg.name());
        let master = rng::derive_seed(cfg.seed, &format!("keyword/{ki}/{}", spec.name));
        let mut aucs = Vec::new();
        let mut screened = Vec::new();
        let mut found = 0;
        let mut roc = Vec::new();
        let mut log_p = Vec::new();
        for rep in 0..cfg.keyword_reps {
            let mut r = rng::stream(master, rep as u64);
            let s = sample_network(&kg, cfg.rho, cfg.n, &mut r)?;
            clamp_count += s.clamp_count;
            let key = hash_network_at(&s.graph, std::slice::from_ref(&motif), &spec.name, SIMULATED_TIMESTAMP)?;
            let t0 = std::time::Instant::now();
            let out = query(&key, &db, motif.name(), cfg.level, cfg.c_delta, rng::derive_seed(master, &rep.to_string()))?;
            log::info!("{} draw {rep}: queried {} records in {:.2?}", spec.name, db.len(), t0.elapsed());
            let scores: Vec<f64> = out.hits.iter().map(|h| h.p_value).collect();
            let labels: Vec<bool> = out.hits.iter().map(|h| graphon_of(&h.network_id) == kg.name()).collect();
            if let Some(a) = auc(&scores, &labels) {
                aucs.push(a);
            }
            if rep == 0 {
                roc = roc_curve(&scores, &labels);
            }
            screened.push(out.screened().count() as f64);
            found += (out.status == crate::hashdb::QueryStatus::Found) as usize;
            log_p.extend(scores.iter().map(|p| p.max(1e-300).log10()));
        }
        let (am, asd) = mean_sd(&aucs);
        keywords.push(KeywordResult {
            name: spec.name.clone(),
            graphon: kg.name().to_string(),
            in_database,
            auc_mean: (!aucs.is_empty()).then_some(am),
            auc_sd: (!aucs.is_empty()).then_some(asd),
            aucs,
            mean_screened: mean_sd(&screened).0,
            found_rate: found as f64 / cfg.keyword_reps as f64,
            roc,
            histogram: histogram(&log_p, &cfg.histogram_edges),
        });
    }

    let null = if cfg.null_pairs > 0 {
        let g = resolve_graphon(&cfg.null_graphon, &cfg.block_models)?;
        let master = rng::derive_seed(cfg.seed, "matched-null");
        let ps: Vec<Option<f64>> = (0..cfg.null_pairs)
            .into_par_iter()
            .map(|k| {
                let mut r = rng::stream(master, k as u64);
                let a = sample_network(&g, cfg.rho, cfg.n, &mut r).ok()?;
                let b = sample_network(&g, cfg.rho, cfg.n, &mut r).ok()?;
                let sa = summarize(&a.graph, &motif, "a").ok()?;
                let sb = summarize(&b.graph, &motif, "b").ok()?;
                let delta = smoothing_noise(cfg.n, cfg.n, cfg.c_delta, &mut r);
                Some(test_with_delta(&sa, &sb, cfg.level, delta).ok()?.p_value)
            })
            .collect();
        let kept: Vec<f64> = ps.iter().flatten().copied().collect();
        Some(NullResult {
            graphon: g.name().to_string(),
            pairs: kept.len(),
            skipped: ps.len() - kept.len(),
            ks_statistic: ks_uniform(&kept),
            rejection_rate: kept.iter().filter(|&&p| p < cfg.level).count() as f64 / kept.len().max(1) as f64,
        })
    } else {
        None
    };

    Ok(QueryBenchReport {
        db_size: db.len(),
        db_skipped: db_skipped.len(),
        keywords,
        null,
        clamp_count,
    })
}

// ---------------------------------------------------------------------------
// stand-alone bootstrap

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapRow {
    pub mode: String,
    pub m: usize,
    pub n: usize,
    pub n_boot: usize,
    pub kept: usize,
    pub dropped: usize,
    pub mean: f64,
    pub sd: f64,
    pub q05: f64,
    pub q50: f64,
    pub q95: f64,
    pub d_hat: f64,
    pub s_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapReport {
    pub rows: Vec<BootstrapRow>,
    /// Replicate statistics per mode, in replicate order.
    pub stats: Vec<Vec<f64>>,
    pub clamp_count: u64,
}

pub fn run_bootstrap(cfg: &BootstrapConfig) -> Result<BootstrapReport> {
    cfg.validate()?;
    let ga = resolve_graphon(&cfg.graphon_a, &cfg.block_models)?;
    let gb = resolve_graphon(&cfg.graphon_b, &cfg.block_models)?;
    let motif = Motif::parse(&cfg.motif)?;
    let cond = Condition {
        ga: &ga,
        gb: &gb,
        rho_a: cfg.rho_a,
        rho_b: cfg.rho_b,
        m: cfg.m,
        n: cfg.n,
    };
    let mut r = rng::stream(rng::derive_seed(cfg.seed, "bootstrap"), 0);
    let draw = cond.draw(&mut r)?;
    let mut report = BootstrapReport {
        rows: Vec::new(),
        stats: Vec::new(),
        clamp_count: draw.clamps,
    };
    for mode in &cfg.modes {
        let out = bootstrap_distribution(
            &draw.a,
            &draw.b,
            &motif,
            *mode,
            cfg.n_boot,
            cfg.sizes.map(|[a, b]| (a, b)),
            cfg.c_delta,
            &mut r,
        )?;
        let (mean, sd) = mean_sd(&out.stats);
        let q = |p: f64| out.quantile(p).unwrap_or(f64::NAN);
        report.rows.push(BootstrapRow {
            mode: mode_name(*mode).to_string(),
            m: cfg.m,
            n: cfg.n,
            n_boot: cfg.n_boot,
            kept: out.stats.len(),
            dropped: out.dropped,
            mean,
            sd,
            q05: q(0.05),
            q50: q(0.5),
            q95: q(0.95),
            d_hat: out.full.d_hat,
            s_hat: out.full.s_hat,
        });
        report.stats.push(out.stats);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::config::SizeSpec;

    #[test]
    fn auc_roc_and_ks_helpers() {
        let scores = [0.9, 0.8, 0.7, 0.6, 0.5];
        let labels = [true, true, false, true, false];
        assert!((auc(&scores, &labels).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(auc(&scores, &[true; 5]), None);
        assert_eq!(auc(&[0.5, 0.5], &[true, false]), Some(0.5));
        let roc = roc_curve(&scores, &labels);
        assert_eq!(roc.first(), Some(&(0.0, 0.0)));
        assert_eq!(roc.last(), Some(&(1.0, 1.0)));
        let u: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        assert!(ks_uniform(&u) <= 0.0005 + 1e-12);
        assert!((ks_uniform(&[0.0; 10]) - 1.0).abs() < 1e-15);
        let h = histogram(&[-10.0, -0.1, 0.0, -2.5], &[-8.0, -2.0, 0.0]);
        assert_eq!(h.iter().map(|b| b.count).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn cdf_report_structure() {
        let cfg = CdfConfig {
            sizes: vec![SizeSpec::Equal(25), SizeSpec::Pair([25, 36])],
            reps: 1000,
            eval_reps: 10,
            bootstrap: Some(super::super::config::BootstrapSettings {
                n_boot: 10,
                eval_reps: 2,
                ..Default::default()
            }),
            ..Default::default()
        };
        let r = run_cdf(&cfg).unwrap();
        assert_eq!(r.rows.len(), 2 * 4);
        for row in &r.rows {
            assert!(row.distance >= 0.0 && row.distance <= 1.0, "{row:?}");
        }
        assert_eq!(r.curves[0].monte_carlo.len(), 401);
        assert_eq!(r, run_cdf(&cfg).unwrap());
    }

    #[test]
    fn coverage_is_reproducible_and_sane() {
        let cfg = CoverageConfig {
            sizes: vec![SizeSpec::Equal(20)],
            motifs: vec!["triangle".into()],
            reps: 1000,
            ..Default::default()
        };
        let a = run_coverage(&cfg).unwrap();
        let b = run_coverage(&CoverageConfig { ..cfg.clone() }).unwrap();
        assert_eq!(a, b);
        let ours = a.find(20, 20, "triangle", "edgeworth").unwrap();
        assert!(ours.coverage > 0.7 && ours.coverage < 1.0, "{ours:?}");
        let other_seed = run_coverage(&CoverageConfig { seed: 2, ..cfg }).unwrap();
        assert_ne!(a, other_seed);
    }

    #[test]
    fn query_bench_small() {
        let cfg = QueryBenchConfig {
            n: 60,
            entries_per_graphon: 3,
            null_pairs: 50,
            ..Default::default()
        };
        let r = run_query_bench(&cfg).unwrap();
        assert_eq!(r.db_size + r.db_skipped, 30);
        assert!(r.keywords[0].in_database && !r.keywords[1].in_database);
        assert!(r.keywords[0].auc_mean.is_some());
        assert!(r.keywords[1].auc_mean.is_none());
        let total: usize = r.keywords[0].histogram.iter().map(|b| b.count).sum();
        assert_eq!(total, r.db_size);
        assert_eq!(r.rows().len(), 3);
    }

    #[test]
    fn bootstrap_report() {
        let cfg = BootstrapConfig {
            m: 40,
            n: 40,
            n_boot: 30,
            ..Default::default()
        };
        let r = run_bootstrap(&cfg).unwrap();
        assert_eq!(r.rows.len(), 2);
        for (row, stats) in r.rows.iter().zip(&r.stats) {
            assert_eq!(row.kept + row.dropped, 30);
            assert_eq!(stats.len(), row.kept);
        }
    }
}
