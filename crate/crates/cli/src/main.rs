//! `netmoment`: hash networks, query hashed databases, run two-sample
//! tests and intervals, and drive the simulation experiments.

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use netmoment::graph::parse_edge_list;
use netmoment::hashdb::{hash_network, hash_network_at, parse_db, query_combined, Combine};
use netmoment::inference::{self, DEFAULT_CI_LEVEL, DEFAULT_TEST_LEVEL};
use netmoment::sim::config::parse_config;
use netmoment::sim::output::{csv_string, write_table, Metadata};
use netmoment::sim::{run_bootstrap, run_cdf, run_coverage, run_query_bench, BootstrapConfig, CdfConfig, CoverageConfig, QueryBenchConfig};
use netmoment::{db_append, query, QueryHit, QueryStatus, rng, summarize, Error, Graph, HashRecord, Indexing, Motif, DEFAULT_C_DELTA};

const SEED_ENV: &str = "NETMOMENT_SEED";

#[derive(Parser, Debug)]
#[command(name = "netmoment", version, about = "Two-sample network inference from motif moments")]
struct Cli {
    /// Worker threads for parallel loops; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Edge lists use 1-based node ids.
    #[arg(long, global = true)]
    one_based: bool,
    /// Log every file read and write to stderr.
    #[arg(long, global = true)]
    trace_io: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize one network and append its record to a database.
    Hash(HashArgs),
    /// Screen a database against a keyword network.
    Query(QueryArgs),
    /// Test equality of the scaled motif moments of two networks.
    Test(PairArgs),
    /// Confidence interval for the difference of scaled motif moments.
    Ci(PairArgs),
    /// Run a simulation experiment from a TOML config.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
struct HashArgs {
    /// Edge-list file.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated motifs.
    #[arg(long, value_delimiter = ',', value_parser = parse_motif, default_value = "edge,vshape,triangle")]
    motifs: Vec<Motif>,
    /// Record id; defaults to the input file stem.
    #[arg(long)]
    id: Option<String>,
    /// Database to append to; without it the record is printed.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fixed creation timestamp (RFC 3339) instead of the current time.
    #[arg(long)]
    created_at: Option<String>,
}

#[derive(Args, Debug)]
struct QueryArgs {
    /// Keyword edge-list file.
    #[arg(long)]
    keyword: PathBuf,
    #[arg(long)]
    db: PathBuf,
    /// Motif, or comma-separated motifs merged with `--combine`.
    #[arg(long, value_delimiter = ',', value_parser = parse_motif, default_value = "triangle")]
    motif: Vec<Motif>,
    #[arg(long, value_parser = parse_level, default_value_t = DEFAULT_TEST_LEVEL)]
    alpha: f64,
    #[arg(long, value_enum)]
    combine: Option<CombineArg>,
    #[arg(long, value_parser = parse_c_delta, default_value_t = DEFAULT_C_DELTA)]
    c_delta: f64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CombineArg {
    Bonferroni,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_parser = parse_motif, default_value = "triangle")]
    motif: Motif,
    /// Test level.
    #[arg(long, value_parser = parse_level, default_value_t = DEFAULT_TEST_LEVEL)]
    alpha: f64,
    /// Interval confidence level.
    #[arg(long, value_parser = parse_level, default_value_t = DEFAULT_CI_LEVEL)]
    level: f64,
    #[arg(long, value_parser = parse_c_delta, default_value_t = DEFAULT_C_DELTA)]
    c_delta: f64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(value_enum)]
    experiment: Experiment,
    /// TOML config; omitted keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write `<stem>.csv` and `<stem>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    Cdf,
    Coverage,
    QueryBench,
    Bootstrap,
}

fn parse_motif(s: &str) -> Result<Motif, String> {
    Motif::parse(s).map_err(|e| e.to_string())
}

fn parse_level(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is outside (0, 1)"))
    }
}

fn parse_c_delta(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if x >= 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} must be finite and non-negative"))
    }
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn resolve_seed(explicit: Option<u64>) -> CliResult<u64> {
    let seed = match explicit {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer")))?,
            Err(_) => rand::random::<u32>() as u64,
        },
    };
    eprintln!("netmoment: seed {seed}");
    Ok(seed)
}

fn emit<T: Serialize>(format: Format, value: &T, rows: &[T]) -> CliResult {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Data(Error::InvalidArgument(e.to_string())))?;
            println!("{text}");
        }
        Format::Csv => print!("{}", csv_string(rows)?),
    }
    Ok(())
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn load_graph(path: &Path, role: &str, indexing: Indexing) -> CliResult<Graph> {
    let text = io::read(path, role)?;
    let (g, report) = parse_edge_list(&text, indexing, path)?;
    eprintln!(
        "netmoment: loaded {} ({} nodes, {} edges, {} self-loops dropped, {} duplicates merged)",
        path.display(),
        report.nodes,
        report.edges_kept,
        report.loops_dropped,
        report.duplicates_merged
    );
    Ok(g)
}

fn file_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[derive(Serialize)]
struct HashedRecord {
    network_id: String,
    n: usize,
    /// Space-separated.
    motifs: String,
    skipped_motifs: String,
    db: String,
}

fn cmd_hash(cli: &Cli, args: &HashArgs) -> CliResult {
    resolve_seed(None)?;
    let g = load_graph(&args.input, "input", indexing(cli))?;
    let id = args.id.clone().unwrap_or_else(|| file_id(&args.input));
    let record = match &args.created_at {
        Some(ts) => hash_network_at(&g, &args.motifs, &id, ts)?,
        None => hash_network(&g, &args.motifs, &id)?,
    };
    let requested: Vec<&str> = args.motifs.iter().map(|m| m.name()).collect();
    let hashed: Vec<&str> = record.motif_names().collect();
    let missing: Vec<&str> = requested.iter().copied().filter(|m| !hashed.contains(m)).collect();
    match &args.out {
        Some(out) => {
            db_append(out, &record)?;
            io::note_write(out, "db");
            let summary = HashedRecord {
                network_id: record.network_id.clone(),
                n: record.n,
                motifs: hashed.join(" "),
                skipped_motifs: missing.join(" "),
                db: out.display().to_string(),
            };
            emit(cli.format, &summary, std::slice::from_ref(&summary))?;
        }
        None => println!("{}", record.to_json_line()?),
    }
    Ok(())
}

fn indexing(cli: &Cli) -> Indexing {
    if cli.one_based {
        Indexing::OneBased
    } else {
        Indexing::ZeroBased
    }
}

#[derive(Serialize)]
struct Skipped<'a> {
    network_id: &'a str,
    reason: &'a str,
}

#[derive(Serialize)]
struct QueryReport<'a> {
    status: QueryStatus,
    keyword: &'a str,
    motifs: &'a [String],
    level: f64,
    seed: u64,
    db_size: usize,
    screened: Vec<&'a str>,
    hits: &'a [QueryHit],
    skipped: Vec<Skipped<'a>>,
}

fn cmd_query(cli: &Cli, args: &QueryArgs) -> CliResult {
    let seed = resolve_seed(args.seed)?;
    let mut motif_names: Vec<String> = Vec::new();
    for m in &args.motif {
        if !motif_names.iter().any(|n| n == m.name()) {
            motif_names.push(m.name().to_string());
        }
    }
    if motif_names.len() > 1 && args.combine.is_none() {
        return Err(Failure::Usage("several motifs need --combine".into()));
    }
    // The keyword adjacency lives only inside this block.
    let keyword: HashRecord = {
        let g = load_graph(&args.keyword, "keyword", indexing(cli))?;
        hash_network_at(&g, &args.motif, &file_id(&args.keyword), "")?
    };
    let db = parse_db(&io::read(&args.db, "db")?)?;
    let outcome = if motif_names.len() == 1 {
        query(&keyword, &db, &motif_names[0], args.alpha, args.c_delta, seed)?
    } else {
        query_combined(&keyword, &db, &motif_names, args.alpha, args.c_delta, seed, Combine::Bonferroni)?
    };
    for (id, reason) in &outcome.skipped {
        eprintln!("netmoment: skipped {id}: {reason}");
    }
    let screened: Vec<&str> = outcome.screened().map(|h| h.network_id.as_str()).collect();
    match cli.format {
        Format::Json => emit_json(&QueryReport {
            status: outcome.status,
            keyword: &keyword.network_id,
            motifs: &motif_names,
            level: args.alpha,
            seed,
            db_size: db.len(),
            screened,
            hits: &outcome.hits,
            skipped: outcome.skipped.iter().map(|(id, reason)| Skipped { network_id: id, reason }).collect(),
        }),
        Format::Csv => print!("{}", csv_string(&outcome.hits)?),
    }
    Ok(())
}

#[derive(Serialize)]
struct TestRecord {
    motif: String,
    m: usize,
    n: usize,
    d_hat: f64,
    s_hat: f64,
    t_obs: f64,
    delta_t: f64,
    p_value: f64,
    reject: bool,
    level: f64,
    seed: u64,
    i0: f64,
    q1: f64,
    q2: f64,
}

#[derive(Serialize)]
struct IntervalRecord {
    motif: String,
    m: usize,
    n: usize,
    d_hat: f64,
    s_hat: f64,
    delta_t: f64,
    lo: f64,
    hi: f64,
    level: f64,
    q_lo: f64,
    q_hi: f64,
    seed: u64,
}

fn cmd_pair(cli: &Cli, args: &PairArgs, interval: bool) -> CliResult {
    let seed = resolve_seed(args.seed)?;
    let ga = load_graph(&args.a, "a", indexing(cli))?;
    let gb = load_graph(&args.b, "b", indexing(cli))?;
    let sa = summarize(&ga, &args.motif, &file_id(&args.a))?;
    let sb = summarize(&gb, &args.motif, &file_id(&args.b))?;
    let mut r = rng::stream(seed, 0);
    let motif = args.motif.name().to_string();
    if interval {
        let ci = inference::confidence_interval(&sa, &sb, args.level, args.c_delta, &mut r)?;
        let rec = IntervalRecord {
            motif,
            m: sa.n,
            n: sb.n,
            d_hat: ci.d_hat,
            s_hat: ci.s_hat,
            delta_t: ci.delta_t,
            lo: ci.lo,
            hi: ci.hi,
            level: ci.level,
            q_lo: ci.q_lo,
            q_hi: ci.q_hi,
            seed,
        };
        emit(cli.format, &rec, std::slice::from_ref(&rec))
    } else {
        let t = inference::test(&sa, &sb, args.alpha, args.c_delta, &mut r)?;
        let rec = TestRecord {
            motif,
            m: sa.n,
            n: sb.n,
            d_hat: t.d_hat,
            s_hat: t.s_hat,
            t_obs: t.t_obs,
            delta_t: t.delta_t,
            p_value: t.p_value,
            reject: t.reject,
            level: t.level,
            seed,
            i0: t.coeffs.i0,
            q1: t.coeffs.q1,
            q2: t.coeffs.q2,
        };
        emit(cli.format, &rec, std::slice::from_ref(&rec))
    }
}

fn load_sim_config<T>(args: &SimulateArgs) -> CliResult<T>
where
    T: serde::de::DeserializeOwned,
{
    let text = match &args.config {
        Some(path) => io::read(path, "config")?,
        None => String::new(),
    };
    parse_config(&text).map_err(|e| match (&args.config, e) {
        (Some(p), Error::Config(msg)) => Failure::Data(Error::Config(format!("{}: {msg}", p.display()))),
        (_, e) => Failure::Data(e),
    })
}

#[allow(clippy::too_many_arguments)]
fn finish_sim<R: Serialize, C: Serialize>(
    cli: &Cli,
    args: &SimulateArgs,
    name: &str,
    seed: u64,
    clamps: u64,
    config: &C,
    report: &R,
    rows: &[impl Serialize],
) -> CliResult {
    if clamps > 0 {
        eprintln!("netmoment: {clamps} edge probabilities clamped to 1");
    }
    if let Some(stem) = &args.out {
        let meta = Metadata::new(name, seed, clamps, config);
        let (csv, sidecar) = write_table(stem, rows, &meta)?;
        io::note_write(&csv, "table");
        io::note_write(&sidecar, "metadata");
    }
    match cli.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report).map_err(|e| Failure::Data(Error::InvalidArgument(e.to_string())))?;
            println!("{text}");
        }
        Format::Csv => print!("{}", csv_string(rows)?),
    }
    Ok(())
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> CliResult {
    match args.experiment {
        Experiment::Cdf => {
            let mut cfg: CdfConfig = load_sim_config(args)?;
            cfg.seed = args.seed.unwrap_or(cfg.seed);
            eprintln!("netmoment: seed {}", cfg.seed);
            let rep = run_cdf(&cfg)?;
            if rep.skipped > 0 {
                eprintln!("netmoment: {} degenerate replicates skipped", rep.skipped);
            }
            finish_sim(cli, args, "cdf", cfg.seed, rep.clamp_count, &cfg, &rep, &rep.rows)
        }
        Experiment::Coverage => {
            let mut cfg: CoverageConfig = load_sim_config(args)?;
            cfg.seed = args.seed.unwrap_or(cfg.seed);
            eprintln!("netmoment: seed {}", cfg.seed);
            let rep = run_coverage(&cfg)?;
            let skipped: usize = rep.rows.iter().map(|r| r.skipped).sum();
            if skipped > 0 {
                eprintln!("netmoment: {skipped} degenerate replicate evaluations skipped");
            }
            finish_sim(cli, args, "coverage", cfg.seed, rep.clamp_count, &cfg, &rep, &rep.rows)
        }
        Experiment::QueryBench => {
            let mut cfg: QueryBenchConfig = load_sim_config(args)?;
            cfg.seed = args.seed.unwrap_or(cfg.seed);
            eprintln!("netmoment: seed {}", cfg.seed);
            let rep = run_query_bench(&cfg)?;
            if rep.db_skipped > 0 {
                eprintln!("netmoment: {} database entries failed to hash", rep.db_skipped);
            }
            finish_sim(cli, args, "query-bench", cfg.seed, rep.clamp_count, &cfg, &rep, &rep.rows())
        }
        Experiment::Bootstrap => {
            let mut cfg: BootstrapConfig = load_sim_config(args)?;
            cfg.seed = args.seed.unwrap_or(cfg.seed);
            eprintln!("netmoment: seed {}", cfg.seed);
            let rep = run_bootstrap(&cfg)?;
            for row in rep.rows.iter().filter(|r| r.dropped > 0) {
                eprintln!("netmoment: {} bootstrap dropped {} replicates", row.mode, row.dropped);
            }
            finish_sim(cli, args, "bootstrap", cfg.seed, rep.clamp_count, &cfg, &rep, &rep.rows)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    if cli.trace_io {
        io::enable_trace();
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Hash(a) => cmd_hash(cli, a),
        Command::Query(a) => cmd_query(cli, a),
        Command::Test(a) => cmd_pair(cli, a, false),
        Command::Ci(a) => cmd_pair(cli, a, true),
        Command::Simulate(a) => cmd_simulate(cli, a),
    }
}

fn report_error(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": kind, "message": message }));
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("usage", e.to_string().trim_end());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            report_error("usage", &msg);
            ExitCode::from(2)
        }
        Err(Failure::Data(e)) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(1)
        }
    }
}
