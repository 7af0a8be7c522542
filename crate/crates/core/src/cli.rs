//! Command-line front end: `solve`, `sweep`, `gen`, `oracle`, `bench`.
//!
//! Exit codes are 0 on success, 1 on runtime errors and 2 on usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::{self, Exclusion, MetricRow};
use crate::gen::{forest_fire, ForestFireConfig};
use crate::graph::{laplacian_column_from_exp_column, CscGraph};
use crate::io::{self, GraphFormat, SolutionMeta};
use crate::oracle::{self, ORACLE_NODE_CAP};
use crate::solvers::{expmimv, gexpm, gexpmq, Algorithm, SolveOptions, SolveReport};
use crate::sparse::SparseVector;
use crate::taylor::{select_degree_exact, ThresholdRule, THETA};

/// Tolerance of the `gexpmq` reference used as truth above the oracle cap.
pub const REFERENCE_EPS: f64 = 1e-10;

/// Environment variable capping sweep and bench concurrency.
pub const THREADS_ENV: &str = "EXPGRAPH_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "expgraph",
    version,
    about = "Local columns of exp(P) for graph transition matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one column and write a solution file.
    Solve(SolveArgs),
    /// Run an accuracy/work grid over random seed nodes and write CSV.
    Sweep(SweepArgs),
    /// Generate a forest-fire graph as SMAT.
    Gen(GenArgs),
    /// Dense Taylor reference column.
    Oracle(OracleArgs),
    /// Time one algorithm over random seed nodes and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_format)]
    format: GraphFormat,
    /// Add the reverse of every edge.
    #[arg(long)]
    undirected: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Seed node (original label when the graph file was relabeled).
    #[arg(long)]
    col: u64,
    #[arg(long, value_parser = parse_alg)]
    alg: Algorithm,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    z: Option<usize>,
    /// Taylor degree for expmimv.
    #[arg(long = "N")]
    degree: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    /// Write the column of exp(-L) for the normalized Laplacian instead.
    #[arg(long)]
    laplacian: bool,
    /// Scale gexpmq thresholds by e.
    #[arg(long)]
    loose_thresholds: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_delimiter = ',', value_parser = parse_alg, required = true)]
    algs: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',')]
    eps_list: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    z_list: Vec<usize>,
    /// Taylor degree for expmimv.
    #[arg(long = "N")]
    degree: Option<usize>,
    /// Number of random seed nodes.
    #[arg(long)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    rng: u64,
    #[arg(long, value_delimiter = ',', default_value = "100")]
    k_list: Vec<usize>,
    /// Drop the seed and its neighbors before ranking.
    #[arg(long)]
    exclude_neighbors: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.4)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    rng: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    col: u64,
    #[arg(long = "N")]
    degree: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_parser = parse_alg)]
    alg: Algorithm,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    z: Option<usize>,
    #[arg(long = "N")]
    degree: Option<usize>,
    #[arg(long)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    rng: u64,
    #[arg(long)]
    out: PathBuf,
}

fn parse_format(s: &str) -> std::result::Result<GraphFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_alg(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load(args: &GraphArgs) -> Result<CscGraph> {
    io::read_graph_with(&args.graph, args.format, args.undirected)
}

fn graph_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn resolve_node(g: &CscGraph, label: u64) -> Result<usize> {
    match g.labels() {
        Some(labels) => labels
            .binary_search(&label)
            .map_err(|_| Error::InvalidParameter(format!("no node labeled {label}"))),
        None => {
            let c = usize::try_from(label).unwrap_or(usize::MAX);
            g.check_node(c)?;
            Ok(c)
        }
    }
}

fn to_labels(g: &CscGraph, x: &SparseVector) -> SparseVector {
    match g.labels() {
        Some(labels) => x.iter().map(|(i, v)| (labels[i] as usize, v)).collect(),
        None => x.clone(),
    }
}

/// Which solver and parameter one run uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunSpec {
    Tolerance { alg: Algorithm, eps: f64 },
    Truncation { z: usize, degree: usize },
}

impl RunSpec {
    pub fn algorithm(&self) -> Algorithm {
        match *self {
            RunSpec::Tolerance { alg, .. } => alg,
            RunSpec::Truncation { .. } => Algorithm::Expmimv,
        }
    }

    /// `eps=<value>` or `z=<value>`.
    pub fn param(&self) -> String {
        match *self {
            RunSpec::Tolerance { eps, .. } => format!("eps={eps:e}"),
            RunSpec::Truncation { z, .. } => format!("z={z}"),
        }
    }

    pub fn solve(&self, g: &CscGraph, c: usize, opts: &SolveOptions) -> Result<SolveReport> {
        match *self {
            RunSpec::Tolerance {
                alg: Algorithm::Gexpm,
                eps,
            } => gexpm(g, c, eps, opts),
            RunSpec::Tolerance {
                alg: Algorithm::Gexpmq,
                eps,
            } => gexpmq(g, c, eps, opts),
            RunSpec::Tolerance {
                alg: Algorithm::Expmimv,
                ..
            } => Err(Error::InvalidParameter(
                "expmimv takes z and N, not a tolerance".into(),
            )),
            RunSpec::Truncation { z, degree } => expmimv(g, c, degree, z),
        }
    }
}

fn expmimv_degree(degree: Option<usize>, eps: Option<f64>) -> CliResult<usize> {
    match (degree, eps) {
        (Some(d), _) => Ok(d),
        (None, Some(eps)) => Ok(select_degree_exact(THETA * eps)?),
        (None, None) => Err(Failure::Usage(
            "expmimv needs --N (or --eps to derive it)".into(),
        )),
    }
}

fn single_spec(
    alg: Algorithm,
    eps: Option<f64>,
    z: Option<usize>,
    degree: Option<usize>,
) -> CliResult<RunSpec> {
    match alg {
        Algorithm::Expmimv => {
            let z = z.ok_or_else(|| Failure::Usage("expmimv needs --z".into()))?;
            Ok(RunSpec::Truncation {
                z,
                degree: expmimv_degree(degree, eps)?,
            })
        }
        alg => {
            if z.is_some() || degree.is_some() {
                return Err(Failure::Usage(format!("{alg} takes --eps only")));
            }
            let eps = eps.ok_or_else(|| Failure::Usage(format!("{alg} needs --eps")))?;
            Ok(RunSpec::Tolerance { alg, eps })
        }
    }
}

fn cmd_solve(a: SolveArgs) -> CliResult<()> {
    let spec = single_spec(a.alg, a.eps, a.z, a.degree)?;
    let pattern = load(&a.graph)?;
    let c = resolve_node(&pattern, a.col)?;
    let p = pattern.normalize_to_stochastic()?;
    let opts = SolveOptions {
        threshold_rule: if a.loose_thresholds {
            ThresholdRule::ScaledByE
        } else {
            ThresholdRule::Strict
        },
        ..SolveOptions::default()
    };
    let report = spec.solve(&p, c, &opts)?;
    let x = if a.laplacian {
        laplacian_column_from_exp_column(&report.x, pattern.out_degree(), c)?
    } else {
        report.x.clone()
    };
    let (eps, z) = match spec {
        RunSpec::Tolerance { eps, .. } => (Some(eps), None),
        RunSpec::Truncation { z, .. } => (None, Some(z)),
    };
    let meta = SolutionMeta {
        graph: graph_id(&a.graph.graph),
        algorithm: if a.laplacian {
            format!("{}+laplacian", spec.algorithm())
        } else {
            spec.algorithm().to_string()
        },
        eps,
        z,
        degree: report.degree,
        seed: a.col as usize,
    };
    io::write_solution(&to_labels(&pattern, &x), &meta, &a.out)?;
    println!(
        "algorithm={} {} N={} steps={} edge_touches={} effective_matvecs={:.6} wallclock={:.6}s final_tracker={:e}",
        spec.algorithm(),
        spec.param(),
        report.degree,
        report.steps,
        report.edge_touches,
        report.effective_matvecs,
        report.wallclock,
        report.final_tracker,
    );
    Ok(())
}

/// Everything a sweep needs besides the graph.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub graph_id: String,
    pub specs: Vec<RunSpec>,
    pub seed_count: usize,
    pub rng: u64,
    pub k_list: Vec<usize>,
    pub exclusion: Exclusion,
}

/// Seed nodes drawn without replacement; deterministic in `rng`.
pub fn pick_seeds(n: usize, count: usize, rng: u64) -> Result<Vec<usize>> {
    if count > n {
        return Err(Error::InvalidParameter(format!(
            "cannot pick {count} distinct seeds from {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng);
    Ok(index::sample(&mut rng, n, count).into_vec())
}

/// Truth for seed `c`: the dense oracle up to its node cap, otherwise a
/// `gexpmq` solve at [`REFERENCE_EPS`].
pub fn reference_column(p: &CscGraph, c: usize) -> Result<SparseVector> {
    if p.n() <= ORACLE_NODE_CAP {
        Ok(oracle::dense_taylor_oracle(p, c, oracle::default_oracle_degree())?.to_sparse())
    } else {
        let opts = SolveOptions {
            relaxation_cap: Some(usize::MAX),
            ..SolveOptions::default()
        };
        Ok(gexpmq(p, c, REFERENCE_EPS, &opts)?.x)
    }
}

/// Metric rows for one solve against `truth`.
pub fn metric_rows(
    config: &SweepConfig,
    p: &CscGraph,
    c: usize,
    spec: &RunSpec,
    report: &SolveReport,
    truth: &SparseVector,
) -> Vec<MetricRow> {
    let row = |metric: String, value: f64| MetricRow {
        graph: config.graph_id.clone(),
        seed: c,
        algorithm: spec.algorithm().to_string(),
        param: spec.param(),
        metric,
        value,
    };
    let mut rows: Vec<MetricRow> = config
        .k_list
        .iter()
        .map(|&k| {
            let r = eval::precision_at_k(&report.x, truth, k, config.exclusion, p, c);
            row(format!("precision@{k}"), r.precision)
        })
        .collect();
    rows.push(row(
        "one_norm_error".into(),
        eval::one_norm_error(&report.x, truth),
    ));
    rows.push(row("steps".into(), report.steps as f64));
    rows.push(row("edge_touches".into(), report.edge_touches as f64));
    rows.push(row(
        "effective_matvecs".into(),
        eval::work_accounting(report, p),
    ));
    rows.push(row("nnz".into(), report.x.nnz() as f64));
    rows
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))
}

/// Runs the grid. Trials (one per seed) run in parallel; rows come back in
/// seed order, then spec order.
pub fn run_sweep(p: &CscGraph, config: &SweepConfig) -> Result<Vec<MetricRow>> {
    let seeds = pick_seeds(p.n(), config.seed_count, config.rng)?;
    let opts = SolveOptions::default();
    let per_trial: Vec<Result<Vec<MetricRow>>> = thread_pool()?.install(|| {
        seeds
            .par_iter()
            .map(|&c| {
                let truth = reference_column(p, c)?;
                let mut rows = Vec::new();
                for spec in &config.specs {
                    let report = spec.solve(p, c, &opts)?;
                    rows.extend(metric_rows(config, p, c, spec, &report, &truth));
                }
                Ok(rows)
            })
            .collect()
    });
    let mut rows = Vec::new();
    for trial in per_trial {
        rows.extend(trial?);
    }
    Ok(rows)
}

fn cmd_sweep(a: SweepArgs) -> CliResult<()> {
    let mut specs = Vec::new();
    for &alg in &a.algs {
        match alg {
            Algorithm::Expmimv => {
                if a.z_list.is_empty() {
                    return Err(Failure::Usage("expmimv needs --z-list".into()));
                }
                let degree = expmimv_degree(a.degree, None)?;
                specs.extend(a.z_list.iter().map(|&z| RunSpec::Truncation { z, degree }));
            }
            alg => {
                if a.eps_list.is_empty() {
                    return Err(Failure::Usage(format!("{alg} needs --eps-list")));
                }
                specs.extend(
                    a.eps_list
                        .iter()
                        .map(|&eps| RunSpec::Tolerance { alg, eps }),
                );
            }
        }
    }
    let pattern = load(&a.graph)?;
    if pattern.labels().is_some() {
        return Err(Failure::Usage(
            "sweep needs dense 0-based node ids; convert the graph to SMAT first".into(),
        ));
    }
    let p = pattern.normalize_to_stochastic()?;
    let config = SweepConfig {
        graph_id: graph_id(&a.graph.graph),
        specs,
        seed_count: a.seeds,
        rng: a.rng,
        k_list: a.k_list,
        exclusion: if a.exclude_neighbors {
            Exclusion::SeedAndNeighbors
        } else {
            Exclusion::None
        },
    };
    let rows = run_sweep(&p, &config)?;
    eval::write_csv(File::create(&a.out)?, &rows)?;
    Ok(())
}

fn cmd_gen(a: GenArgs) -> CliResult<()> {
    let g = forest_fire(ForestFireConfig {
        n_target: a.n,
        p_burn: a.p,
        rng_seed: a.rng,
    })?;
    io::write_smat_file(&g, &a.out)?;
    let stats = g.degree_stats();
    println!(
        "n={} nnz={} d_max={} d_min={} edge_density={:.4}",
        g.n(),
        g.nnz(),
        stats.d_max,
        stats.d_min,
        stats.edge_density
    );
    Ok(())
}

fn cmd_oracle(a: OracleArgs) -> CliResult<()> {
    let pattern = load(&a.graph)?;
    let c = resolve_node(&pattern, a.col)?;
    let p = pattern.normalize_to_stochastic()?;
    let degree = a.degree.unwrap_or_else(oracle::default_oracle_degree);
    let x = oracle::dense_taylor_oracle(&p, c, degree)?.to_sparse();
    let meta = SolutionMeta {
        graph: graph_id(&a.graph.graph),
        algorithm: "oracle".into(),
        eps: None,
        z: None,
        degree,
        seed: a.col as usize,
    };
    io::write_solution(&to_labels(&pattern, &x), &meta, &a.out)?;
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> CliResult<()> {
    let spec = single_spec(a.alg, a.eps, a.z, a.degree)?;
    let p = load(&a.graph)?.normalize_to_stochastic()?;
    let seeds = pick_seeds(p.n(), a.seeds, a.rng)?;
    let id = graph_id(&a.graph.graph);
    let opts = SolveOptions::default();
    let mut rows = Vec::new();
    // sequential so timings do not contend
    for c in seeds {
        let report = spec.solve(&p, c, &opts)?;
        let row = |metric: &str, value: f64| MetricRow {
            graph: id.clone(),
            seed: c,
            algorithm: spec.algorithm().to_string(),
            param: spec.param(),
            metric: metric.into(),
            value,
        };
        rows.push(row("wallclock", report.wallclock));
        rows.push(row("edge_touches", report.edge_touches as f64));
        rows.push(row("effective_matvecs", report.effective_matvecs));
    }
    eval::write_csv(File::create(&a.out)?, &rows)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["expgraph", "solve", "--bogus"]), 2);
        assert_eq!(run(["expgraph"]), 2);
        assert_eq!(
            run(
                [
                    "expgraph", "solve", "--graph", "g", "--col", "0", "--alg", "nope", "--out",
                    "x"
                ]
            ),
            2
        );
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["expgraph", "--help"]), 0);
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            single_spec(Algorithm::Gexpm, None, None, None),
            Err(Failure::Usage(_))
        ));
        assert!(matches!(
            single_spec(Algorithm::Gexpm, Some(1e-4), Some(3), None),
            Err(Failure::Usage(_))
        ));
        assert!(matches!(
            single_spec(Algorithm::Expmimv, None, Some(3), None),
            Err(Failure::Usage(_))
        ));
        assert!(matches!(
            single_spec(Algorithm::Expmimv, Some(1e-4), Some(3), None),
            Ok(RunSpec::Truncation { z: 3, degree: 7 })
        ));
    }

    #[test]
    fn param_labels() {
        let s = RunSpec::Tolerance {
            alg: Algorithm::Gexpmq,
            eps: 1e-4,
        };
        assert_eq!(s.param(), "eps=1e-4");
        assert_eq!(RunSpec::Truncation { z: 50, degree: 8 }.param(), "z=50");
    }

    #[test]
    fn seeds_are_distinct_and_deterministic() {
        let a = pick_seeds(100, 30, 5).unwrap();
        assert_eq!(a, pick_seeds(100, 30, 5).unwrap());
        let mut b = a.clone();
        b.sort_unstable();
        b.dedup();
        assert_eq!(b.len(), 30);
        assert!(pick_seeds(3, 4, 0).is_err());
    }
}
