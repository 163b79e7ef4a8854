//! The `demst` command line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 verification
//! failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::Rng;

use crate::decompose::{
    decomposed_mst, default_partitions, make_partition, redundancy_factor, MergeStrategy,
    PartitionStrategy,
};
use crate::dendrogram::mst_to_dendrogram;
use crate::error::{Error, Result};
use crate::geometry::{Metric, PointSet};
use crate::graph::EdgeList;
use crate::instance::{generate_instance, portable_rng, Distribution};
use crate::io::{self, PointFormat, RunParams};
use crate::oracle::{check_substructure, oracle_mst_capped, DEFAULT_ORACLE_CAP};
use crate::RunStats;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "demst",
    version,
    about = "Exact MSTs of complete graphs over vector sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the MST and write it as edge TSV.
    Mst(MstArgs),
    /// Check the decomposed MST against the brute-force oracle.
    Verify(VerifyArgs),
    /// Measure work and communication counters over several block counts.
    Bench(BenchArgs),
    /// Compute the MST and its single-linkage dendrogram.
    Dendrogram(DendrogramArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum StrategyArg {
    Contiguous,
    Shuffled,
}

#[derive(Debug, Args)]
struct MstArgs {
    #[arg(long)]
    input: PathBuf,
    /// csv or vecbin; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<PointFormat>,
    #[arg(long, default_value = "euclidean")]
    metric: Metric,
    /// Number of blocks. Defaults to ceil(sqrt(2 * workers)), capped at the
    /// point count.
    #[arg(long)]
    partitions: Option<usize>,
    #[arg(long, value_enum, default_value = "contiguous")]
    partition_strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "gather")]
    merge: MergeStrategy,
    /// Defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Edge TSV destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    mst: MstArgs,
    /// Random subsets to run the substructure check on.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value = "euclidean")]
    metric: Metric,
    #[arg(long, default_value = "1,2,4,8")]
    partitions_list: String,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "gather")]
    merge: MergeStrategy,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DendrogramArgs {
    #[command(flatten)]
    mst: MstArgs,
    #[arg(long)]
    dendro_output: PathBuf,
}

/// Parses `args` (including the program name) and runs the command.
/// Normal output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Mst(a) => cmd_mst(&a, stdout).map(|_| EXIT_OK),
        Command::Verify(a) => cmd_verify(&a, stdout),
        Command::Bench(a) => cmd_bench(&a, stdout).map(|_| EXIT_OK),
        Command::Dendrogram(a) => cmd_dendrogram(&a, stdout).map(|_| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "demst: {e}");
            match e {
                Error::Usage(_) => EXIT_USAGE,
                _ => EXIT_DATA,
            }
        }
    }
}

fn workers_or_default(w: Option<usize>) -> Result<usize> {
    match w {
        Some(0) => Err(Error::usage("--workers must be positive")),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

struct Computed {
    points: PointSet,
    tree: EdgeList,
    stats: RunStats,
    params: RunParams,
}

fn compute(a: &MstArgs) -> Result<Computed> {
    let workers = workers_or_default(a.workers)?;
    if a.partitions == Some(0) {
        return Err(Error::usage("--partitions must be at least 1"));
    }
    let format = a.format.unwrap_or_else(|| PointFormat::from_path(&a.input));
    let points = io::read_points(&a.input, format)?;
    let n = points.len();
    let k = match a.partitions {
        Some(k) if k > n => {
            return Err(Error::usage(format!(
                "--partitions {k} exceeds the number of points ({n})"
            )))
        }
        Some(k) => k,
        None => default_partitions(workers).min(n).max(1),
    };
    let strategy = match a.partition_strategy {
        StrategyArg::Contiguous => PartitionStrategy::Contiguous,
        StrategyArg::Shuffled => PartitionStrategy::Shuffled(a.seed),
    };
    let (tree, stats) = if n == 0 {
        (
            EdgeList::default(),
            RunStats {
                merge_strategy: a.merge,
                ..RunStats::default()
            },
        )
    } else {
        let part = make_partition(n, k, strategy)?;
        decomposed_mst(&points, a.metric, &part, a.merge, workers)?
    };
    let params = RunParams {
        n,
        d: points.dim(),
        k,
        metric: a.metric,
        workers,
        seed: a.seed,
    };
    Ok(Computed {
        points,
        tree,
        stats,
        params,
    })
}

fn finish(a: &MstArgs, c: &Computed, stdout: &mut dyn Write) -> Result<()> {
    let mut buf = Vec::new();
    io::format_edges(&c.tree, &mut buf)?;
    emit(a.output.as_deref(), &buf, stdout)?;
    if let Some(path) = &a.stats {
        io::write_stats(&c.stats, &c.params, path)?;
    }
    Ok(())
}

fn cmd_mst(a: &MstArgs, stdout: &mut dyn Write) -> Result<()> {
    let c = compute(a)?;
    finish(a, &c, stdout)
}

fn cmd_dendrogram(a: &DendrogramArgs, stdout: &mut dyn Write) -> Result<()> {
    let c = compute(&a.mst)?;
    let d = mst_to_dendrogram(&c.tree, c.points.len())?;
    finish(&a.mst, &c, stdout)?;
    io::write_dendrogram(&d, &a.dendro_output)
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let c = compute(&a.mst)?;
    let metric = a.mst.metric;
    let oracle = oracle_mst_capped(&c.points, metric, a.oracle_cap)?;
    let mut failures = 0usize;
    let mut report = |ok: bool, what: String, out: &mut dyn Write| -> Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {what}", if ok { "PASS" } else { "FAIL" })?;
        Ok(())
    };

    report(
        c.tree.edges == oracle.edges,
        format!(
            "decomposed MST equals oracle MST (n={}, k={}, merge={})",
            c.params.n, c.params.k, a.mst.merge
        ),
        stdout,
    )?;

    let n = c.points.len();
    let mut rng = portable_rng(a.mst.seed);
    for t in 0..a.trials {
        let size = rng.gen_range(0..=n);
        let subset = sample(&mut rng, n, size).into_vec();
        let ok = check_substructure(&c.points, metric, &subset)?;
        report(ok, format!("substructure trial {t} (|S|={size})"), stdout)?;
    }
    finish(&a.mst, &c, &mut std::io::sink())?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY })
}

fn parse_partitions_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let k: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::usage(format!("bad entry '{t}' in --partitions-list")))?;
            if k == 0 {
                return Err(Error::usage("--partitions-list entries must be at least 1"));
            }
            Ok(k)
        })
        .collect()
}

fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write) -> Result<()> {
    let workers = workers_or_default(a.workers)?;
    let ks = parse_partitions_list(&a.partitions_list)?;
    if a.n < 2 {
        return Err(Error::usage("--n must be at least 2"));
    }
    let points = generate_instance(a.seed, a.n, a.dim, Distribution::UniformCube)?;
    let mut buf = Vec::new();
    writeln!(
        buf,
        "k\ttasks\tdistance_evals\tredundancy_factor\tedges_gathered\twall_time_ms"
    )?;
    for k in ks {
        let part = make_partition(a.n, k, PartitionStrategy::Contiguous)?;
        let (_, s) = decomposed_mst(&points, a.metric, &part, a.merge, workers)?;
        writeln!(
            buf,
            "{k}\t{}\t{}\t{}\t{}\t{}",
            s.tasks_executed,
            s.distance_evals,
            redundancy_factor(&s, a.n),
            s.edges_gathered,
            s.wall_time.as_secs_f64() * 1e3
        )?;
    }
    emit(a.output.as_deref(), &buf, stdout)
}
