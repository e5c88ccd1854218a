//! `htcut` — partition k-uniform hypergraphs by hyperedge scores derived
//! from the Laplacian tensor's minimum positive eigenpair, benchmark the
//! method on generated corpora, and verify its structural guarantees.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use htcut::experiment::{
    cockroach_csv, cockroach_sweep, pi_histogram_csv, records_csv, run_batch, summarize,
};
use htcut::{
    eigen_json, emit, laplacian_kind, load_hypergraph, partition_json, resolve_seed, verify,
    CliError, SolverOverrides,
};
use htcut_eigen::{fiedler_of, solve};
use htcut_gen::{FixtureName, GenSpec};
use htcut_partition::{oracle_min_ratio_cut, score_partition, sign_partition};
use htcut_tensor::LaplacianKind;

/// Histogram resolution for benchmark improvement distributions.
const HISTOGRAM_BINS: usize = 20;

/// Verification suites cap restarts lower than the solver default; the
/// corpora are small and the suites solve many instances.
const VERIFY_RESTARTS: usize = 24;

#[derive(Parser)]
#[command(
    name = "htcut",
    version,
    about = "Spectral partitioning of k-uniform hypergraphs via Laplacian tensor eigenpairs"
)]
struct Cli {
    /// Worker threads for batched corpora; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition a hypergraph and write the result as JSON.
    Partition(PartitionArgs),
    /// Solve the eigenproblem and dump the minimum positive eigenpair.
    Eigen(EigenArgs),
    /// Generate an instance of a hypergraph family in the text format.
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Sweep experiment corpora and write per-instance records.
    #[command(subcommand)]
    Bench(BenchCmd),
    /// Run seeded property suites; any violation exits with code 3.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Remove hyperedges by descending score until the target splits off.
    Score,
    /// Split on the signs of the eigenvector (always two clusters).
    Sign,
    /// Exhaustive minimum-ratio-cut search (small instances only).
    Oracle,
}

#[derive(Args, Clone, Copy)]
struct SolverFlags {
    /// Seed for solver restarts and corpus generation; defaults to
    /// $HTCUT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Eigensolver restart count.
    #[arg(long)]
    restarts: Option<usize>,
    /// Iteration cap per restart walk.
    #[arg(long)]
    max_iters: Option<usize>,
    /// Walk convergence tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

impl SolverFlags {
    fn overrides(self) -> SolverOverrides {
        SolverOverrides {
            seed: self.seed,
            restarts: self.restarts,
            max_iters: self.max_iters,
            tol: self.tol,
        }
    }
}

#[derive(Args)]
struct PartitionArgs {
    /// Input hypergraph in the text format.
    #[arg(short, long)]
    input: PathBuf,
    /// Number of clusters to produce.
    #[arg(short, long, default_value_t = 2)]
    p: usize,
    /// Partitioning method.
    #[arg(long, value_enum, default_value_t = MethodArg::Score)]
    method: MethodArg,
    /// Use the degree-normalized Laplacian (requires all degrees positive).
    #[arg(long)]
    normalized: bool,
    #[command(flatten)]
    solver: SolverFlags,
    /// Output path for the JSON result; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EigenArgs {
    /// Input hypergraph in the text format.
    #[arg(short, long)]
    input: PathBuf,
    /// Use the degree-normalized Laplacian.
    #[arg(long)]
    normalized: bool,
    #[command(flatten)]
    solver: SolverFlags,
    /// Output path for the JSON dump; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Pairwise random graph: each node pair is an edge with probability p.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: Option<u64>,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Two-block planted-partition graph (within-block p, across q).
    Sbm {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Two-block k-uniform hypergraph block model: within-block k-subsets
    /// kept with probability p, all other k-subsets with q.
    Hysbm {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The 4t-node ladder graph with two bare antennae.
    Cockroach {
        #[arg(long)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A named hand-checked fixture: three_edge_chain, twelve_node,
    /// four_uniform_triple, same_graph_pair_a, or same_graph_pair_b.
    Fixture {
        #[arg(long)]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Ladder sweep: the sign method's ratio cut must be exactly 1 and the
    /// score method's exactly 2/t on every row.
    Cockroach {
        #[arg(long, default_value_t = 3)]
        t_min: usize,
        #[arg(long, default_value_t = 20)]
        t_max: usize,
        #[command(flatten)]
        solver: SolverFlags,
        /// CSV output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pairwise random graphs at one edge probability.
    Er {
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[command(flatten)]
        solver: SolverFlags,
        /// Per-instance records CSV path.
        #[arg(short, long)]
        output: PathBuf,
        /// Improvement histogram CSV path; defaults to the records path
        /// with a .hist.csv suffix.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Two-block planted-partition graphs.
    Sbm {
        #[arg(long, default_value_t = 15)]
        n1: usize,
        #[arg(long, default_value_t = 15)]
        n2: usize,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 0.05)]
        q: f64,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Two-block k-uniform hypergraphs.
    Hysbm {
        #[arg(long, default_value_t = 10)]
        n1: usize,
        #[arg(long, default_value_t = 10)]
        n2: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 0.05)]
        p: f64,
        #[arg(long, default_value_t = 0.0003)]
        q: f64,
        #[arg(long, default_value_t = 30)]
        instances: usize,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Tensor contraction identities against a brute-force reduction.
    Contraction {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Where a failing instance is written.
        #[arg(long, default_value = "htcut-verify-contraction-failure.hg")]
        dump: PathBuf,
    },
    /// Spectral bound against brute-forced conductance (even k only).
    Bound {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, default_value = "htcut-verify-bound-failure.hg")]
        dump: PathBuf,
    },
    /// The flat vector is an exact zero eigenpair on every corpus instance.
    #[command(name = "flat-pair", alias = "lemma1")]
    FlatPair {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "htcut-verify-flat-pair-failure.hg")]
        dump: PathBuf,
    },
    /// The exhaustive bipartition oracle is never beaten by the score
    /// method.
    Oracle {
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long, default_value = "htcut-verify-oracle-failure.hg")]
        dump: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().ok();
    }
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err}");
        if let CliError::Verification { dump: Some(path), .. } = &err {
            eprintln!("failing instance written to {}", path.display());
        }
        std::process::exit(err.exit_code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Partition(args) => cmd_partition(args),
        Command::Eigen(args) => cmd_eigen(args),
        Command::Generate(cmd) => cmd_generate(cmd),
        Command::Bench(cmd) => cmd_bench(cmd),
        Command::Verify(cmd) => cmd_verify(cmd),
    }
}

fn cmd_partition(args: PartitionArgs) -> Result<(), CliError> {
    let h = load_hypergraph(&args.input)?;
    let kind = laplacian_kind(args.normalized);
    let cfg = args.solver.overrides().to_config()?;
    let result = match args.method {
        MethodArg::Score => score_partition(&h, args.p, kind, &cfg),
        MethodArg::Sign => {
            if args.p != 2 {
                return Err(CliError::Usage(format!(
                    "the sign method always yields 2 clusters; got -p {}",
                    args.p
                )));
            }
            sign_partition(&h, kind, &cfg)
        }
        MethodArg::Oracle => oracle_min_ratio_cut(&h, args.p),
    }
    .map_err(CliError::from_partition)?;
    let doc = partition_json(&result, None);
    emit(args.output.as_deref(), &format!("{}\n", pretty(&doc)))
}

fn cmd_eigen(args: EigenArgs) -> Result<(), CliError> {
    let h = load_hypergraph(&args.input)?;
    let kind = laplacian_kind(args.normalized);
    let cfg = args.solver.overrides().to_config()?;
    let solution = solve(&h, kind, &cfg).map_err(CliError::from_eigen)?;
    let pair = fiedler_of(&solution, &cfg).map_err(CliError::from_eigen)?;
    let agreeing = solution.restarts_agreeing(pair.lambda, cfg.cluster_tol);
    let doc = eigen_json(&pair, agreeing);
    emit(args.output.as_deref(), &format!("{}\n", pretty(&doc)))
}

fn cmd_generate(cmd: GenerateCmd) -> Result<(), CliError> {
    let (spec, output) = match cmd {
        GenerateCmd::Er { n, p, seed, output } => {
            (GenSpec::ErdosRenyi { n, p, seed: resolve_seed(seed)? }, output)
        }
        GenerateCmd::Sbm { n1, n2, p, q, seed, output } => {
            (GenSpec::GraphSbm { n1, n2, p, q, seed: resolve_seed(seed)? }, output)
        }
        GenerateCmd::Hysbm { n1, n2, k, p, q, seed, output } => {
            (GenSpec::HypergraphSbm { n1, n2, k, p, q, seed: resolve_seed(seed)? }, output)
        }
        GenerateCmd::Cockroach { t, output } => (GenSpec::Cockroach { t }, output),
        GenerateCmd::Fixture { name, output } => {
            let name: FixtureName =
                name.parse().map_err(|e: htcut_gen::GenError| CliError::Usage(e.to_string()))?;
            (GenSpec::Fixture { name }, output)
        }
    };
    let h = spec.generate().map_err(|e| CliError::Usage(e.to_string()))?;
    emit(output.as_deref(), &h.to_text())
}

fn cmd_bench(cmd: BenchCmd) -> Result<(), CliError> {
    match cmd {
        BenchCmd::Cockroach { t_min, t_max, solver, output } => {
            let cfg = solver.overrides().to_config()?;
            let (rows, violations) = cockroach_sweep(t_min, t_max, &cfg)?;
            emit(output.as_deref(), &cockroach_csv(&rows))?;
            if violations.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification { message: violations.join("\n"), dump: None })
            }
        }
        BenchCmd::Er { n, p, instances, solver, output, histogram } => {
            let base = resolve_seed(solver.seed)?;
            let specs: Vec<GenSpec> = (0..instances)
                .map(|i| GenSpec::ErdosRenyi { n, p, seed: base.wrapping_add(i as u64) })
                .collect();
            bench_records(&specs, solver, output, histogram)
        }
        BenchCmd::Sbm { n1, n2, p, q, instances, solver, output, histogram } => {
            let base = resolve_seed(solver.seed)?;
            let specs: Vec<GenSpec> = (0..instances)
                .map(|i| GenSpec::GraphSbm { n1, n2, p, q, seed: base.wrapping_add(i as u64) })
                .collect();
            bench_records(&specs, solver, output, histogram)
        }
        BenchCmd::Hysbm { n1, n2, k, p, q, instances, solver, output, histogram } => {
            let base = resolve_seed(solver.seed)?;
            let specs: Vec<GenSpec> = (0..instances)
                .map(|i| GenSpec::HypergraphSbm {
                    n1,
                    n2,
                    k,
                    p,
                    q,
                    seed: base.wrapping_add(i as u64),
                })
                .collect();
            bench_records(&specs, solver, output, histogram)
        }
    }
}

/// Shared tail of the corpus benches: run the batch, write the records and
/// histogram files, and print a digest.
fn bench_records(
    specs: &[GenSpec],
    solver: SolverFlags,
    output: PathBuf,
    histogram: Option<PathBuf>,
) -> Result<(), CliError> {
    let cfg = solver.overrides().to_config()?;
    let records = run_batch(specs, LaplacianKind::Unnormalized, &cfg)?;
    emit(Some(&output), &records_csv(&records))?;
    let hist_path = histogram.unwrap_or_else(|| default_histogram_path(&output));
    emit(Some(&hist_path), &pi_histogram_csv(&records, HISTOGRAM_BINS))?;
    println!(
        "wrote {} records to {} and the histogram to {}",
        records.len(),
        output.display(),
        hist_path.display()
    );
    print!("{}", summarize(&records));
    Ok(())
}

fn default_histogram_path(records: &Path) -> PathBuf {
    let stem = records
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("records");
    records.with_file_name(format!("{stem}.hist.csv"))
}

fn cmd_verify(cmd: VerifyCmd) -> Result<(), CliError> {
    match cmd {
        VerifyCmd::Contraction { trials, seed, dump } => {
            let report = verify::contraction(trials, resolve_seed(seed)?);
            verify::finish(report, &dump)
        }
        VerifyCmd::Bound { k, trials, solver, dump } => {
            let cfg = verify_config(solver)?;
            let report = verify::bound(k, trials, cfg.seed, &cfg)?;
            verify::finish(report, &dump)
        }
        VerifyCmd::FlatPair { trials, seed, dump } => {
            let report = verify::flat_pair(trials, resolve_seed(seed)?);
            verify::finish(report, &dump)
        }
        VerifyCmd::Oracle { trials, solver, dump } => {
            let cfg = verify_config(solver)?;
            let report = verify::oracle(trials, cfg.seed, &cfg)?;
            verify::finish(report, &dump)
        }
    }
}

/// Verification corpora solve many small instances; cap restarts unless
/// the caller asks for more.
fn verify_config(solver: SolverFlags) -> Result<htcut_eigen::SolverConfig, CliError> {
    let mut overrides = solver.overrides();
    if overrides.restarts.is_none() {
        overrides.restarts = Some(VERIFY_RESTARTS);
    }
    overrides.to_config()
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("finite JSON values always render")
}
