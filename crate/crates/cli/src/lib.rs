//! Command implementations behind the `marketnet` binary.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use marketnet_core::ingestion::{build_truth, load_prices, to_returns};
use marketnet_core::montecarlo::{CenterMode, ThresholdMode};
use marketnet_core::{
    degree_distribution, edge_histogram, fixtures, market_graph, max_clique, max_independent_set,
    maximum_spanning_tree, pearson_true, summarize_flatness, tree_topology, BinSpec, Characteristic, CurvePair,
    DependenceMatrix, Error, Experiment, ExperimentConfig, LambdaSource,
};

#[derive(Debug, Parser)]
#[command(
    name = "marketnet",
    version,
    about = "Stability of market network identification under elliptical laws"
)]
pub struct Cli {
    /// Master seed; overrides the experiment config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads (default: available parallelism). Output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Use an embedded matrix (e.g. `uk2010`) instead of an input file.
    #[arg(long, global = true)]
    pub fixture: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a truth matrix from a price CSV (or re-emit a fixture).
    Truth(TruthArgs),
    /// Extract one true characteristic from a matrix CSV.
    Structures(StructuresArgs),
    /// Run a stability experiment described by a JSON config.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct TruthArgs {
    /// Price CSV: header of tickers, one row per trading day.
    pub prices: Option<PathBuf>,
    /// Output matrix CSV.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureKind {
    Hist,
    Degrees,
    Clique,
    Mis,
    Mst,
    MstTopology,
}

impl StructureKind {
    fn needs_threshold(self) -> bool {
        matches!(
            self,
            StructureKind::Degrees | StructureKind::Clique | StructureKind::Mis
        )
    }

    fn label(self) -> &'static str {
        match self {
            StructureKind::Hist => "hist",
            StructureKind::Degrees => "degrees",
            StructureKind::Clique => "clique",
            StructureKind::Mis => "mis",
            StructureKind::Mst => "mst",
            StructureKind::MstTopology => "mst-topology",
        }
    }
}

#[derive(Debug, Args)]
pub struct StructuresArgs {
    /// Matrix CSV (kind taken from its `# kind=` header, Pearson by default).
    pub matrix: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: StructureKind,
    /// Market-graph threshold on the matrix's own scale.
    #[arg(long)]
    pub gamma0: Option<f64>,
    /// Output JSON.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CenterArg {
    TrueMu,
    SampleMean,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Experiment config JSON.
    pub config: PathBuf,
    /// Output curve CSV; a `.config.json` sidecar is written next to it.
    #[arg(short, long)]
    pub out: PathBuf,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub replications: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub gamma_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub thresholds: Option<Vec<f64>>,
    #[arg(long)]
    pub nu: Option<u32>,
    #[arg(long, value_enum)]
    pub center_mode: Option<CenterArg>,
    /// Apply thresholds unmapped to the sign network.
    #[arg(long)]
    pub raw_thresholds: bool,
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl CliError {
    /// 2 for usage and input-format problems, 1 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::NoSuchInput(_)
                | Error::Format { .. }
                | Error::BadPrice { .. }
                | Error::DuplicateTicker(_)
                | Error::UnknownFixture(_)
                | Error::Config(_)
                | Error::Csv(_) => 2,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Truth(args) => cmd_truth(&cli, args),
        Command::Structures(args) => cmd_structures(&cli, args),
        Command::Experiment(args) => cmd_experiment(&cli, args),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

pub fn cmd_truth(cli: &Cli, args: &TruthArgs) -> CliResult<()> {
    let (matrix, epsilon, text) = match (&cli.fixture, &args.prices) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --fixture or a price file, not both".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("a price file or --fixture is required".into())),
        (Some(id), None) => {
            // fixtures are already truth matrices; re-emit them verbatim
            let text = fixtures::fixture_csv(id)?;
            let matrix = DependenceMatrix::parse_csv(text)?;
            (matrix, None, text.to_string())
        }
        (None, Some(path)) => {
            let prices = load_prices(path)?;
            let returns = to_returns(&prices)?;
            let truth = build_truth(&returns, Some(prices.tickers()))?;
            let text = truth.matrix.to_csv_string();
            (truth.matrix, truth.repair_epsilon, text)
        }
    };
    write_file(&args.out, &text)?;
    println!("N = {}", matrix.dim());
    if let Some((lo, hi)) = matrix.off_diagonal_range() {
        println!("off-diagonal min = {lo}, max = {hi}");
    }
    if let Some(eps) = epsilon {
        println!("positive-definite repair applied: epsilon = {eps:e}");
    }
    Ok(())
}

fn load_matrix(cli: &Cli, path: Option<&Path>) -> CliResult<DependenceMatrix> {
    match (&cli.fixture, path) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either --fixture or a matrix file, not both".into(),
        )),
        (None, None) => Err(CliError::Usage("a matrix file or --fixture is required".into())),
        (Some(id), None) => Ok(pearson_true(&fixtures::fixture(id)?)?),
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| match e.kind() {
                std::io::ErrorKind::NotFound => CliError::Core(Error::NoSuchInput(p.to_path_buf())),
                _ => CliError::from(e),
            })?;
            Ok(DependenceMatrix::parse_csv(&text)?)
        }
    }
}

pub fn cmd_structures(cli: &Cli, args: &StructuresArgs) -> CliResult<()> {
    let w = load_matrix(cli, args.matrix.as_deref())?;
    let gamma0 = match (args.kind.needs_threshold(), args.gamma0) {
        (true, None) => {
            return Err(CliError::Usage(format!(
                "--gamma0 is required for {}",
                args.kind.label()
            )))
        }
        (true, Some(t)) => {
            let (lo, hi) = w.kind().range();
            if !(lo..=hi).contains(&t) {
                return Err(CliError::Usage(format!("--gamma0 {t} outside [{lo}, {hi}]")));
            }
            Some(t)
        }
        (false, _) => None,
    };
    let value = match args.kind {
        StructureKind::Hist => to_value(&edge_histogram(&w, &BinSpec::default_for(w.kind()))?),
        StructureKind::Degrees => {
            let g = market_graph(&w, gamma0.unwrap_or_default());
            json!({ "counts": degree_distribution(&g).counts(), "graph": g })
        }
        StructureKind::Clique => to_value(&max_clique(&market_graph(&w, gamma0.unwrap_or_default()))),
        StructureKind::Mis => to_value(&max_independent_set(&market_graph(&w, gamma0.unwrap_or_default()))),
        StructureKind::Mst => to_value(&maximum_spanning_tree(&w)),
        StructureKind::MstTopology => {
            let tree = maximum_spanning_tree(&w);
            json!({ "degrees": tree_topology(&tree).degrees(), "tree": tree })
        }
    };
    let doc = json!({
        "structure": args.kind.label(),
        "measure": w.kind().label(),
        "n_vertices": w.dim(),
        "gamma0": gamma0,
        "value": value,
    });
    let text = serde_json::to_string_pretty(&doc).expect("structures serialize") + "\n";
    write_file(&args.out, &text)?;
    println!("wrote {} ({} vertices)", args.out.display(), w.dim());
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("structures serialize")
}

/// Reads the config file and applies global and per-command overrides.
pub fn resolve_config(cli: &Cli, args: &ExperimentArgs) -> CliResult<ExperimentConfig> {
    let text = fs::read_to_string(&args.config).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::Core(Error::NoSuchInput(args.config.clone())),
        _ => CliError::from(e),
    })?;
    let mut config: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", args.config.display())))?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(id) = &cli.fixture {
        config.lambda_source = LambdaSource::Fixture(id.clone());
    } else if let LambdaSource::File(p) = &config.lambda_source {
        // relative matrix paths are resolved against the config's directory
        if p.is_relative() {
            if let Some(dir) = args.config.parent() {
                config.lambda_source = LambdaSource::File(dir.join(p));
            }
        }
    }
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(r) = args.replications {
        config.replications = r;
    }
    if let Some(g) = &args.gamma_grid {
        config.gamma_grid = g.clone();
    }
    if let Some(t) = &args.thresholds {
        config.thresholds = t.clone();
    }
    if let Some(nu) = args.nu {
        config.nu = nu;
    }
    if let Some(c) = args.center_mode {
        config.center_mode = match c {
            CenterArg::TrueMu => CenterMode::TrueMu,
            CenterArg::SampleMean => CenterMode::SampleMean,
        };
    }
    if args.raw_thresholds {
        config.threshold_mode = ThresholdMode::Raw;
    }
    Ok(config)
}

/// Output paths for each threshold run: the given path when there is one run,
/// otherwise `<stem>_t<threshold>.csv` next to it.
pub fn output_paths(out: &Path, runs: &[Option<f64>]) -> Vec<PathBuf> {
    if runs.len() <= 1 {
        return vec![out.to_path_buf()];
    }
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("curves");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    runs.iter()
        .map(|t| out.with_file_name(format!("{stem}_t{}.{ext}", t.unwrap_or_default())))
        .collect()
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("config.json")
}

pub fn cmd_experiment(cli: &Cli, args: &ExperimentArgs) -> CliResult<()> {
    let config = resolve_config(cli, args)?;
    let experiment = Experiment::new(config)?;
    for w in experiment.warnings() {
        eprintln!("warning: {w}");
    }
    let runs = experiment.config().threshold_runs();
    let paths = output_paths(&args.out, &runs);
    for (threshold, path) in runs.into_iter().zip(paths) {
        let started = Instant::now();
        let pair = experiment.run(threshold, cli.workers)?;
        write_file(&path, &pair.to_csv_string())?;
        write_file(&sidecar_path(&path), &sidecar(&experiment, &pair))?;
        println!(
            "wrote {} ({} rows) in {:.2?}",
            path.display(),
            pair.pearson.points.len() + pair.sign.points.len(),
            started.elapsed()
        );
        for curve in pair.curves() {
            match summarize_flatness(curve) {
                Ok(f) => match f.normalized {
                    Some(norm) => println!(
                        "  {:<7} flatness: {:.4} (normalized {:.4})",
                        curve.measure_kind, f.absolute, norm
                    ),
                    None => println!("  {:<7} flatness: {:.4}", curve.measure_kind, f.absolute),
                },
                Err(_) => println!("  {:<7} flatness: n/a (single gamma)", curve.measure_kind),
            }
        }
        if experiment.config().characteristic == Characteristic::MstTopology {
            println!("  note: mst_topology values are match probabilities (higher is better)");
        }
    }
    Ok(())
}

fn sidecar(experiment: &Experiment, pair: &CurvePair) -> String {
    let doc = json!({
        "config": experiment.config(),
        "n_vertices": experiment.dim(),
        "threshold": pair.pearson.threshold,
        "sign_threshold": pair.sign.threshold,
        "higher_is_better": experiment.config().characteristic == Characteristic::MstTopology,
    });
    serde_json::to_string_pretty(&doc).expect("config serializes") + "\n"
}
