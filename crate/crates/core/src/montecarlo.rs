//! Monte-Carlo stability experiments.
//!
//! For every mixture weight on the grid and every replication, one sample is
//! drawn and both the Pearson and the sign network are estimated from it. The
//! chosen characteristic is extracted from each estimate and compared with the
//! true characteristic; per-weight averages form the stability curves.
//!
//! Replication `r` at grid index `g` always uses ChaCha8 stream
//! `(g << 32) | r` of the master seed, so results do not depend on how the
//! work is scheduled.

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divergence::{degree_divergence, histogram_divergence, topology_match, vertex_set_divergence};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::matrix::SquareMatrix;
use crate::measures::{
    arcsine_map, pearson_sample, pearson_true, sign_sample, sign_true, DependenceMatrix, MeasureKind,
};
use crate::sampler::MixtureModel;
use crate::structures::{
    degree_distribution, edge_histogram, market_graph, max_clique, max_independent_set, maximum_spanning_tree,
    tree_topology, BinSpec, DegreeDistribution, EdgeWeightHistogram, TreeTopology, VertexSet,
};

/// Default truth size for spanning-tree experiments.
pub const MST_DEFAULT_DIM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    Histogram,
    DegreeDistribution,
    MaxClique,
    MaxIndependentSet,
    MstTopology,
}

impl Characteristic {
    pub fn label(self) -> &'static str {
        match self {
            Characteristic::Histogram => "histogram",
            Characteristic::DegreeDistribution => "degree_distribution",
            Characteristic::MaxClique => "max_clique",
            Characteristic::MaxIndependentSet => "max_independent_set",
            Characteristic::MstTopology => "mst_topology",
        }
    }

    pub fn needs_threshold(self) -> bool {
        matches!(
            self,
            Characteristic::DegreeDistribution | Characteristic::MaxClique | Characteristic::MaxIndependentSet
        )
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterMode {
    /// Center sign statistics at the model location.
    #[default]
    TrueMu,
    /// Center at each variable's sample mean.
    SampleMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMode {
    /// Thresholds are on the Pearson scale; the sign network uses the
    /// arcsine image so both true graphs coincide.
    #[default]
    Mapped,
    /// The same raw value thresholds both networks.
    Raw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaSource {
    Fixture(String),
    File(PathBuf),
}

impl LambdaSource {
    pub fn load(&self) -> Result<SquareMatrix> {
        match self {
            LambdaSource::Fixture(id) => fixtures::fixture(id),
            LambdaSource::File(path) => SquareMatrix::load_csv(path),
        }
    }
}

fn default_nu() -> u32 {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub lambda_source: LambdaSource,
    pub characteristic: Characteristic,
    /// Observations per replication.
    pub n: usize,
    pub replications: usize,
    pub gamma_grid: Vec<f64>,
    #[serde(default)]
    pub thresholds: Vec<f64>,
    #[serde(default = "default_nu")]
    pub nu: u32,
    pub seed: u64,
    #[serde(default)]
    pub center_mode: CenterMode,
    #[serde(default)]
    pub threshold_mode: ThresholdMode,
    /// Leading principal submatrix size; spanning-tree runs default to 10.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pearson_bins: Option<BinSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_bins: Option<BinSpec>,
}

impl ExperimentConfig {
    /// Checks every field; returns non-fatal warnings or all violations at once.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut problems = Vec::new();
        let mut warnings = Vec::new();
        if self.n < 2 {
            problems.push(format!("n: must be at least 2, got {}", self.n));
        }
        if self.replications == 0 {
            problems.push("replications: must be at least 1".to_string());
        }
        if self.gamma_grid.is_empty() {
            problems.push("gamma_grid: must not be empty".to_string());
        }
        if let Some(g) = self.gamma_grid.iter().find(|g| !(0.0..=1.0).contains(*g)) {
            problems.push(format!("gamma_grid: value {g} outside [0, 1]"));
        }
        if self.nu < 3 {
            problems.push(format!("nu: must be at least 3, got {}", self.nu));
        }
        if self.characteristic.needs_threshold() {
            if self.thresholds.is_empty() {
                problems.push(format!("thresholds: required for {}", self.characteristic));
            }
        } else if !self.thresholds.is_empty() {
            warnings.push(format!("thresholds are ignored for {}", self.characteristic));
        }
        if let Some(t) = self.thresholds.iter().find(|t| !(-1.0..=1.0).contains(*t)) {
            problems.push(format!("thresholds: value {t} outside [-1, 1]"));
        }
        if self.truth_dim == Some(0) {
            problems.push("truth_dim: must be positive".to_string());
        }
        for (name, bins) in [("pearson_bins", &self.pearson_bins), ("sign_bins", &self.sign_bins)] {
            if let Some(b) = bins {
                if let Err(e) = b.edges() {
                    problems.push(format!("{name}: {e}"));
                }
            }
        }
        if problems.is_empty() {
            Ok(warnings)
        } else {
            Err(Error::Config(problems))
        }
    }

    /// One entry per curve pair the experiment produces.
    pub fn threshold_runs(&self) -> Vec<Option<f64>> {
        if self.characteristic.needs_threshold() {
            self.thresholds.iter().copied().map(Some).collect()
        } else {
            vec![None]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub gamma: f64,
    pub mean_divergence: f64,
    pub std_error: f64,
    pub replications: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityCurve {
    pub measure_kind: MeasureKind,
    pub characteristic: Characteristic,
    /// Threshold on this measure's own scale, if any.
    pub threshold: Option<f64>,
    pub n: usize,
    pub points: Vec<CurvePoint>,
}

impl StabilityCurve {
    pub fn point(&self, gamma: f64) -> Option<&CurvePoint> {
        self.points.iter().find(|p| p.gamma == gamma)
    }
}

/// Pearson and sign curves computed from the same samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePair {
    pub pearson: StabilityCurve,
    pub sign: StabilityCurve,
}

impl CurvePair {
    pub fn curves(&self) -> [&StabilityCurve; 2] {
        [&self.pearson, &self.sign]
    }

    /// CSV with one row per (measure, gamma), Pearson rows first.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("gamma,measure_kind,characteristic,mean_divergence,std_error,replications\n");
        for curve in self.curves() {
            for p in &curve.points {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    p.gamma, curve.measure_kind, curve.characteristic, p.mean_divergence, p.std_error, p.replications
                );
            }
        }
        out
    }
}

/// Spread of a curve's means across the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Flatness {
    /// `max mean - min mean`.
    pub absolute: f64,
    /// `absolute / grand mean`, when the grand mean is positive.
    pub normalized: Option<f64>,
}

pub fn summarize_flatness(curve: &StabilityCurve) -> Result<Flatness> {
    if curve.points.len() < 2 {
        return Err(Error::InsufficientData {
            points: curve.points.len(),
        });
    }
    let means = curve.points.iter().map(|p| p.mean_divergence);
    let max = means.clone().fold(f64::NEG_INFINITY, f64::max);
    let min = means.clone().fold(f64::INFINITY, f64::min);
    let grand = means.sum::<f64>() / curve.points.len() as f64;
    let absolute = max - min;
    Ok(Flatness {
        absolute,
        normalized: (grand > 0.0).then(|| absolute / grand),
    })
}

/// Independent stream for replication `replication` at grid index `gamma_index`.
pub fn replication_rng(seed: u64, gamma_index: usize, replication: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((gamma_index as u64) << 32) | replication as u64);
    rng
}

/// A true characteristic of one network, extracted once per experiment.
#[derive(Debug, Clone, PartialEq)]
enum Truth {
    Histogram(EdgeWeightHistogram),
    Degrees(DegreeDistribution),
    Set(VertexSet),
    Topology(TreeTopology),
}

/// Extracts one characteristic from dependence matrices of a fixed measure.
#[derive(Debug, Clone)]
struct Extractor {
    characteristic: Characteristic,
    threshold: Option<f64>,
    bins: BinSpec,
}

impl Extractor {
    fn extract(&self, w: &DependenceMatrix) -> Result<Truth> {
        let threshold = || self.threshold.expect("validated: threshold present");
        Ok(match self.characteristic {
            Characteristic::Histogram => Truth::Histogram(edge_histogram(w, &self.bins)?),
            Characteristic::DegreeDistribution => Truth::Degrees(degree_distribution(&market_graph(w, threshold()))),
            Characteristic::MaxClique => Truth::Set(max_clique(&market_graph(w, threshold()))),
            Characteristic::MaxIndependentSet => Truth::Set(max_independent_set(&market_graph(w, threshold()))),
            Characteristic::MstTopology => Truth::Topology(tree_topology(&maximum_spanning_tree(w))),
        })
    }

    fn divergence(&self, truth: &Truth, w: &DependenceMatrix) -> Result<f64> {
        let estimate = self.extract(w)?;
        Ok(match (truth, &estimate) {
            (Truth::Histogram(a), Truth::Histogram(b)) => histogram_divergence(a, b)?,
            (Truth::Degrees(a), Truth::Degrees(b)) => degree_divergence(a, b)? as f64,
            (Truth::Set(a), Truth::Set(b)) => vertex_set_divergence(a, b)? as f64,
            (Truth::Topology(a), Truth::Topology(b)) => f64::from(topology_match(a, b)?),
            _ => unreachable!("same extractor yields the same variant"),
        })
    }
}

/// A validated configuration with its truth matrices loaded.
#[derive(Debug, Clone)]
pub struct Experiment {
    config: ExperimentConfig,
    model: MixtureModel,
    truth_pearson: DependenceMatrix,
    truth_sign: DependenceMatrix,
    warnings: Vec<String>,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        let warnings = config.validate()?;
        let full = config.lambda_source.load()?;
        let lambda = Self::truth_matrix(&config, full)?;
        Self::with_lambda(config, lambda, warnings)
    }

    /// Uses an already-loaded scale matrix instead of `lambda_source`.
    pub fn from_lambda(config: ExperimentConfig, lambda: SquareMatrix) -> Result<Self> {
        let warnings = config.validate()?;
        let lambda = Self::truth_matrix(&config, lambda)?;
        Self::with_lambda(config, lambda, warnings)
    }

    fn truth_matrix(config: &ExperimentConfig, full: SquareMatrix) -> Result<SquareMatrix> {
        let dim = match (config.truth_dim, config.characteristic) {
            (Some(d), _) => d,
            (None, Characteristic::MstTopology) => full.dim().min(MST_DEFAULT_DIM),
            (None, _) => full.dim(),
        };
        if dim > full.dim() {
            return Err(Error::Config(vec![format!(
                "truth_dim: {dim} exceeds matrix size {}",
                full.dim()
            )]));
        }
        Ok(if dim == full.dim() { full } else { full.leading(dim) })
    }

    fn with_lambda(config: ExperimentConfig, lambda: SquareMatrix, warnings: Vec<String>) -> Result<Self> {
        let model = MixtureModel::centered(lambda, config.nu, 1.0)?;
        let truth_pearson = pearson_true(model.lambda())?;
        let truth_sign = sign_true(&truth_pearson)?;
        Ok(Self {
            config,
            model,
            truth_pearson,
            truth_sign,
            warnings,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn truth(&self, kind: MeasureKind) -> &DependenceMatrix {
        match kind {
            MeasureKind::Pearson => &self.truth_pearson,
            MeasureKind::SignProbability => &self.truth_sign,
        }
    }

    fn extractor(&self, kind: MeasureKind, threshold: Option<f64>) -> Extractor {
        let threshold = threshold.map(|t| match (kind, self.config.threshold_mode) {
            (MeasureKind::SignProbability, ThresholdMode::Mapped) => arcsine_map(t),
            _ => t,
        });
        let bins = match kind {
            MeasureKind::Pearson => self.config.pearson_bins,
            MeasureKind::SignProbability => self.config.sign_bins,
        }
        .unwrap_or_else(|| BinSpec::default_for(kind));
        Extractor {
            characteristic: self.config.characteristic,
            threshold,
            bins,
        }
    }

    /// Runs every threshold in the configuration.
    pub fn run_all(&self, workers: Option<usize>) -> Result<Vec<CurvePair>> {
        self.config
            .threshold_runs()
            .into_iter()
            .map(|t| self.run(t, workers))
            .collect()
    }

    /// Runs one threshold (Pearson scale). `workers = None` uses all cores.
    pub fn run(&self, threshold: Option<f64>, workers: Option<usize>) -> Result<CurvePair> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(w) = workers {
            builder = builder.num_threads(w.max(1));
        }
        let pool = builder
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        pool.install(|| self.run_in_pool(threshold))
    }

    fn run_in_pool(&self, threshold: Option<f64>) -> Result<CurvePair> {
        let cfg = &self.config;
        let pearson = self.extractor(MeasureKind::Pearson, threshold);
        let sign = self.extractor(MeasureKind::SignProbability, threshold);
        let truth_p = pearson.extract(&self.truth_pearson)?;
        let truth_s = sign.extract(&self.truth_sign)?;

        let mut points_p = Vec::with_capacity(cfg.gamma_grid.len());
        let mut points_s = Vec::with_capacity(cfg.gamma_grid.len());
        for (gi, &gamma) in cfg.gamma_grid.iter().enumerate() {
            let model = self.model.with_gamma(gamma)?;
            let pairs: Vec<(f64, f64)> = (0..cfg.replications)
                .into_par_iter()
                .map(|r| {
                    let mut rng = replication_rng(cfg.seed, gi, r);
                    let sample = model.draw_mixture(cfg.n, &mut rng)?;
                    let p_hat = pearson_sample(&sample)?;
                    let center = match cfg.center_mode {
                        CenterMode::TrueMu => model.mu().to_vec(),
                        CenterMode::SampleMean => sample.row_means(),
                    };
                    let s_hat = sign_sample(&sample, &center)?;
                    Ok((
                        pearson.divergence(&truth_p, &p_hat)?,
                        sign.divergence(&truth_s, &s_hat)?,
                    ))
                })
                .collect::<Result<_>>()?;
            let (dp, ds): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            points_p.push(summarize_point(gamma, &dp));
            points_s.push(summarize_point(gamma, &ds));
        }
        let sign_threshold = sign.threshold;
        Ok(CurvePair {
            pearson: StabilityCurve {
                measure_kind: MeasureKind::Pearson,
                characteristic: cfg.characteristic,
                threshold,
                n: cfg.n,
                points: points_p,
            },
            sign: StabilityCurve {
                measure_kind: MeasureKind::SignProbability,
                characteristic: cfg.characteristic,
                threshold: sign_threshold,
                n: cfg.n,
                points: points_s,
            },
        })
    }
}

/// Mean and standard error (sample std / sqrt(count)), summed in index order.
fn summarize_point(gamma: f64, values: &[f64]) -> CurvePoint {
    let count = values.len();
    let mean = values.iter().sum::<f64>() / count as f64;
    let std_error = if count > 1 {
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1) as f64;
        (var / count as f64).sqrt()
    } else {
        0.0
    };
    CurvePoint {
        gamma,
        mean_divergence: mean,
        std_error,
        replications: count,
    }
}

/// Convenience wrapper: load, validate and run every threshold.
pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<Vec<CurvePair>> {
    Experiment::new(config.clone())?.run_all(workers)
}
