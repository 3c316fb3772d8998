use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not positive definite: pivot {pivot} is {value}")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("matrix is not symmetric at ({row}, {col}): {upper} vs {lower}")]
    NotSymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("sample size {n} is too small (need at least {min})")]
    SampleSize { n: usize, min: usize },

    #[error("variable {index} has zero scale on the diagonal")]
    DegenerateVariable { index: usize },

    #[error("variable {index} has zero sample variance")]
    DegenerateSample { index: usize },

    #[error("series '{ticker}' has zero sample variance")]
    DegenerateSeries { ticker: String },

    #[error("value {value} at ({row}, {col}) is outside [{lo}, {hi}]")]
    OutOfRange {
        row: usize,
        col: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("histogram bins do not match")]
    BinMismatch,

    #[error("invalid bin specification: {0}")]
    InvalidBins(String),

    #[error("weight {value} falls outside the histogram range [{lo}, {hi}]")]
    WeightOutOfBins { value: f64, lo: f64, hi: f64 },

    #[error("vertex set kinds differ: {left:?} vs {right:?}")]
    KindMismatch {
        left: crate::structures::SetKind,
        right: crate::structures::SetKind,
    },

    #[error("curve has {points} point(s); at least 2 are required")]
    InsufficientData { points: usize },

    #[error("invalid configuration: {}", .0.join("; "))]
    Config(Vec<String>),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("price at row {row}, column '{column}' is {message}")]
    BadPrice {
        row: usize,
        column: String,
        message: String,
    },

    #[error("duplicate ticker '{0}'")]
    DuplicateTicker(String),

    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),

    #[error("no such input: {}", .0.display())]
    NoSuchInput(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
