//! Building true network models from daily price series.
//!
//! Prices are read from a CSV whose header names the tickers (an optional
//! leading `date` column is skipped). Log returns feed a sample Pearson
//! matrix, which is shrunk toward the identity when it is numerically
//! singular so that it can serve as a sampling scale matrix.

use std::collections::HashSet;
use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::measures::{pearson_sample, DependenceMatrix, MeasureKind};
use crate::sampler::{cholesky, SampleMatrix};

/// Smallest eigenvalue a truth matrix may have before it is repaired.
pub const EIGEN_FLOOR: f64 = 1e-8;

/// Prices of N tickers over T days.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceTable {
    tickers: Vec<String>,
    /// One series per ticker.
    series: Vec<Vec<f64>>,
}

impl PriceTable {
    pub fn tickers(&self) -> &[String] {
        &self.tickers
    }

    pub fn series(&self, i: usize) -> &[f64] {
        &self.series[i]
    }

    pub fn n_tickers(&self) -> usize {
        self.tickers.len()
    }

    pub fn n_days(&self) -> usize {
        self.series.first().map_or(0, Vec::len)
    }
}

pub fn load_prices(path: &Path) -> Result<PriceTable> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::NoSuchInput(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    parse_prices(&text)
}

/// Parses price CSV text. Rows are numbered from 1 after the header.
pub fn parse_prices(text: &str) -> Result<PriceTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let skip = usize::from(header.get(0).is_some_and(|h| h.eq_ignore_ascii_case("date")));
    let tickers: Vec<String> = header.iter().skip(skip).map(str::to_string).collect();
    if tickers.is_empty() {
        return Err(Error::Format {
            line: 1,
            message: "header names no tickers".into(),
        });
    }
    let mut seen = HashSet::new();
    for t in &tickers {
        if t.is_empty() {
            return Err(Error::Format {
                line: 1,
                message: "empty ticker name".into(),
            });
        }
        if !seen.insert(t.as_str()) {
            return Err(Error::DuplicateTicker(t.clone()));
        }
    }

    let mut series = vec![Vec::new(); tickers.len()];
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record?;
        for (k, ticker) in tickers.iter().enumerate() {
            let bad = |message: String| Error::BadPrice {
                row,
                column: ticker.clone(),
                message,
            };
            let cell = record.get(k + skip).unwrap_or("");
            if cell.is_empty() {
                return Err(bad("missing".into()));
            }
            let price: f64 = cell.parse().map_err(|_| bad(format!("unparseable ('{cell}')")))?;
            if !price.is_finite() || price <= 0.0 {
                return Err(bad(format!("non-positive ({price})")));
            }
            series[k].push(price);
        }
    }
    let days = series[0].len();
    if days < 3 {
        return Err(Error::Format {
            line: days + 1,
            message: format!("need at least 3 trading days, found {days}"),
        });
    }
    Ok(PriceTable { tickers, series })
}

/// Log returns `ln(P_t / P_{t-1})`, one row per ticker, T-1 columns.
pub fn to_returns(prices: &PriceTable) -> Result<SampleMatrix> {
    let rows: Vec<Vec<f64>> = prices
        .series
        .iter()
        .map(|s| s.windows(2).map(|w| (w[1] / w[0]).ln()).collect())
        .collect();
    SampleMatrix::from_rows(&rows)
}

/// Truth matrix built from returns, with the shrinkage applied (if any).
#[derive(Debug, Clone)]
pub struct Truth {
    pub matrix: DependenceMatrix,
    /// Weight `eps` of the identity in `(1 - eps) R + eps I`.
    pub repair_epsilon: Option<f64>,
}

/// Sample Pearson matrix of the returns, repaired to be positive definite.
/// `tickers` (when given) name degenerate series in errors.
pub fn build_truth(returns: &SampleMatrix, tickers: Option<&[String]>) -> Result<Truth> {
    let raw = pearson_sample(returns).map_err(|e| match (e, tickers) {
        (Error::DegenerateSample { index }, Some(names)) => Error::DegenerateSeries {
            ticker: names[index].clone(),
        },
        (e, _) => e,
    })?;
    let (matrix, repair_epsilon) = repair_positive_definite(&raw)?;
    Ok(Truth { matrix, repair_epsilon })
}

pub fn min_eigenvalue(m: &SquareMatrix) -> f64 {
    let n = m.dim();
    if n == 0 {
        return f64::INFINITY;
    }
    let dm = DMatrix::from_row_slice(n, n, m.as_slice());
    SymmetricEigen::new(dm).eigenvalues.min()
}

/// Shrinks a correlation matrix toward the identity with the smallest weight
/// that lifts its minimum eigenvalue to [`EIGEN_FLOOR`]. Returns the input
/// unchanged (and `None`) when it already satisfies the floor.
pub fn repair_positive_definite(r: &DependenceMatrix) -> Result<(DependenceMatrix, Option<f64>)> {
    let lambda_min = min_eigenvalue(r.values());
    if lambda_min >= EIGEN_FLOOR && cholesky(r.values()).is_ok() {
        return Ok((r.clone(), None));
    }
    // eigenvalues of (1-e)R + eI are (1-e)l + e; solve for l_min -> floor
    let mut floor = EIGEN_FLOOR;
    for _ in 0..8 {
        let eps = ((floor - lambda_min) / (1.0 - lambda_min)).clamp(0.0, 1.0);
        let n = r.dim();
        let values = SquareMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { (1.0 - eps) * r.get(i, j) });
        if cholesky(&values).is_ok() {
            let repaired = DependenceMatrix::new(MeasureKind::Pearson, values, r.n_source())?;
            return Ok((repaired, Some(eps)));
        }
        floor *= 10.0;
    }
    Err(Error::InvalidModel(
        "correlation matrix could not be repaired to positive definite".into(),
    ))
}
