//! True and sample dependence matrices for the Pearson and sign networks.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{SquareMatrix, SYMMETRY_TOL};
use crate::sampler::SampleMatrix;

/// Which dependence measure supplies the edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Pearson,
    #[serde(alias = "sign")]
    SignProbability,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 2] = [MeasureKind::Pearson, MeasureKind::SignProbability];

    /// Closed range of admissible weights.
    pub fn range(self) -> (f64, f64) {
        match self {
            MeasureKind::Pearson => (-1.0, 1.0),
            MeasureKind::SignProbability => (0.0, 1.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MeasureKind::Pearson => "pearson",
            MeasureKind::SignProbability => "sign",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "pearson" => Some(MeasureKind::Pearson),
            "sign" | "sign_probability" => Some(MeasureKind::SignProbability),
            _ => None,
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Symmetric N×N edge-weight matrix tagged with its measure.
#[derive(Debug, Clone, PartialEq)]
pub struct DependenceMatrix {
    kind: MeasureKind,
    values: SquareMatrix,
    n_source: Option<usize>,
}

impl DependenceMatrix {
    /// Validates symmetry, the unit diagonal and the measure's range.
    pub fn new(kind: MeasureKind, values: SquareMatrix, n_source: Option<usize>) -> Result<Self> {
        values.check_finite()?;
        values.check_symmetric(SYMMETRY_TOL)?;
        let (lo, hi) = kind.range();
        let n = values.dim();
        for i in 0..n {
            for j in 0..n {
                let v = values.get(i, j);
                let bad = if i == j { v != 1.0 } else { v < lo || v > hi };
                if bad {
                    return Err(Error::OutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        lo: if i == j { 1.0 } else { lo },
                        hi,
                    });
                }
            }
        }
        Ok(Self { kind, values, n_source })
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn values(&self) -> &SquareMatrix {
        &self.values
    }

    pub fn into_values(self) -> SquareMatrix {
        self.values
    }

    pub fn n_source(&self) -> Option<usize> {
        self.n_source
    }

    pub fn dim(&self) -> usize {
        self.values.dim()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values.get(i, j)
    }

    /// Off-diagonal extremes `(min, max)`; `None` for N < 2.
    pub fn off_diagonal_range(&self) -> Option<(f64, f64)> {
        self.values.upper_triangle().fold(None, |acc, (_, _, v)| {
            Some(match acc {
                None => (v, v),
                Some((lo, hi)) => (f64::min(lo, v), f64::max(hi, v)),
            })
        })
    }

    pub fn header(&self) -> String {
        match self.n_source {
            Some(n) => format!("kind={} n={n}", self.kind),
            None => format!("kind={}", self.kind),
        }
    }

    pub fn to_csv_string(&self) -> String {
        self.values.to_csv_string(Some(&self.header()))
    }

    /// Reads the matrix CSV; the kind comes from a `# kind=...` header and
    /// defaults to Pearson when absent.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut kind = MeasureKind::Pearson;
        let mut n_source = None;
        if let Some(first) = text.lines().find(|l| !l.trim().is_empty()) {
            if let Some(comment) = first.trim().strip_prefix('#') {
                for token in comment.split_whitespace() {
                    if let Some(k) = token.strip_prefix("kind=") {
                        kind = MeasureKind::from_label(k).ok_or_else(|| Error::Format {
                            line: 1,
                            message: format!("unknown measure kind '{k}'"),
                        })?;
                    } else if let Some(n) = token.strip_prefix("n=") {
                        n_source = n.parse().ok();
                    }
                }
            }
        }
        Self::new(kind, SquareMatrix::parse_csv(text)?, n_source)
    }
}

/// Correlation matrix of a scale matrix, `l_ij / sqrt(l_ii l_jj)`.
pub fn pearson_true(lambda: &SquareMatrix) -> Result<DependenceMatrix> {
    lambda.check_finite()?;
    lambda.check_symmetric(SYMMETRY_TOL)?;
    let n = lambda.dim();
    if let Some(index) = (0..n).find(|&i| {
        let d = lambda.get(i, i);
        d.is_nan() || d <= 0.0
    }) {
        return Err(Error::DegenerateVariable { index });
    }
    let values = SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else {
            let r = lambda.get(i, j) / (lambda.get(i, i) * lambda.get(j, j)).sqrt();
            r.clamp(-1.0, 1.0)
        }
    });
    // symmetrize exactly: the input may be asymmetric within tolerance
    let values = SquareMatrix::from_fn(n, |i, j| values.get(i.min(j), i.max(j)));
    DependenceMatrix::new(MeasureKind::Pearson, values, None)
}

/// Sign-coincidence probability of an elliptical pair with correlation `rho`.
#[inline]
pub fn arcsine_map(rho: f64) -> f64 {
    0.5 + rho.asin() / PI
}

/// True sign network from a true Pearson network via the arcsine law.
pub fn sign_true(rho: &DependenceMatrix) -> Result<DependenceMatrix> {
    let n = rho.dim();
    for (i, j, v) in rho.values().upper_triangle() {
        if v.abs() > 1.0 + 1e-12 {
            return Err(Error::OutOfRange {
                row: i,
                col: j,
                value: v,
                lo: -1.0,
                hi: 1.0,
            });
        }
    }
    let values = SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else {
            arcsine_map(rho.get(i, j).clamp(-1.0, 1.0))
        }
    });
    DependenceMatrix::new(MeasureKind::SignProbability, values, rho.n_source())
}

/// Sample Pearson correlation with sample-mean centering.
pub fn pearson_sample(sample: &SampleMatrix) -> Result<DependenceMatrix> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::SampleSize { n, min: 2 });
    }
    let vars = sample.vars();
    let centered: Vec<Vec<f64>> = sample
        .rows()
        .map(|row| {
            let mean = row.iter().sum::<f64>() / n as f64;
            row.iter().map(|v| v - mean).collect()
        })
        .collect();
    let norms: Vec<f64> = centered
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    if let Some(index) = norms.iter().position(|&s| s.is_nan() || s <= 0.0) {
        return Err(Error::DegenerateSample { index });
    }
    let mut values = SquareMatrix::identity(vars);
    for i in 0..vars {
        for j in (i + 1)..vars {
            let dot: f64 = centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum();
            let r = (dot / (norms[i] * norms[j])).clamp(-1.0, 1.0);
            values.set(i, j, r);
            values.set(j, i, r);
        }
    }
    DependenceMatrix::new(MeasureKind::Pearson, values, Some(n))
}

/// Fraction of time points where `(x_i - c_i)(x_j - c_j) > 0`.
pub fn sign_sample(sample: &SampleMatrix, center: &[f64]) -> Result<DependenceMatrix> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::SampleSize { n, min: 2 });
    }
    let vars = sample.vars();
    if center.len() != vars {
        return Err(Error::Shape {
            expected: vars,
            found: center.len(),
        });
    }
    // +1 / -1 for strictly positive / negative deviations, 0 otherwise
    let signs: Vec<Vec<i8>> = sample
        .rows()
        .zip(center)
        .map(|(row, &c)| {
            row.iter()
                .map(|&v| {
                    let d = v - c;
                    if d > 0.0 {
                        1
                    } else if d < 0.0 {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let mut values = SquareMatrix::identity(vars);
    for i in 0..vars {
        for j in (i + 1)..vars {
            let count = signs[i].iter().zip(&signs[j]).filter(|(a, b)| **a * **b > 0).count();
            let p = count as f64 / n as f64;
            values.set(i, j, p);
            values.set(j, i, p);
        }
    }
    DependenceMatrix::new(MeasureKind::SignProbability, values, Some(n))
}

/// Number of market-graph hypotheses on `n` vertices, `2^(n(n-1)/2)`.
pub fn hypothesis_count_market_graph(n: usize) -> BigUint {
    let pairs = n * n.saturating_sub(1) / 2;
    BigUint::from(1u8) << pairs
}

/// Labeled spanning trees of the complete graph on `n` vertices, `n^(n-2)`.
pub fn spanning_tree_count(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::from(1u8);
    }
    BigUint::from(n).pow((n - 2) as u32)
}
