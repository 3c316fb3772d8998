//! Dense square matrices and their plain-text CSV form.
//!
//! The CSV layout is N lines of N comma-separated decimals with `.` as the
//! decimal separator. Lines starting with `#` are comments and blank lines are
//! ignored, so a matrix written with a header comment reads back unchanged.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Symmetry tolerance used when validating scale and dependence matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Row-major dense N×N matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from nested rows; every row must have as many entries
    /// as there are rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Leading `k`×`k` principal submatrix.
    pub fn leading(&self, k: usize) -> Self {
        assert!(k <= self.n, "submatrix larger than matrix");
        Self::from_fn(k, |i, j| self.get(i, j))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Self::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    /// Largest absolute elementwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let (upper, lower) = (self.get(i, j), self.get(j, i));
                if (upper - lower).abs() > tol {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        upper,
                        lower,
                    });
                }
            }
        }
        Ok(())
    }

    /// Upper-triangle entries `(i, j, value)` with `i < j`, in row order.
    pub fn upper_triangle(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row = trimmed
                .split(',')
                .map(|cell| {
                    cell.trim().parse::<f64>().map_err(|e| Error::Format {
                        line: idx + 1,
                        message: format!("cannot parse '{}': {e}", cell.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push((idx + 1, row));
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::Format {
                line: 0,
                message: "matrix file contains no rows".into(),
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for (line, row) in rows {
            if row.len() != n {
                return Err(Error::Format {
                    line,
                    message: format!("expected {n} values, found {}", row.len()),
                });
            }
            data.extend(row);
        }
        let m = Self { n, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::NoSuchInput(path.to_path_buf()),
            _ => Error::Io(e),
        })?;
        Self::parse_csv(&text)
    }

    /// Serializes with shortest round-trip decimal formatting, optionally
    /// preceded by a `# ` comment line.
    pub fn to_csv_string(&self, header: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(h) = header {
            let _ = writeln!(out, "# {h}");
        }
        for i in 0..self.n {
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_skips_comments_and_blank_lines() {
        let m = SquareMatrix::parse_csv("# kind=pearson\n1, 0.5\n\n0.5,1\n").unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(0, 1), 0.5);
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        let err = SquareMatrix::parse_csv("1,0\n0\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }));
    }

    #[test]
    fn csv_rejects_comma_decimal() {
        assert!(SquareMatrix::parse_csv("1,0;5\n0;5,1\n").is_err());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let m = SquareMatrix::from_fn(3, |i, j| if i == j { 1.0 } else { 0.1 * (i + j) as f64 / 3.0 });
        let back = SquareMatrix::parse_csv(&m.to_csv_string(Some("x"))).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn symmetry_check_reports_position() {
        let m = SquareMatrix::from_rows(&[vec![1.0, 0.2], vec![0.3, 1.0]]).unwrap();
        assert!(matches!(
            m.check_symmetric(SYMMETRY_TOL),
            Err(Error::NotSymmetric { row: 0, col: 1, .. })
        ));
    }
}
