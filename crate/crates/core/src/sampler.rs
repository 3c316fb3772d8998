//! Gaussian / Student-t mixture sampling with a shared location and scale.
//!
//! Student draws use the normal/chi-square ratio `mu + L z / sqrt(w / nu)`.
//! Every column of a mixture sample consumes, in order: one uniform selecting
//! the component, `N` standard normals, and (Student columns only) one
//! chi-square variate. Identical streams therefore give identical samples.

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::{SquareMatrix, SYMMETRY_TOL};

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
///
/// Fails with the index of the first pivot that is not strictly positive.
pub fn cholesky(lambda: &SquareMatrix) -> Result<SquareMatrix> {
    lambda.check_finite()?;
    lambda.check_symmetric(SYMMETRY_TOL)?;
    let n = lambda.dim();
    let mut l = SquareMatrix::zeros(n);
    for j in 0..n {
        let mut diag = lambda.get(j, j);
        for k in 0..j {
            diag -= l.get(j, k) * l.get(j, k);
        }
        if diag.is_nan() || diag <= 0.0 {
            return Err(Error::NotPositiveDefinite { pivot: j, value: diag });
        }
        let ljj = diag.sqrt();
        l.set(j, j, ljj);
        for i in (j + 1)..n {
            let mut s = lambda.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / ljj);
        }
    }
    Ok(l)
}

/// Mixture law `gamma * Gauss(mu, lambda) + (1 - gamma) * t_nu(mu, lambda)`.
#[derive(Debug, Clone)]
pub struct MixtureModel {
    mu: Vec<f64>,
    lambda: SquareMatrix,
    factor: SquareMatrix,
    nu: u32,
    gamma: f64,
    chi2: ChiSquared<f64>,
}

impl MixtureModel {
    pub fn new(mu: Vec<f64>, lambda: SquareMatrix, nu: u32, gamma: f64) -> Result<Self> {
        if mu.len() != lambda.dim() {
            return Err(Error::Shape {
                expected: lambda.dim(),
                found: mu.len(),
            });
        }
        if mu.iter().any(|m| !m.is_finite()) {
            return Err(Error::InvalidModel("location has non-finite entries".into()));
        }
        if nu < 3 {
            return Err(Error::InvalidModel(format!(
                "Student degrees of freedom must be at least 3, got {nu}"
            )));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidModel(format!(
                "mixture weight must lie in [0, 1], got {gamma}"
            )));
        }
        let factor = cholesky(&lambda)?;
        let chi2 = ChiSquared::new(f64::from(nu)).map_err(|e| Error::InvalidModel(format!("chi-square: {e}")))?;
        Ok(Self {
            mu,
            lambda,
            factor,
            nu,
            gamma,
            chi2,
        })
    }

    /// Zero-location model, the default for all simulations.
    pub fn centered(lambda: SquareMatrix, nu: u32, gamma: f64) -> Result<Self> {
        let n = lambda.dim();
        Self::new(vec![0.0; n], lambda, nu, gamma)
    }

    /// Same location, scale and df with a different mixture weight.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidModel(format!(
                "mixture weight must lie in [0, 1], got {gamma}"
            )));
        }
        Ok(Self { gamma, ..self.clone() })
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn lambda(&self) -> &SquareMatrix {
        &self.lambda
    }

    pub fn factor(&self) -> &SquareMatrix {
        &self.factor
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Writes `L z` for fresh standard normals `z` into `out`.
    fn correlated_normals<R: Rng + ?Sized>(&self, rng: &mut R, z: &mut [f64], out: &mut [f64]) {
        for zi in z.iter_mut() {
            *zi = StandardNormal.sample(rng);
        }
        let n = self.dim();
        for i in 0..n {
            let row = self.factor.row(i);
            out[i] = row[..=i].iter().zip(&z[..=i]).map(|(a, b)| a * b).sum();
        }
    }

    /// One Gaussian observation `mu + L z`.
    pub fn draw_gaussian<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let n = self.dim();
        let mut z = vec![0.0; n];
        let mut x = vec![0.0; n];
        self.correlated_normals(rng, &mut z, &mut x);
        for (xi, m) in x.iter_mut().zip(&self.mu) {
            *xi += m;
        }
        x
    }

    /// One Student-t observation `mu + L z / sqrt(w / nu)`, `w ~ chi2(nu)`.
    pub fn draw_student<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let n = self.dim();
        let mut z = vec![0.0; n];
        let mut x = vec![0.0; n];
        self.correlated_normals(rng, &mut z, &mut x);
        let scale = self.student_scale(rng);
        for (xi, m) in x.iter_mut().zip(&self.mu) {
            *xi = m + *xi * scale;
        }
        x
    }

    fn student_scale<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let w: f64 = self.chi2.sample(rng);
        1.0 / (w / f64::from(self.nu)).sqrt()
    }

    /// `n` independent mixture observations as an N×n sample.
    pub fn draw_mixture<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<SampleMatrix> {
        if n < 2 {
            return Err(Error::SampleSize { n, min: 2 });
        }
        let dim = self.dim();
        let mut data = vec![0.0; dim * n];
        let mut z = vec![0.0; dim];
        let mut col = vec![0.0; dim];
        for t in 0..n {
            let u: f64 = rng.random();
            let gaussian = u < self.gamma;
            self.correlated_normals(rng, &mut z, &mut col);
            let scale = if gaussian { 1.0 } else { self.student_scale(rng) };
            for i in 0..dim {
                data[i * n + t] = self.mu[i] + col[i] * scale;
            }
        }
        Ok(SampleMatrix { vars: dim, n, data })
    }
}

/// N×n observations: rows are variables, columns are time points.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    vars: usize,
    n: usize,
    data: Vec<f64>,
}

impl SampleMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let vars = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if n < 2 {
            return Err(Error::SampleSize { n, min: 2 });
        }
        let mut data = Vec::with_capacity(vars * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(t) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row: i, col: t });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { vars, n, data })
    }

    /// Number of variables N.
    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Number of observations n.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn column(&self, t: usize) -> Vec<f64> {
        (0..self.vars).map(|i| self.data[i * self.n + t]).collect()
    }

    /// Applies `f(variable, value)` to every entry; the result must stay finite.
    pub fn map(&self, mut f: impl FnMut(usize, f64) -> f64) -> Result<Self> {
        let rows: Vec<Vec<f64>> = self
            .rows()
            .enumerate()
            .map(|(i, r)| r.iter().map(|&v| f(i, v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn row_means(&self) -> Vec<f64> {
        self.rows().map(|r| r.iter().sum::<f64>() / self.n as f64).collect()
    }
}
