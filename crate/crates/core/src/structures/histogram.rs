use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{DependenceMatrix, MeasureKind};

/// Equal-width bins over `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinSpec {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl BinSpec {
    /// Width-0.1 bins across the measure's range.
    pub fn default_for(kind: MeasureKind) -> Self {
        match kind {
            MeasureKind::Pearson => Self {
                lo: -1.0,
                hi: 1.0,
                bins: 20,
            },
            MeasureKind::SignProbability => Self {
                lo: 0.0,
                hi: 1.0,
                bins: 10,
            },
        }
    }

    pub fn edges(&self) -> Result<Vec<f64>> {
        if self.bins == 0 || self.lo >= self.hi || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::InvalidBins(format!(
                "need bins > 0 and finite lo < hi, got {self:?}"
            )));
        }
        let span = self.hi - self.lo;
        let mut edges: Vec<f64> = (0..self.bins)
            .map(|k| self.lo + span * k as f64 / self.bins as f64)
            .collect();
        edges.push(self.hi);
        Ok(edges)
    }
}

/// Counts of upper-triangle weights per bin; bins are right-open except
/// the last, which is closed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeWeightHistogram {
    bin_edges: Vec<f64>,
    counts: Vec<usize>,
}

impl EdgeWeightHistogram {
    pub fn from_parts(bin_edges: Vec<f64>, counts: Vec<usize>) -> Result<Self> {
        if bin_edges.len() != counts.len() + 1
            || bin_edges
                .windows(2)
                .any(|w| w[0] >= w[1] || w[0].is_nan() || w[1].is_nan())
        {
            return Err(Error::InvalidBins(
                "edges must be strictly increasing and one longer than counts".into(),
            ));
        }
        Ok(Self { bin_edges, counts })
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn widths(&self) -> impl Iterator<Item = f64> + '_ {
        self.bin_edges.windows(2).map(|w| w[1] - w[0])
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

pub fn edge_histogram(w: &DependenceMatrix, bins: &BinSpec) -> Result<EdgeWeightHistogram> {
    let edges = bins.edges()?;
    let mut counts = vec![0usize; bins.bins];
    for (_, _, v) in w.values().upper_triangle() {
        if !(v >= bins.lo && v <= bins.hi) {
            return Err(Error::WeightOutOfBins {
                value: v,
                lo: bins.lo,
                hi: bins.hi,
            });
        }
        // index of the last left edge <= v, capped at the final bin
        let k = edges[..bins.bins].partition_point(|&e| e <= v) - 1;
        counts[k] += 1;
    }
    Ok(EdgeWeightHistogram {
        bin_edges: edges,
        counts,
    })
}
