//! Per-replication divergences between a true characteristic and its sample
//! counterpart. Averaging these over replications estimates the expected
//! divergence.

use crate::error::{Error, Result};
use crate::structures::{DegreeDistribution, EdgeWeightHistogram, TreeTopology, VertexSet};

/// Area between the two histogram step curves, `sum |c_b - c'_b| * width_b`.
pub fn histogram_divergence(truth: &EdgeWeightHistogram, estimate: &EdgeWeightHistogram) -> Result<f64> {
    if truth.bin_edges() != estimate.bin_edges() {
        return Err(Error::BinMismatch);
    }
    Ok(truth
        .counts()
        .iter()
        .zip(estimate.counts())
        .zip(truth.widths())
        .map(|((&a, &b), w)| a.abs_diff(b) as f64 * w)
        .sum())
}

/// `sum_i |k_i - k'_i|` over degree counts.
pub fn degree_divergence(truth: &DegreeDistribution, estimate: &DegreeDistribution) -> Result<usize> {
    if truth.counts().len() != estimate.counts().len() {
        return Err(Error::Shape {
            expected: truth.counts().len(),
            found: estimate.counts().len(),
        });
    }
    Ok(truth
        .counts()
        .iter()
        .zip(estimate.counts())
        .map(|(&a, &b)| a.abs_diff(b))
        .sum())
}

/// Size of the symmetric difference of two sorted vertex sets.
pub fn vertex_set_divergence(truth: &VertexSet, estimate: &VertexSet) -> Result<usize> {
    if truth.kind() != estimate.kind() {
        return Err(Error::KindMismatch {
            left: truth.kind(),
            right: estimate.kind(),
        });
    }
    let (a, b) = (truth.members(), estimate.members());
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(a.len() + b.len() - 2 * common)
}

/// 1 when the sorted degree sequences agree, 0 otherwise. Unlike the other
/// measures, higher is better: its mean is the probability of recovering the
/// true topology.
pub fn topology_match(truth: &TreeTopology, estimate: &TreeTopology) -> Result<u8> {
    if truth.degrees().len() != estimate.degrees().len() {
        return Err(Error::Shape {
            expected: truth.degrees().len(),
            found: estimate.degrees().len(),
        });
    }
    Ok(u8::from(truth.degrees() == estimate.degrees()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::SetKind;

    fn hist(counts: Vec<usize>) -> EdgeWeightHistogram {
        let edges = (0..=counts.len()).map(|k| k as f64 / 10.0).collect();
        EdgeWeightHistogram::from_parts(edges, counts).unwrap()
    }

    #[test]
    fn histogram_identical_is_zero() {
        assert_eq!(
            histogram_divergence(&hist(vec![1, 2, 3]), &hist(vec![1, 2, 3])).unwrap(),
            0.0
        );
    }

    #[test]
    fn histogram_moved_edge() {
        let d = histogram_divergence(&hist(vec![1, 2, 3]), &hist(vec![1, 1, 4])).unwrap();
        assert!((d - 0.2).abs() < 1e-12);
    }

    #[test]
    fn histogram_bin_mismatch() {
        assert!(matches!(
            histogram_divergence(&hist(vec![1, 2]), &hist(vec![1, 2, 0])),
            Err(Error::BinMismatch)
        ));
    }

    #[test]
    fn degree_examples() {
        let a = DegreeDistribution::from_counts(vec![3, 0, 0]);
        let b = DegreeDistribution::from_counts(vec![1, 2, 0]);
        assert_eq!(degree_divergence(&a, &a).unwrap(), 0);
        assert_eq!(degree_divergence(&a, &b).unwrap(), 4);
        assert!(degree_divergence(&a, &DegreeDistribution::from_counts(vec![4, 0, 0, 0])).is_err());
    }

    #[test]
    fn vertex_set_examples() {
        let c = |m: Vec<usize>| VertexSet::new(m, SetKind::Clique);
        assert_eq!(vertex_set_divergence(&c(vec![0, 1, 2]), &c(vec![0, 1, 2])).unwrap(), 0);
        assert_eq!(vertex_set_divergence(&c(vec![0, 1, 2]), &c(vec![1, 2, 3])).unwrap(), 2);
        assert_eq!(vertex_set_divergence(&c(vec![0, 1]), &c(vec![4, 5, 6])).unwrap(), 5);
        let s = VertexSet::new(vec![0], SetKind::IndependentSet);
        assert!(matches!(
            vertex_set_divergence(&c(vec![0]), &s),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn topology_examples() {
        let path = TreeTopology::from_degrees(vec![1, 2, 2, 1]);
        let star = TreeTopology::from_degrees(vec![3, 1, 1, 1]);
        assert_eq!(topology_match(&path, &path).unwrap(), 1);
        assert_eq!(topology_match(&path, &star).unwrap(), 0);
        let relabeled = TreeTopology::from_degrees(vec![2, 1, 1, 2]);
        assert_eq!(topology_match(&path, &relabeled).unwrap(), 1);
    }
}
