use serde::Serialize;

use super::bitset::BitSet;
use crate::measures::DependenceMatrix;

/// Threshold graph: simple, undirected, vertices `0..n_vertices`.
#[derive(Debug, Clone, Serialize)]
pub struct MarketGraph {
    n_vertices: usize,
    threshold: f64,
    /// Sorted `(i, j)` pairs with `i < j`.
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<BitSet>,
}

impl PartialEq for MarketGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.edges == other.edges
    }
}

impl MarketGraph {
    /// Builds a graph from arbitrary pairs; self-loops and duplicates are
    /// dropped.
    pub fn from_edges(n_vertices: usize, threshold: f64, pairs: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![BitSet::empty(n_vertices); n_vertices];
        for &(a, b) in pairs {
            assert!(a < n_vertices && b < n_vertices, "vertex index out of range");
            if a != b {
                adjacency[a].insert(b);
                adjacency[b].insert(a);
            }
        }
        Self::from_adjacency(n_vertices, threshold, adjacency)
    }

    pub(crate) fn from_adjacency(n_vertices: usize, threshold: f64, adjacency: Vec<BitSet>) -> Self {
        let edges = (0..n_vertices)
            .flat_map(|i| {
                adjacency[i]
                    .iter()
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self {
            n_vertices,
            threshold,
            edges,
            adjacency,
        }
    }

    pub fn empty(n_vertices: usize) -> Self {
        Self::from_edges(n_vertices, f64::NAN, &[])
    }

    pub fn complete(n_vertices: usize) -> Self {
        let pairs: Vec<_> = (0..n_vertices)
            .flat_map(|i| ((i + 1)..n_vertices).map(move |j| (i, j)))
            .collect();
        Self::from_edges(n_vertices, f64::NAN, &pairs)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub(crate) fn adjacency(&self) -> &[BitSet] {
        &self.adjacency
    }

    /// Same vertices, every non-edge becomes an edge and vice versa.
    pub fn complement(&self) -> Self {
        let n = self.n_vertices;
        let adjacency = (0..n)
            .map(|i| {
                let mut row = BitSet::full(n);
                row.difference_with(&self.adjacency[i]);
                row.remove(i);
                row
            })
            .collect();
        Self::from_adjacency(n, self.threshold, adjacency)
    }
}

/// Keeps edge `(i, j)` exactly when `w[i][j] > threshold`.
pub fn market_graph(w: &DependenceMatrix, threshold: f64) -> MarketGraph {
    let n = w.dim();
    let mut adjacency = vec![BitSet::empty(n); n];
    for (i, j, v) in w.values().upper_triangle() {
        if v > threshold {
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
    }
    MarketGraph::from_adjacency(n, threshold, adjacency)
}

/// `counts[d]` is the number of vertices of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDistribution {
    counts: Vec<usize>,
}

impl DegreeDistribution {
    pub fn from_counts(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn n_vertices(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `sum d * counts[d]`, twice the edge count.
    pub fn degree_sum(&self) -> usize {
        self.counts.iter().enumerate().map(|(d, c)| d * c).sum()
    }
}

pub fn degree_distribution(g: &MarketGraph) -> DegreeDistribution {
    let n = g.n_vertices();
    let mut counts = vec![0; n];
    for i in 0..n {
        counts[g.degree(i)] += 1;
    }
    DegreeDistribution { counts }
}
