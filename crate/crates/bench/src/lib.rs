//! Shared inputs for the criterion benchmarks.

use marketnet_core::{pearson_true, DependenceMatrix, MarketGraph, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One-factor correlation matrix with loadings spread over [0.3, 0.85].
pub fn factor_truth(n: usize) -> SquareMatrix {
    let loading = |i: usize| 0.3 + 0.55 * ((i * 37) % n) as f64 / n as f64;
    SquareMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { loading(i) * loading(j) })
}

pub fn factor_weights(n: usize) -> DependenceMatrix {
    pearson_true(&factor_truth(n)).expect("factor truth is a valid correlation matrix")
}

/// Erdos-Renyi graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> MarketGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                pairs.push((i, j));
            }
        }
    }
    MarketGraph::from_edges(n, 0.0, &pairs)
}
