//! Stability analysis of stock-market network identification procedures.
//!
//! A market is modelled as a complete weighted graph on asset returns, with
//! edge weights given either by Pearson correlation or by the probability
//! that two returns share a sign. Returns are drawn from a Gaussian /
//! Student-t mixture with a common scale matrix; for each mixture weight the
//! crate estimates both networks from finite samples, extracts a network
//! structure (edge-weight histogram, market-graph degree distribution,
//! maximum clique, maximum independent set, or maximum spanning tree
//! topology) and measures how far it lands from the true structure.
//!
//! Module map:
//! - [`sampler`]: mixture model and correlated sampling.
//! - [`measures`]: true and sample dependence matrices.
//! - [`structures`]: market graphs, cliques, spanning trees, histograms.
//! - [`divergence`]: distances between true and sample structures.
//! - [`montecarlo`]: replicated experiments producing stability curves.
//! - [`ingestion`]: truth matrices from daily price files.

pub mod divergence;
pub mod error;
pub mod fixtures;
pub mod ingestion;
pub mod matrix;
pub mod measures;
pub mod montecarlo;
pub mod sampler;
pub mod structures;

pub use divergence::{degree_divergence, histogram_divergence, topology_match, vertex_set_divergence};
pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use measures::{
    arcsine_map, hypothesis_count_market_graph, pearson_sample, pearson_true, sign_sample, sign_true,
    spanning_tree_count, DependenceMatrix, MeasureKind,
};
pub use montecarlo::{
    run_experiment, summarize_flatness, Characteristic, CurvePair, CurvePoint, Experiment, ExperimentConfig, Flatness,
    LambdaSource, StabilityCurve,
};
pub use sampler::{cholesky, MixtureModel, SampleMatrix};
pub use structures::{
    degree_distribution, edge_histogram, market_graph, max_clique, max_independent_set, maximum_spanning_tree,
    tree_topology, BinSpec, DegreeDistribution, EdgeWeightHistogram, MarketGraph, SetKind, SpanningTree, TreeTopology,
    VertexSet,
};
