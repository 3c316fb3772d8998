//! Network structures extracted from a dependence matrix: threshold (market)
//! graphs, degree distributions, edge-weight histograms, maximum cliques and
//! independent sets, and maximum spanning trees with their topology.

mod bitset;
mod clique;
mod graph;
mod histogram;
mod mst;

pub use clique::{max_clique, max_independent_set, SetKind, VertexSet};
pub use graph::{degree_distribution, market_graph, DegreeDistribution, MarketGraph};
pub use histogram::{edge_histogram, BinSpec, EdgeWeightHistogram};
pub use mst::{maximum_spanning_tree, tree_topology, SpanningTree, TreeEdge, TreeTopology, UnionFind};
