//! Exact maximum clique by branch and bound with greedy-coloring bounds.
//!
//! The search first finds the clique number, then walks vertices in
//! ascending order and keeps each one that still extends to a clique of that
//! size. The result is the lexicographically smallest maximum clique.

use serde::{Deserialize, Serialize};

use super::bitset::BitSet;
use super::graph::MarketGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    Clique,
    IndependentSet,
}

/// Sorted vertex indices of a clique or independent set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSet {
    members: Vec<usize>,
    kind: SetKind,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>, kind: SetKind) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members, kind }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Checks the clique / independence property against `g`.
    pub fn is_valid_for(&self, g: &MarketGraph) -> bool {
        let want_edge = self.kind == SetKind::Clique;
        self.members.iter().all(|&v| v < g.n_vertices())
            && self
                .members
                .iter()
                .enumerate()
                .all(|(k, &a)| self.members[k + 1..].iter().all(|&b| g.has_edge(a, b) == want_edge))
    }
}

struct Search<'a> {
    adjacency: &'a [BitSet],
    best: usize,
    /// Abort as soon as `best` reaches this size.
    stop_at: usize,
}

impl Search<'_> {
    /// Greedy sequential coloring; returns vertices with non-decreasing color.
    fn color_sort(&self, candidates: &BitSet) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut out = Vec::with_capacity(candidates.len());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut available = uncolored.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                available.difference_with(&self.adjacency[v]);
                uncolored.remove(v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, size: usize, mut candidates: BitSet) {
        let ordered = self.color_sort(&candidates);
        for &(v, color) in ordered.iter().rev() {
            if size + color <= self.best || self.best >= self.stop_at {
                return;
            }
            let next = candidates.intersect(&self.adjacency[v]);
            if next.is_empty() {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(size + 1, next);
            }
            candidates.remove(v);
        }
    }
}

/// Size of the largest clique inside `candidates`, or any value `>= stop_at`
/// once one that large is seen.
fn clique_number_within(adjacency: &[BitSet], candidates: &BitSet, stop_at: usize) -> usize {
    if candidates.is_empty() {
        return 0;
    }
    let mut search = Search {
        adjacency,
        best: 0,
        stop_at,
    };
    search.expand(0, candidates.clone());
    search.best
}

fn lexicographic_max_clique(adjacency: &[BitSet], n: usize) -> Vec<usize> {
    let all = BitSet::full(n);
    let omega = clique_number_within(adjacency, &all, usize::MAX);
    let mut chosen = Vec::with_capacity(omega);
    let mut candidates = all;
    for v in 0..n {
        if chosen.len() == omega {
            break;
        }
        if !candidates.contains(v) {
            continue;
        }
        let need = omega - chosen.len() - 1;
        let mut rest = candidates.intersect(&adjacency[v]);
        rest.retain_above(v);
        if need == 0 || clique_number_within(adjacency, &rest, need) >= need {
            chosen.push(v);
            candidates = rest;
        }
    }
    chosen
}

/// Lexicographically smallest maximum clique of `g`.
pub fn max_clique(g: &MarketGraph) -> VertexSet {
    VertexSet::new(lexicographic_max_clique(g.adjacency(), g.n_vertices()), SetKind::Clique)
}

/// Lexicographically smallest maximum independent set of `g`, i.e. the
/// maximum clique of its complement.
pub fn max_independent_set(g: &MarketGraph) -> VertexSet {
    let complement = g.complement();
    VertexSet::new(
        lexicographic_max_clique(complement.adjacency(), g.n_vertices()),
        SetKind::IndependentSet,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::measures::pearson_true;
    use crate::structures::market_graph;

    #[test]
    fn triangle() {
        let g = MarketGraph::from_edges(4, 0.0, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert_eq!(max_clique(&g).members(), &[0, 1, 2]);
    }

    #[test]
    fn empty_graph_clique_is_vertex_zero() {
        let c = max_clique(&MarketGraph::empty(5));
        assert_eq!(c.members(), &[0]);
        assert_eq!(max_independent_set(&MarketGraph::empty(5)).members(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn complete_graph_independent_set_is_singleton() {
        let s = max_independent_set(&MarketGraph::complete(6));
        assert_eq!(s.members(), &[0]);
        assert_eq!(max_clique(&MarketGraph::complete(6)).len(), 6);
    }

    #[test]
    fn lexicographic_tie_break() {
        // two disjoint triangles {1,2,3} and {4,5,0}: smallest list is [0,4,5]
        let g = MarketGraph::from_edges(6, 0.0, &[(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]);
        assert_eq!(max_clique(&g).members(), &[0, 4, 5]);
    }

    #[test]
    fn fixture_clique_at_point_three() {
        let w = pearson_true(&fixtures::uk2010()).unwrap();
        let g = market_graph(&w, 0.3);
        let c = max_clique(&g);
        assert_eq!(c.members(), &[4, 5, 7, 8]);
        assert!(c.is_valid_for(&g));
        let s = max_independent_set(&g);
        assert!(s.is_valid_for(&g));
    }

    #[test]
    fn works_beyond_one_word() {
        // 70-vertex graph, clique on 60..70 plus a sparse ring
        let mut pairs: Vec<_> = (0..70).map(|i| (i, (i + 1) % 70)).collect();
        for a in 60..70 {
            for b in (a + 1)..70 {
                pairs.push((a, b));
            }
        }
        let g = MarketGraph::from_edges(70, 0.0, &pairs);
        assert_eq!(max_clique(&g).members(), (60..70).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn zero_vertices() {
        assert!(max_clique(&MarketGraph::empty(0)).is_empty());
    }
}
