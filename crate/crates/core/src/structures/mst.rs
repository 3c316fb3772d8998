use serde::Serialize;

use crate::measures::DependenceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Spanning tree on `n_vertices` vertices with `n_vertices - 1` edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanningTree {
    n_vertices: usize,
    edges: Vec<TreeEdge>,
    total_weight: f64,
}

impl SpanningTree {
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges in the order Kruskal accepted them.
    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Maximum-weight spanning tree by Kruskal. Ties in weight are broken by the
/// lexicographic order of `(i, j)`, so the result is deterministic.
pub fn maximum_spanning_tree(w: &DependenceMatrix) -> SpanningTree {
    let n = w.dim();
    let mut candidates: Vec<(usize, usize, f64)> = w.values().upper_triangle().collect();
    candidates.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (u, v, weight) in candidates {
        if uf.union(u, v) {
            edges.push(TreeEdge { u, v, weight });
            if edges.len() + 1 == n {
                break;
            }
        }
    }
    let total_weight = edges.iter().map(|e| e.weight).sum();
    SpanningTree {
        n_vertices: n,
        edges,
        total_weight,
    }
}

/// Non-decreasing degree sequence of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeTopology {
    degrees: Vec<usize>,
}

impl TreeTopology {
    pub fn from_degrees(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        Self { degrees }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }
}

pub fn tree_topology(t: &SpanningTree) -> TreeTopology {
    TreeTopology::from_degrees(t.degrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::SquareMatrix;
    use crate::measures::{pearson_true, MeasureKind};

    fn weights(n: usize, f: impl Fn(usize, usize) -> f64) -> DependenceMatrix {
        let m = SquareMatrix::from_fn(n, |i, j| if i == j { 1.0 } else { f(i.min(j), i.max(j)) });
        DependenceMatrix::new(MeasureKind::Pearson, m, None).unwrap()
    }

    #[test]
    fn two_vertices() {
        let t = maximum_spanning_tree(&weights(2, |_, _| 0.3));
        assert_eq!(t.edge_pairs(), vec![(0, 1)]);
        assert_eq!(t.total_weight(), 0.3);
    }

    #[test]
    fn star_forced_by_weights() {
        let t = maximum_spanning_tree(&weights(5, |i, _| if i == 0 { 0.9 } else { 0.1 }));
        assert_eq!(t.edge_pairs(), vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(tree_topology(&t).degrees(), &[1, 1, 1, 1, 4]);
    }

    #[test]
    fn ties_broken_by_edge_index() {
        let t = maximum_spanning_tree(&weights(4, |_, _| 0.5));
        assert_eq!(t.edge_pairs(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn path_topology() {
        let t = maximum_spanning_tree(&weights(4, |i, j| if j == i + 1 { 0.8 } else { 0.0 }));
        assert_eq!(t.edge_pairs(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(tree_topology(&t).degrees(), &[1, 1, 2, 2]);
    }

    #[test]
    fn fixture_tree_has_nine_edges() {
        let t = maximum_spanning_tree(&pearson_true(&fixtures::uk2010()).unwrap());
        assert_eq!(t.edges().len(), 9);
        let topo = tree_topology(&t);
        assert_eq!(topo.degrees().iter().sum::<usize>(), 18);
        assert!(topo.degrees()[0] >= 1);
    }

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(4);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(!uf.union(1, 0));
        assert!(uf.union(1, 3));
        assert_eq!(uf.find(0), uf.find(2));
    }
}
