//! Weighted graph storage (CSR adjacency), percolation, balls and the local
//! metric.

mod ball;
mod format;
mod iso;
mod percolate;
mod union_find;

pub use ball::{ball, ball_filtered, RootedBall, DEFAULT_BALL_CAP};
pub use format::{format_weight, read_graph, write_graph};
pub use iso::{eps_isomorphic, equivalent_at, local_distance, IsoOptions, LocalDistance};
pub use percolate::{almost_local_statistic, percolate, ComponentDecomposition};
pub use union_find::UnionFind;

use crate::error::{check_unit, Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Largest admissible vertex count; `u32::MAX` is reserved as a sentinel.
pub const MAX_VERTICES: usize = (u32::MAX - 1) as usize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub w: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Edge {
            u: u as u32,
            v: v as u32,
            w,
        }
    }

    /// The endpoint that is not `x`.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if self.u as usize == x {
            self.v as usize
        } else {
            self.u as usize
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adjacent {
    pub to: u32,
    pub edge: u32,
}

/// Finite, immutable, rooted weighted graph.
///
/// Weights lie in `[0, 1]`. Edges are totally ordered by `(weight, index)`;
/// with continuous weights the index only matters on exact float ties, which
/// keeps Prim, Kruskal and percolation consistent with one unique MST.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<Adjacent>,
    root: Option<usize>,
    seed: u64,
}

impl WeightedGraph {
    /// Validates and builds the adjacency. Rejects self-loops, repeated
    /// vertex pairs, endpoints out of range and weights outside `[0, 1]`.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        if edges.len() >= u32::MAX as usize {
            return Err(Error::InvalidGraph(format!("too many edges: {}", edges.len())));
        }
        let mut degree = vec![0usize; n];
        for (i, e) in edges.iter().enumerate() {
            let (u, v) = (e.u as usize, e.v as usize);
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {i} is a self-loop at {u}")));
            }
            if !(0.0..=1.0).contains(&e.w) {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} has weight {} outside [0, 1]",
                    e.w
                )));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adjacency = vec![Adjacent { to: 0, edge: 0 }; offsets[n]];
        for (i, e) in edges.iter().enumerate() {
            adjacency[fill[e.u as usize]] = Adjacent { to: e.v, edge: i as u32 };
            fill[e.u as usize] += 1;
            adjacency[fill[e.v as usize]] = Adjacent { to: e.u, edge: i as u32 };
            fill[e.v as usize] += 1;
        }
        let mut scratch = Vec::new();
        for v in 0..n {
            scratch.clear();
            scratch.extend(adjacency[offsets[v]..offsets[v + 1]].iter().map(|a| a.to));
            scratch.sort_unstable();
            if let Some(w) = scratch.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge between {v} and {}",
                    w[0]
                )));
            }
        }
        Ok(WeightedGraph {
            n,
            edges,
            offsets,
            adjacency,
            root: None,
            seed: 0,
        })
    }

    pub fn with_root(mut self, root: usize) -> Result<Self> {
        self.check_vertex(root)?;
        self.root = Some(root);
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn require_root(&self) -> Result<usize> {
        self.root.ok_or(Error::Unrooted)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    #[inline]
    pub fn weight(&self, e: usize) -> f64 {
        self.edges[e].w
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[Adjacent] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfBounds { vertex: v, n: self.n })
        }
    }

    /// Total order on edges: weight first, index on exact ties.
    #[inline]
    pub fn edge_cmp(&self, a: usize, b: usize) -> Ordering {
        self.edges[a]
            .w
            .total_cmp(&self.edges[b].w)
            .then(a.cmp(&b))
    }

    /// Edge indices sorted by [`edge_cmp`](Self::edge_cmp).
    pub fn edges_by_weight(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.edges.len() as u32).collect();
        order.sort_unstable_by(|&a, &b| self.edge_cmp(a as usize, b as usize));
        order
    }

    /// Edge index joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u)
            .iter()
            .find(|a| a.to as usize == v)
            .map(|a| a.edge as usize)
    }

    /// Number of connected components (all edges kept).
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.u as usize, e.v as usize);
        }
        uf.set_count()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Subgraph on the edges selected by `keep`, with the same vertex set,
    /// root and seed.
    pub fn edge_subgraph(&self, keep: impl Fn(usize) -> bool) -> WeightedGraph {
        let edges: Vec<Edge> = (0..self.m()).filter(|&e| keep(e)).map(|e| self.edges[e]).collect();
        let mut g = WeightedGraph::new(self.n, edges).expect("subgraph of a valid graph is valid");
        g.root = self.root;
        g.seed = self.seed;
        g
    }

    /// Edges kept at percolation level `p` (those with `w <= p`).
    pub fn percolated(&self, p: f64) -> Result<WeightedGraph> {
        check_unit("p", p)?;
        Ok(self.edge_subgraph(|e| self.edges[e].w <= p))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn from_triples(n: usize, triples: &[(usize, usize, f64)]) -> WeightedGraph {
        let edges = triples.iter().map(|&(u, v, w)| Edge::new(u, v, w)).collect();
        WeightedGraph::new(n, edges).unwrap().with_root(0).unwrap()
    }

    /// Path 0 - 1 - ... - (len) with the given weights.
    pub fn path(weights: &[f64]) -> WeightedGraph {
        let t: Vec<_> = weights.iter().enumerate().map(|(i, &w)| (i, i + 1, w)).collect();
        from_triples(weights.len() + 1, &t)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_self_loops_duplicates_and_bad_weights() {
        assert!(WeightedGraph::new(2, vec![Edge::new(1, 1, 0.5)]).is_err());
        assert!(WeightedGraph::new(2, vec![Edge::new(0, 1, 0.5), Edge::new(1, 0, 0.6)]).is_err());
        assert!(WeightedGraph::new(2, vec![Edge::new(0, 1, 1.5)]).is_err());
        assert!(WeightedGraph::new(2, vec![Edge::new(0, 2, 0.5)]).is_err());
        assert!(WeightedGraph::new(2, vec![Edge::new(0, 1, 0.5)]).unwrap().with_root(2).is_err());
    }

    #[test]
    fn adjacency_matches_edge_list() {
        let g = from_triples(4, &[(0, 1, 0.1), (1, 2, 0.2), (2, 0, 0.3), (2, 3, 0.4)]);
        let mut seen = vec![0usize; g.m()];
        for v in 0..g.n() {
            for a in g.neighbors(v) {
                let e = g.edge(a.edge as usize);
                assert_eq!(e.other(v), a.to as usize);
                seen[a.edge as usize] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 2));
        assert_eq!(g.degree(2), 3);
        assert_eq!(g.find_edge(3, 2), Some(3));
    }

    #[test]
    fn ties_are_ordered_by_index() {
        let g = from_triples(3, &[(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.25)]);
        assert_eq!(g.edges_by_weight(), vec![2, 0, 1]);
    }

    #[test]
    fn percolated_keeps_light_edges() {
        let g = path(&[0.3, 0.7]);
        let h = g.percolated(0.5).unwrap();
        assert_eq!(h.m(), 1);
        assert_eq!(h.root(), Some(0));
        assert!(g.percolated(1.2).is_err());
    }
}
