use super::WeightedGraph;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Default vertex cap for extracted balls.
pub const DEFAULT_BALL_CAP: usize = 512;

/// Rooted weighted ball `B_r(G, o)`. Local ids follow BFS discovery order, so
/// the root is local 0 and depths are non-decreasing in the local id.
#[derive(Debug, Clone, PartialEq)]
pub struct RootedBall {
    radius: usize,
    vertices: Vec<usize>,
    depth: Vec<u32>,
    edges: Vec<(u32, u32, f64)>,
    adjacency: Vec<Vec<(u32, f64)>>,
}

impl RootedBall {
    /// Builds a ball directly from local data; vertices must be listed in BFS
    /// order from local 0 and `depth` must be consistent with `edges`.
    pub fn from_parts(radius: usize, vertices: Vec<usize>, depth: Vec<u32>, edges: Vec<(u32, u32, f64)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(u, v, w) in &edges {
            adjacency[u as usize].push((v, w));
            adjacency[v as usize].push((u, w));
        }
        RootedBall {
            radius,
            vertices,
            depth,
            edges,
            adjacency,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Source-graph ids; index = local id.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn depth(&self, local: usize) -> usize {
        self.depth[local] as usize
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    pub fn edges(&self) -> &[(u32, u32, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, local: usize) -> &[(u32, f64)] {
        &self.adjacency[local]
    }

    pub fn degree(&self, local: usize) -> usize {
        self.adjacency[local].len()
    }
}

/// `B_r(G, v)`: every vertex within `r` hops and every edge of `G` between two
/// of them. Fails with [`Error::BallOverflow`] above [`DEFAULT_BALL_CAP`].
pub fn ball(g: &WeightedGraph, v: usize, r: usize) -> Result<RootedBall> {
    ball_filtered(g, v, r, DEFAULT_BALL_CAP, |_| true)
}

/// Ball in the subgraph formed by the edges accepted by `keep`.
pub fn ball_filtered(
    g: &WeightedGraph,
    v: usize,
    r: usize,
    cap: usize,
    keep: impl Fn(usize) -> bool,
) -> Result<RootedBall> {
    g.check_vertex(v)?;
    let mut local: HashMap<u32, u32> = HashMap::new();
    let mut vertices = vec![v];
    let mut depth = vec![0u32];
    local.insert(v as u32, 0);
    let mut head = 0;
    while head < vertices.len() {
        let x = vertices[head];
        let dx = depth[head];
        head += 1;
        if dx as usize >= r {
            continue;
        }
        for a in g.neighbors(x) {
            if !keep(a.edge as usize) || local.contains_key(&a.to) {
                continue;
            }
            if vertices.len() >= cap {
                return Err(Error::BallOverflow { root: v, cap });
            }
            local.insert(a.to, vertices.len() as u32);
            vertices.push(a.to as usize);
            depth.push(dx + 1);
        }
    }
    let mut edges = Vec::new();
    for (lx, &x) in vertices.iter().enumerate() {
        for a in g.neighbors(x) {
            if !keep(a.edge as usize) {
                continue;
            }
            if let Some(&ly) = local.get(&a.to) {
                if (lx as u32) < ly {
                    edges.push((lx as u32, ly, g.weight(a.edge as usize)));
                }
            }
        }
    }
    Ok(RootedBall::from_parts(r, vertices, depth, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::Edge;

    fn grid(side: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        let mut w = 0.0;
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c;
                if c + 1 < side {
                    w += 0.001;
                    edges.push(Edge::new(v, v + 1, w));
                }
                if r + 1 < side {
                    w += 0.001;
                    edges.push(Edge::new(v, v + side, w));
                }
            }
        }
        WeightedGraph::new(side * side, edges).unwrap()
    }

    #[test]
    fn radius_zero_is_just_the_root() {
        let g = path(&[0.1, 0.2]);
        let b = ball(&g, 1, 0).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.edges().is_empty());
        assert_eq!(b.vertices(), &[1]);
    }

    #[test]
    fn star_radius_one() {
        let g = from_triples(4, &[(0, 1, 0.1), (0, 2, 0.2), (0, 3, 0.3)]);
        let b = ball(&g, 0, 1).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.edges().len(), 3);
    }

    #[test]
    fn radius_one_includes_edges_between_neighbours() {
        let g = from_triples(3, &[(0, 1, 0.1), (0, 2, 0.2), (1, 2, 0.3)]);
        let b = ball(&g, 0, 1).unwrap();
        assert_eq!(b.edges().len(), 3);
    }

    #[test]
    fn grid_centre_radius_two_has_thirteen_vertices() {
        // lattice points with l1 distance <= 2
        let oracle = (-2i32..=2)
            .flat_map(|x| (-2i32..=2).map(move |y| (x, y)))
            .filter(|(x, y)| x.abs() + y.abs() <= 2)
            .count();
        let g = grid(5);
        let b = ball(&g, 12, 2).unwrap();
        assert_eq!(b.len(), oracle);
        assert_eq!(oracle, 13);
        for (i, &v) in b.vertices().iter().enumerate() {
            let (r, c) = ((v / 5) as i32, (v % 5) as i32);
            assert_eq!(b.depth(i) as i32, (r - 2).abs() + (c - 2).abs());
        }
    }

    #[test]
    fn overflow_is_an_error() {
        let g = grid(5);
        assert!(matches!(
            ball_filtered(&g, 12, 4, 10, |_| true),
            Err(Error::BallOverflow { cap: 10, .. })
        ));
    }

    #[test]
    fn grows_monotonically_and_stabilises_at_the_component() {
        let g = from_triples(6, &[(0, 1, 0.1), (1, 2, 0.2), (2, 3, 0.3), (4, 5, 0.4)]);
        let mut prev = 0;
        for r in 0..6 {
            let b = ball(&g, 0, r).unwrap();
            assert!(b.len() >= prev);
            prev = b.len();
        }
        assert_eq!(prev, 4);
    }

    #[test]
    fn filtered_ball_follows_only_kept_edges() {
        let g = from_triples(4, &[(0, 1, 0.1), (1, 2, 0.9), (0, 3, 0.2)]);
        let b = ball_filtered(&g, 0, 3, 16, |e| g.weight(e) < 0.5).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b.edges().len(), 2);
    }
}
