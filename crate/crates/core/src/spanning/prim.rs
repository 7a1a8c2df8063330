use super::heap::IndexedMinHeap;
use crate::error::{Error, Result};
use crate::graph::{format_weight, Edge, WeightedGraph};
use std::io::Write;

/// Marker for vertices and edges never reached by the trace.
pub const NEVER: u32 = u32::MAX;

/// One greedy move: `child` joins the tree through edge `edge` from `parent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub parent: u32,
    pub child: u32,
    pub w: f64,
    pub edge: u32,
}

/// Full record of Prim's algorithm from a root.
///
/// Step `k` (0-based) adds the vertex whose `vertex_step` is `k + 1`;
/// the root has `vertex_step` 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimTrace {
    root: usize,
    n: usize,
    steps: Vec<Step>,
    vertex_step: Vec<u32>,
    edge_step: Vec<u32>,
    order: Vec<u32>,
}

impl PrimTrace {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// False when the graph was disconnected and only the root's component
    /// was spanned.
    pub fn is_complete(&self) -> bool {
        self.steps.len() + 1 == self.n
    }

    /// Number of vertices the trace reaches.
    pub fn reached(&self) -> usize {
        self.order.len()
    }

    pub fn vertex_step(&self, v: usize) -> Option<usize> {
        match self.vertex_step[v] {
            NEVER => None,
            s => Some(s as usize),
        }
    }

    pub fn vertex_steps(&self) -> &[u32] {
        &self.vertex_step
    }

    /// Step (0-based) at which edge `e` entered the tree.
    pub fn edge_step(&self, e: usize) -> Option<usize> {
        match self.edge_step[e] {
            NEVER => None,
            s => Some(s as usize),
        }
    }

    pub fn edge_steps(&self) -> &[u32] {
        &self.edge_step
    }

    /// Vertices in the order they joined, root first.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Tree edge ids sorted ascending.
    pub fn edge_set(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.steps.iter().map(|s| s.edge).collect();
        ids.sort_unstable();
        ids
    }

    /// Whether `e` is among the first `k` steps.
    pub fn in_prefix(&self, e: usize, k: usize) -> bool {
        (self.edge_step[e] as usize) < k && self.edge_step[e] != NEVER
    }

    /// Re-scans the boundary of the tree before step `k` and checks that the
    /// recorded edge was the minimal one.
    pub fn replay_step(&self, g: &WeightedGraph, k: usize) -> bool {
        let Some(step) = self.steps.get(k) else {
            return false;
        };
        let inside = |v: usize| self.vertex_step[v] != NEVER && (self.vertex_step[v] as usize) <= k;
        let mut best: Option<usize> = None;
        for &t in &self.order[..=k] {
            for a in g.neighbors(t as usize) {
                if inside(a.to as usize) {
                    continue;
                }
                let e = a.edge as usize;
                if best.is_none_or(|b| g.edge_cmp(e, b).is_lt()) {
                    best = Some(e);
                }
            }
        }
        best == Some(step.edge as usize)
    }

    /// Trace file: header `root n`, then one `step u v w` line per step.
    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.root, self.n)?;
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(out, "{} {} {} {}", k, s.parent, s.child, format_weight(s.w))?;
        }
        Ok(())
    }
}

/// Runs Prim's algorithm from `root` with an indexed min-heap keyed by the
/// best boundary edge of each outside vertex.
pub fn prim_trace(g: &WeightedGraph, root: usize) -> Result<PrimTrace> {
    g.check_vertex(root)?;
    let n = g.n();
    let mut vertex_step = vec![NEVER; n];
    let mut edge_step = vec![NEVER; g.m()];
    let mut order = Vec::with_capacity(n);
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    let mut via = vec![NEVER; n];
    let mut heap = IndexedMinHeap::new(n);

    vertex_step[root] = 0;
    order.push(root as u32);
    let mut current = root;
    loop {
        for a in g.neighbors(current) {
            let to = a.to as usize;
            if vertex_step[to] != NEVER {
                continue;
            }
            let w = g.weight(a.edge as usize);
            if heap.push_or_decrease(to, w, a.edge) {
                via[to] = a.edge;
            }
        }
        let Some((v, w, e)) = heap.pop() else { break };
        let k = steps.len() as u32;
        let edge = g.edge(e as usize);
        steps.push(Step {
            parent: edge.other(v) as u32,
            child: v as u32,
            w,
            edge: e,
        });
        debug_assert_eq!(via[v], e);
        vertex_step[v] = k + 1;
        edge_step[e as usize] = k;
        order.push(v as u32);
        current = v;
    }
    Ok(PrimTrace {
        root,
        n,
        steps,
        vertex_step,
        edge_step,
        order,
    })
}

/// The tree after `k` steps, relabelled so that vertex `j` is the one added
/// at step `j` (the root is 0). `k` past the end yields the whole trace.
pub fn prim_prefix(trace: &PrimTrace, k: usize) -> Result<WeightedGraph> {
    let k = k.min(trace.steps.len());
    let edges = trace.steps[..k]
        .iter()
        .enumerate()
        .map(|(j, s)| Edge {
            u: trace.vertex_step[s.parent as usize],
            v: j as u32 + 1,
            w: s.w,
        })
        .collect();
    WeightedGraph::new(k + 1, edges)?.with_root(0)
}

/// `⌊n^alpha⌋`, robust to `powf` landing a hair below an exact integer.
pub fn sublinear_steps(n: usize, alpha: f64) -> Result<usize> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let x = (n as f64).powf(alpha);
    let near = x.round();
    if (x - near).abs() <= 1e-9 * near.max(1.0) {
        Ok(near as usize)
    } else {
        Ok(x.floor() as usize)
    }
}

/// Edge ids of the `⌊n^alpha⌋`-step prefix, a finite stand-in for the
/// invasion percolation cluster.
pub fn ipc_approx(trace: &PrimTrace, alpha: f64) -> Result<Vec<u32>> {
    let k = sublinear_steps(trace.n, alpha)?.min(trace.steps.len());
    let mut ids: Vec<u32> = trace.steps[..k].iter().map(|s| s.edge).collect();
    ids.sort_unstable();
    Ok(ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{from_triples, path};

    #[test]
    fn single_edge_is_a_forced_move() {
        let g = path(&[0.42]);
        let t = prim_trace(&g, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.steps()[0].child, 1);
        assert!(t.is_complete());
    }

    #[test]
    fn triangle_skips_heavy_edge() {
        // root 0 touches 0.1 and 0.9; 0.2 closes the other side
        let g = from_triples(3, &[(0, 1, 0.1), (1, 2, 0.2), (0, 2, 0.9)]);
        let t = prim_trace(&g, 0).unwrap();
        let ws: Vec<f64> = t.steps().iter().map(|s| s.w).collect();
        assert_eq!(ws, vec![0.1, 0.2]);
        assert_eq!(t.edge_step(2), None);
        assert_eq!(t.order(), &[0, 1, 2]);
    }

    #[test]
    fn disconnected_input_spans_root_component() {
        let g = from_triples(5, &[(0, 1, 0.3), (1, 2, 0.5), (3, 4, 0.1)]);
        let t = prim_trace(&g, 1).unwrap();
        assert!(!t.is_complete());
        assert_eq!(t.reached(), 3);
        assert_eq!(t.vertex_step(4), None);
    }

    #[test]
    fn prefix_lengths() {
        let g = from_triples(4, &[(0, 1, 0.3), (1, 2, 0.5), (2, 3, 0.1), (0, 3, 0.9)]);
        let t = prim_trace(&g, 0).unwrap();
        let p0 = prim_prefix(&t, 0).unwrap();
        assert_eq!((p0.n(), p0.m()), (1, 0));
        let full = prim_prefix(&t, 10).unwrap();
        assert_eq!((full.n(), full.m()), (4, 3));
        let mut ws: Vec<f64> = full.edges().iter().map(|e| e.w).collect();
        ws.sort_by(f64::total_cmp);
        assert_eq!(ws, vec![0.1, 0.3, 0.5]);
        for j in 1..4 {
            assert_eq!(full.degree(j) >= 1, true);
        }
    }

    #[test]
    fn sublinear_steps_arithmetic() {
        assert_eq!(sublinear_steps(1_000_000, 2.0 / 3.0).unwrap(), 10_000);
        assert_eq!(sublinear_steps(1000, 2.0 / 3.0).unwrap(), 100);
        assert_eq!(sublinear_steps(10, 0.5).unwrap(), 3);
        assert!(sublinear_steps(10, 1.0).is_err());
        assert!(sublinear_steps(10, 0.0).is_err());
    }

    #[test]
    fn trace_file_layout() {
        let g = from_triples(3, &[(0, 1, 0.1), (1, 2, 0.2)]);
        let t = prim_trace(&g, 0).unwrap();
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 3\n0 0 1 0.10000000000000001\n1 1 2 0.20000000000000001\n");
    }
}
