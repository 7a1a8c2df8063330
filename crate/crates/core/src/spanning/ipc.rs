use super::prim::PrimTrace;
use crate::error::{Error, Result};
use crate::graph::{percolate, ComponentDecomposition, WeightedGraph};

/// Steps Prim takes before touching the largest component, and the vertex
/// through which it enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reach {
    pub k: usize,
    /// `None` when the largest component is never touched (`k = n - 1`).
    pub entry_vertex: Option<usize>,
}

impl Reach {
    pub fn never(&self) -> bool {
        self.entry_vertex.is_none()
    }
}

/// `K` is the step of the first vertex of the largest component in Prim
/// order, so `K = 0` exactly when the root lies in it.
pub fn reach_step(trace: &PrimTrace, decomp: &ComponentDecomposition) -> Result<Reach> {
    if decomp.n() != trace.n() {
        return Err(Error::InvalidParameter(format!(
            "decomposition has {} vertices, trace {}",
            decomp.n(),
            trace.n()
        )));
    }
    let never = Reach {
        k: trace.n().saturating_sub(1),
        entry_vertex: None,
    };
    if decomp.largest() <= 1 && trace.n() > 1 {
        return Ok(never);
    }
    let entry = trace.order().iter().map(|&v| v as usize).find(|&v| decomp.in_largest(v));
    Ok(match entry {
        Some(v) => Reach {
            k: trace.vertex_step(v).expect("ordered vertex has a step"),
            entry_vertex: Some(v),
        },
        None => never,
    })
}

/// Finite expanded invasion cluster at level `p`: the first `K` Prim steps
/// joined with the spanning-forest edges inside the entry component.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedIpc {
    level: f64,
    reach: Reach,
    vertices: Vec<u32>,
    edges: Vec<u32>,
    member: Vec<bool>,
}

impl ExpandedIpc {
    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn k(&self) -> usize {
        self.reach.k
    }

    pub fn reach(&self) -> Reach {
        self.reach
    }

    pub fn entry_vertex(&self) -> Option<usize> {
        self.reach.entry_vertex
    }

    /// Source vertex ids, sorted.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Source edge ids, sorted.
    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.member[e]
    }
}

pub fn expanded_ipc(g: &WeightedGraph, trace: &PrimTrace, mst: &[u32], p: f64) -> Result<ExpandedIpc> {
    let decomp = percolate(g, p)?;
    expanded_ipc_with(g, trace, mst, &decomp)
}

/// As [`expanded_ipc`] with a precomputed decomposition of `g`.
pub fn expanded_ipc_with(
    g: &WeightedGraph,
    trace: &PrimTrace,
    mst: &[u32],
    decomp: &ComponentDecomposition,
) -> Result<ExpandedIpc> {
    let reach = reach_step(trace, decomp)?;
    let mut chosen = vec![false; g.m()];
    for s in &trace.steps()[..reach.k.min(trace.len())] {
        chosen[s.edge as usize] = true;
    }
    if let Some(v) = reach.entry_vertex {
        let label = decomp.label(v);
        for &e in mst {
            let edge = g.edge(e as usize);
            if decomp.label(edge.u as usize) == label && decomp.label(edge.v as usize) == label {
                chosen[e as usize] = true;
            }
        }
    }

    // keep the root's component of the union
    let root = trace.root();
    let mut seen = vec![false; g.n()];
    let mut member = vec![false; g.m()];
    let mut stack = vec![root];
    seen[root] = true;
    let mut vertices = vec![root as u32];
    while let Some(x) = stack.pop() {
        for a in g.neighbors(x) {
            if !chosen[a.edge as usize] {
                continue;
            }
            member[a.edge as usize] = true;
            let y = a.to as usize;
            if !seen[y] {
                seen[y] = true;
                vertices.push(y as u32);
                stack.push(y);
            }
        }
    }
    vertices.sort_unstable();
    let edges = (0..g.m() as u32).filter(|&e| member[e as usize]).collect();
    Ok(ExpandedIpc {
        level: decomp.level(),
        reach,
        vertices,
        edges,
        member,
    })
}

/// Number of Prim steps whose prefix should match the expanded cluster:
/// `K` steps to reach the entry vertex plus `|C₍₁₎| − 1` inside it.
pub fn matching_prefix_steps(reach: &Reach, decomp: &ComponentDecomposition) -> usize {
    match reach.entry_vertex {
        Some(_) => reach.k + decomp.largest() - 1,
        None => reach.k,
    }
}


#[cfg(test)]
mod tests {
    use super::super::{kruskal_mst, prim_trace};
    use super::*;
    use crate::graph::fixtures::from_triples;

    // root 0 - 1 heavy, 1..4 a light cluster, 0 - 5 light dead end
    fn lollipop() -> WeightedGraph {
        from_triples(
            6,
            &[(0, 1, 0.8), (1, 2, 0.1), (2, 3, 0.2), (3, 4, 0.15), (1, 4, 0.3), (0, 5, 0.05)],
        )
    }

    #[test]
    fn reach_counts_steps_before_entry() {
        let g = lollipop();
        let t = prim_trace(&g, 0).unwrap();
        let d = percolate(&g, 0.5).unwrap();
        assert_eq!(d.largest(), 4);
        let r = reach_step(&t, &d).unwrap();
        // 0 -> 5 (0.05), then 0 -> 1 (0.8): vertex 1 has step 2
        assert_eq!(r, Reach { k: 2, entry_vertex: Some(1) });
        let ipc = expanded_ipc(&g, &t, &kruskal_mst(&g), 0.5).unwrap();
        assert_eq!(ipc.vertices(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(ipc.edges().len(), 5);
        assert_eq!(matching_prefix_steps(&r, &d), 5);
    }

    #[test]
    fn root_in_giant_gives_zero() {
        let g = lollipop();
        let t = prim_trace(&g, 2).unwrap();
        let d = percolate(&g, 0.5).unwrap();
        let r = reach_step(&t, &d).unwrap();
        assert_eq!(r, Reach { k: 0, entry_vertex: Some(2) });
        let ipc = expanded_ipc_with(&g, &t, &kruskal_mst(&g), &d).unwrap();
        assert_eq!(ipc.vertices(), &[1, 2, 3, 4]);
    }

    #[test]
    fn level_one_gives_whole_tree() {
        let g = lollipop();
        let t = prim_trace(&g, 0).unwrap();
        let mst = kruskal_mst(&g);
        let ipc = expanded_ipc(&g, &t, &mst, 1.0).unwrap();
        assert_eq!(ipc.k(), 0);
        assert_eq!(ipc.edges(), mst.as_slice());
    }

    #[test]
    fn level_zero_is_the_sentinel() {
        let g = lollipop();
        let t = prim_trace(&g, 0).unwrap();
        let d = percolate(&g, 0.0).unwrap();
        let r = reach_step(&t, &d).unwrap();
        assert!(r.never());
        assert_eq!(r.k, 5);
        let ipc = expanded_ipc_with(&g, &t, &kruskal_mst(&g), &d).unwrap();
        assert_eq!(ipc.edges().len(), 5);
    }
}
