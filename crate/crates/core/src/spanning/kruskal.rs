use crate::graph::{UnionFind, WeightedGraph};

/// Minimum spanning forest by sorting and union-find; sorted edge ids.
pub fn kruskal_mst(g: &WeightedGraph) -> Vec<u32> {
    let mut uf = UnionFind::new(g.n());
    let mut kept = Vec::with_capacity(g.n().saturating_sub(1));
    for e in g.edges_by_weight() {
        let edge = g.edge(e as usize);
        if uf.union(edge.u as usize, edge.v as usize).is_some() {
            kept.push(e);
        }
    }
    kept.sort_unstable();
    kept
}

/// Forest edges restricted to the component of `v`.
pub fn mst_component(g: &WeightedGraph, mst: &[u32], v: usize) -> Vec<u32> {
    let mut uf = UnionFind::new(g.n());
    for &e in mst {
        let edge = g.edge(e as usize);
        uf.union(edge.u as usize, edge.v as usize);
    }
    let r = uf.find(v);
    mst.iter()
        .copied()
        .filter(|&e| uf.find(g.edge(e as usize).u as usize) == r)
        .collect()
}
