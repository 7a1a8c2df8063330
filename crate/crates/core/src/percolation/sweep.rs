use crate::graph::{UnionFind, WeightedGraph};
use std::collections::BTreeMap;

/// Sizes of the two largest components of `G(p)` for each level in
/// `levels` (sorted ascending), in one pass over the sorted edges.
pub fn largest_two_sweep(g: &WeightedGraph, levels: &[f64]) -> Vec<(usize, usize)> {
    debug_assert!(levels.windows(2).all(|w| w[0] <= w[1]));
    let n = g.n();
    let order = g.edges_by_weight();
    let mut uf = UnionFind::new(n);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    if n > 0 {
        counts.insert(1, n);
    }
    let mut next = 0;
    let mut out = Vec::with_capacity(levels.len());
    for &p in levels {
        while next < order.len() {
            let e = g.edge(order[next] as usize);
            if e.w > p {
                break;
            }
            next += 1;
            let (a, b) = (uf.size_of(e.u as usize), uf.size_of(e.v as usize));
            if uf.union(e.u as usize, e.v as usize).is_some() {
                for s in [a, b] {
                    let c = counts.get_mut(&s).expect("tracked size");
                    *c -= 1;
                    if *c == 0 {
                        counts.remove(&s);
                    }
                }
                *counts.entry(a + b).or_insert(0) += 1;
            }
        }
        out.push(top_two(&counts));
    }
    out
}

fn top_two(counts: &BTreeMap<usize, usize>) -> (usize, usize) {
    let mut it = counts.iter().rev();
    match it.next() {
        None => (0, 0),
        Some((&s, &c)) if c >= 2 => (s, s),
        Some((&s, _)) => (s, it.next().map_or(0, |(&t, _)| t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_erdos_renyi;
    use crate::graph::percolate;

    #[test]
    fn agrees_with_direct_decomposition() {
        let g = gen_erdos_renyi(2000, 1.5, 17).unwrap();
        let levels: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let swept = largest_two_sweep(&g, &levels);
        for (&p, &(c1, c2)) in levels.iter().zip(&swept) {
            let d = percolate(&g, p).unwrap();
            assert_eq!((c1, c2), (d.largest(), d.second()), "p = {p}");
        }
    }
}
