use super::{UnionFind, WeightedGraph};
use crate::error::{check_unit, Error, Result};

/// Connected components of `G(p)`, ranked by decreasing size.
///
/// Component ids *are* ranks: id 0 is `C(1)`, the largest component, with ties
/// broken by the smallest contained vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDecomposition {
    level: f64,
    labels: Vec<u32>,
    sizes: Vec<usize>,
}

/// Union-find over the edges with `w <= p`.
pub fn percolate(g: &WeightedGraph, p: f64) -> Result<ComponentDecomposition> {
    check_unit("p", p)?;
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for e in g.edges() {
        if e.w <= p {
            uf.union(e.u as usize, e.v as usize);
        }
    }
    // First visit of each set root in increasing vertex order gives its
    // smallest vertex.
    const UNSET: u32 = u32::MAX;
    let mut slot = vec![UNSET; n];
    let mut comps: Vec<(usize, usize)> = Vec::new(); // (size, min vertex)
    let mut raw = vec![0u32; n];
    for v in 0..n {
        let r = uf.find(v);
        if slot[r] == UNSET {
            slot[r] = comps.len() as u32;
            comps.push((uf.size_of(r), v));
        }
        raw[v] = slot[r];
    }
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_unstable_by(|&a, &b| comps[b].0.cmp(&comps[a].0).then(comps[a].1.cmp(&comps[b].1)));
    let mut rank = vec![0u32; comps.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r as u32;
    }
    let labels = raw.iter().map(|&c| rank[c as usize]).collect();
    let sizes = order.iter().map(|&c| comps[c].0).collect();
    Ok(ComponentDecomposition {
        level: p,
        labels,
        sizes,
    })
}

impl ComponentDecomposition {
    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Rank of the component containing `v` (0 = largest).
    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.labels[v] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Component sizes, non-increasing.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// `|C_v(p)|`.
    #[inline]
    pub fn size_of(&self, v: usize) -> usize {
        self.sizes[self.labels[v] as usize]
    }

    /// `|C(1)(p)|`, or 0 on the empty graph.
    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    /// `|C(2)(p)|`, or 0 when there is a single component.
    pub fn second(&self) -> usize {
        self.sizes.get(1).copied().unwrap_or(0)
    }

    #[inline]
    pub fn in_largest(&self, v: usize) -> bool {
        self.labels[v] == 0
    }

    pub fn same(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }

    /// Vertices of the component with the given rank, ascending.
    pub fn members(&self, rank: usize) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.labels[v] as usize == rank)
            .collect()
    }

    /// `#{(u,v) : |C_u| >= k, |C_v| >= k, C_u != C_v} / n^2`, computed from
    /// the size list as `(S^2 - sum s_i^2) / n^2` over components of size >= k.
    pub fn almost_local(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::InvalidParameter("size cutoff k must be >= 1".into()));
        }
        let n = self.labels.len();
        if n == 0 {
            return Ok(0.0);
        }
        let (mut total, mut squares) = (0u128, 0u128);
        for &s in self.sizes.iter().take_while(|&&s| s >= k) {
            total += s as u128;
            squares += (s as u128) * (s as u128);
        }
        let pairs = total * total - squares;
        Ok(pairs as f64 / ((n as f64) * (n as f64)))
    }
}

/// Pair-counting statistic for "the percolation giant is almost local".
pub fn almost_local_statistic(g: &WeightedGraph, p: f64, k: usize) -> Result<f64> {
    percolate(g, p)?.almost_local(k)
}
