//! Deterministic graph families with their standard extensions: i.i.d.
//! uniform weights drawn independently of the structure, and a root.

use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedGraph, MAX_VERTICES};
use crate::rng::{mix, stream, STREAM_BRIDGES, STREAM_ROOT, STREAM_STRUCTURE, STREAM_WEIGHTS};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Whole-pairing resamples allowed in the configuration model.
pub const REGULAR_RETRY_CAP: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Torus,
    Open,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Grid { side: usize, boundary: Boundary },
    Triangular { side: usize, boundary: Boundary },
    RandomRegular { n: usize, d: usize },
    ErdosRenyi { n: usize, lambda: f64 },
    Union { a: Box<GenSpec>, b: Box<GenSpec>, bridges: usize },
}

/// A graph family, its parameters and a seed. Equal specs generate
/// identical graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl GenSpec {
    pub fn grid(side: usize, boundary: Boundary, seed: u64) -> Self {
        GenSpec {
            family: Family::Grid { side, boundary },
            seed,
        }
    }

    pub fn triangular(side: usize, boundary: Boundary, seed: u64) -> Self {
        GenSpec {
            family: Family::Triangular { side, boundary },
            seed,
        }
    }

    pub fn random_regular(n: usize, d: usize, seed: u64) -> Self {
        GenSpec {
            family: Family::RandomRegular { n, d },
            seed,
        }
    }

    pub fn erdos_renyi(n: usize, lambda: f64, seed: u64) -> Self {
        GenSpec {
            family: Family::ErdosRenyi { n, lambda },
            seed,
        }
    }

    pub fn union(a: GenSpec, b: GenSpec, bridges: usize, seed: u64) -> Self {
        GenSpec {
            family: Family::Union {
                a: Box::new(a),
                b: Box::new(b),
                bridges,
            },
            seed,
        }
    }

    /// Same family with a new seed; union children get seeds derived from it.
    pub fn with_seed(&self, seed: u64) -> GenSpec {
        let family = match &self.family {
            Family::Union { a, b, bridges } => Family::Union {
                a: Box::new(a.with_seed(mix(seed ^ 0xA))),
                b: Box::new(b.with_seed(mix(seed ^ 0xB))),
                bridges: *bridges,
            },
            f => f.clone(),
        };
        GenSpec { family, seed }
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Grid { .. } => "grid",
            Family::Triangular { .. } => "triangular",
            Family::RandomRegular { .. } => "random-regular",
            Family::ErdosRenyi { .. } => "erdos-renyi",
            Family::Union { .. } => "union",
        }
    }

    /// Number of vertices the spec produces.
    pub fn vertex_count(&self) -> usize {
        match &self.family {
            Family::Grid { side, .. } | Family::Triangular { side, .. } => side.saturating_mul(*side),
            Family::RandomRegular { n, .. } | Family::ErdosRenyi { n, .. } => *n,
            Family::Union { a, b, .. } => a.vertex_count() + b.vertex_count(),
        }
    }

    /// Side length for the planar lattice families.
    pub fn lattice_side(&self) -> Option<usize> {
        match self.family {
            Family::Grid { side, .. } | Family::Triangular { side, .. } => Some(side),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.family {
            Family::Grid { side, .. } => lattice_size(*side).map(|_| ()),
            Family::Triangular { side, boundary } => {
                lattice_size(*side)?;
                if *boundary == Boundary::Torus && *side < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "triangular torus needs side >= 3 (side {side} wraps onto duplicate pairs)"
                    )));
                }
                Ok(())
            }
            Family::RandomRegular { n, d } => {
                if *d == 0 || d >= n {
                    return Err(Error::InvalidParameter(format!("random-regular needs 0 < d < n (n = {n}, d = {d})")));
                }
                if (n * d) % 2 == 1 {
                    return Err(Error::InvalidParameter(format!("n*d must be even (n = {n}, d = {d})")));
                }
                if *n > MAX_VERTICES {
                    return Err(Error::InvalidParameter(format!("n = {n} too large")));
                }
                Ok(())
            }
            Family::ErdosRenyi { n, lambda } => {
                if *n < 2 || *n > MAX_VERTICES {
                    return Err(Error::InvalidParameter(format!("erdos-renyi needs 2 <= n <= {MAX_VERTICES}")));
                }
                if !(*lambda > 0.0) || lambda / *n as f64 >= 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "edge probability lambda/n = {}/{} must lie in (0, 1)",
                        lambda, n
                    )));
                }
                Ok(())
            }
            Family::Union { a, b, .. } => {
                a.validate()?;
                b.validate()?;
                if a.vertex_count() + b.vertex_count() > MAX_VERTICES {
                    return Err(Error::InvalidParameter("union too large".into()));
                }
                Ok(())
            }
        }
    }

    pub fn generate(&self) -> Result<WeightedGraph> {
        match &self.family {
            Family::Grid { side, boundary } => gen_grid(*side, *boundary, self.seed),
            Family::Triangular { side, boundary } => gen_triangular(*side, *boundary, self.seed),
            Family::RandomRegular { n, d } => gen_random_regular(*n, *d, self.seed),
            Family::ErdosRenyi { n, lambda } => gen_erdos_renyi(*n, *lambda, self.seed),
            Family::Union { a, b, bridges } => gen_union(a, b, *bridges, self.seed),
        }
    }
}

fn lattice_size(side: usize) -> Result<usize> {
    if side < 2 {
        return Err(Error::InvalidParameter(format!("lattice side must be >= 2, got {side}")));
    }
    side.checked_mul(side)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| Error::InvalidParameter(format!("side {side} overflows the vertex count")))
}

/// Attaches i.i.d. uniform weights to `pairs` in order.
fn with_weights(n: usize, pairs: Vec<(u32, u32)>, seed: u64) -> Result<WeightedGraph> {
    let mut rng = stream(seed, STREAM_WEIGHTS);
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge { u, v, w: rng.random::<f64>() })
        .collect();
    Ok(WeightedGraph::new(n, edges)?.with_seed(seed))
}

fn uniform_root(g: WeightedGraph, seed: u64) -> Result<WeightedGraph> {
    let root = stream(seed, STREAM_ROOT).random_range(0..g.n());
    g.with_root(root)
}

/// Square lattice; vertex `row * side + col`, rooted at the centre.
pub fn gen_grid(side: usize, boundary: Boundary, seed: u64) -> Result<WeightedGraph> {
    let n = lattice_size(side)?;
    let pairs = lattice_pairs(side, boundary, false);
    with_weights(n, pairs, seed)?.with_root(lattice_centre(side))
}

/// Square lattice plus the `(r, c)`-`(r+1, c+1)` diagonal of every cell.
pub fn gen_triangular(side: usize, boundary: Boundary, seed: u64) -> Result<WeightedGraph> {
    GenSpec::triangular(side, boundary, seed).validate()?;
    let n = lattice_size(side)?;
    let pairs = lattice_pairs(side, boundary, true);
    with_weights(n, pairs, seed)?.with_root(lattice_centre(side))
}

pub fn lattice_centre(side: usize) -> usize {
    (side / 2) * side + side / 2
}

fn lattice_pairs(side: usize, boundary: Boundary, diagonals: bool) -> Vec<(u32, u32)> {
    let torus = boundary == Boundary::Torus;
    let id = |r: usize, c: usize| (r * side + c) as u32;
    let per_vertex = if diagonals { 3 } else { 2 };
    let mut pairs = Vec::with_capacity(side * side * per_vertex);
    for r in 0..side {
        for c in 0..side {
            let right = c + 1 < side || (torus && side > 2);
            let down = r + 1 < side || (torus && side > 2);
            if right {
                pairs.push((id(r, c), id(r, (c + 1) % side)));
            }
            if down {
                pairs.push((id(r, c), id((r + 1) % side, c)));
            }
            if diagonals && right && down {
                pairs.push((id(r, c), id((r + 1) % side, (c + 1) % side)));
            }
        }
    }
    pairs
}

/// Configuration-model `d`-regular graph, resampling the whole pairing until
/// it is simple.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<WeightedGraph> {
    GenSpec::random_regular(n, d, seed).validate()?;
    let mut rng = stream(seed, STREAM_STRUCTURE);
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(stubs.len() / 2);
    let mut sorted: Vec<(u32, u32)> = Vec::with_capacity(stubs.len() / 2);
    for _ in 0..REGULAR_RETRY_CAP {
        stubs.shuffle(&mut rng);
        pairs.clear();
        pairs.extend(stubs.chunks_exact(2).map(|c| (c[0], c[1])));
        if pairs.iter().any(|&(u, v)| u == v) {
            continue;
        }
        sorted.clear();
        sorted.extend(pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))));
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return uniform_root(with_weights(n, pairs, seed)?, seed);
    }
    Err(Error::RetryCapExceeded(REGULAR_RETRY_CAP))
}

/// `G(n, λ/n)` by geometric skipping over the lower triangle of pairs.
pub fn gen_erdos_renyi(n: usize, lambda: f64, seed: u64) -> Result<WeightedGraph> {
    GenSpec::erdos_renyi(n, lambda, seed).validate()?;
    let p = lambda / n as f64;
    let log_q = (-p).ln_1p();
    let mut rng = stream(seed, STREAM_STRUCTURE);
    let mut pairs = Vec::new();
    let (mut v, mut w): (u64, i64) = (1, -1);
    let n64 = n as u64;
    while v < n64 {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        let skip = if skip.is_finite() && skip < 1e18 { skip as i64 } else { i64::MAX / 4 };
        w = w.saturating_add(1 + skip);
        while w >= v as i64 && v < n64 {
            w -= v as i64;
            v += 1;
        }
        if v < n64 {
            pairs.push((v as u32, w as u32));
        }
    }
    uniform_root(with_weights(n, pairs, seed)?, seed)
}

/// Disjoint union of two generated graphs plus `bridges` random cross edges
/// with fresh weights. Vertices of `b` are offset by `|a|`.
pub fn gen_union(a: &GenSpec, b: &GenSpec, bridges: usize, seed: u64) -> Result<WeightedGraph> {
    let ga = a.generate()?;
    let gb = b.generate()?;
    let (na, nb) = (ga.n(), gb.n());
    if bridges > na.saturating_mul(nb) {
        return Err(Error::InvalidParameter(format!("{bridges} bridges exceed the {na}x{nb} cross pairs")));
    }
    let offset = na as u32;
    let mut edges: Vec<Edge> = ga.edges().to_vec();
    edges.extend(gb.edges().iter().map(|e| Edge {
        u: e.u + offset,
        v: e.v + offset,
        w: e.w,
    }));
    let mut rng = stream(seed, STREAM_BRIDGES);
    let mut weights = stream(seed, STREAM_WEIGHTS);
    let mut chosen = HashSet::new();
    while chosen.len() < bridges {
        let u = rng.random_range(0..na) as u32;
        let v = rng.random_range(0..nb) as u32 + offset;
        if chosen.insert((u, v)) {
            edges.push(Edge { u, v, w: weights.random() });
        }
    }
    uniform_root(WeightedGraph::new(na + nb, edges)?.with_seed(seed), seed)
}
