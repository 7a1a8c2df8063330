//! Root-preserving ε-isomorphism of balls and the local metric built on it.

use super::{ball_filtered, RootedBall, WeightedGraph, DEFAULT_BALL_CAP};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoOptions {
    /// Backtracking nodes allowed before giving up with [`Error::Undecided`].
    pub node_budget: u64,
    /// Largest ball (in vertices) accepted for comparison.
    pub vertex_cap: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            node_budget: 1_000_000,
            vertex_cap: DEFAULT_BALL_CAP,
        }
    }
}

/// True iff a root-preserving graph isomorphism maps every edge of `a` to an
/// edge of `b` whose weight differs by at most `eps`.
pub fn eps_isomorphic(a: &RootedBall, b: &RootedBall, eps: f64, opts: &IsoOptions) -> Result<bool> {
    if a.radius() != b.radius() {
        return Err(Error::RadiusMismatch(a.radius(), b.radius()));
    }
    for x in [a, b] {
        if x.len() > opts.vertex_cap {
            return Err(Error::BallOverflow {
                root: x.vertices().first().copied().unwrap_or(0),
                cap: opts.vertex_cap,
            });
        }
    }
    if a.len() != b.len() || a.edges().len() != b.edges().len() {
        return Ok(false);
    }
    if a.is_empty() {
        return Ok(true);
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut ka: Vec<(u32, usize)> = (0..a.len()).map(|i| (a.depth(i) as u32, a.degree(i))).collect();
    let mut kb: Vec<(u32, usize)> = (0..b.len()).map(|i| (b.depth(i) as u32, b.degree(i))).collect();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb || !weights_compatible(&sig_a[0], &sig_b[0], eps) || a.degree(0) != b.degree(0) {
        return Ok(false);
    }
    let mut search = Search {
        a,
        b,
        eps,
        sig_a: &sig_a,
        sig_b: &sig_b,
        map: vec![u32::MAX; a.len()],
        used: vec![false; b.len()],
        nodes: 0,
        budget: opts.node_budget,
    };
    search.map[0] = 0;
    search.used[0] = true;
    search.extend(1)
}

/// Sorted incident weights per vertex.
fn signatures(x: &RootedBall) -> Vec<Vec<f64>> {
    (0..x.len())
        .map(|i| {
            let mut w: Vec<f64> = x.neighbors(i).iter().map(|&(_, w)| w).collect();
            w.sort_unstable_by(f64::total_cmp);
            w
        })
        .collect()
}

/// Two weight multisets admit an eps-matching iff their sorted orders do.
fn weights_compatible(x: &[f64], y: &[f64], eps: f64) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).abs() <= eps)
}

struct Search<'a> {
    a: &'a RootedBall,
    b: &'a RootedBall,
    eps: f64,
    sig_a: &'a [Vec<f64>],
    sig_b: &'a [Vec<f64>],
    map: Vec<u32>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    // A's local ids are in BFS order, so every vertex past the root has an
    // already-mapped neighbour whose image bounds the candidate set.
    fn extend(&mut self, i: usize) -> Result<bool> {
        if i == self.a.len() {
            return Ok(true);
        }
        let anchor = self
            .a
            .neighbors(i)
            .iter()
            .map(|&(x, _)| x as usize)
            .find(|&x| x < i)
            .expect("BFS order gives every non-root vertex an earlier neighbour");
        let image = self.map[anchor] as usize;
        let mapped_deg_a = self.a.neighbors(i).iter().filter(|&&(x, _)| (x as usize) < i).count();
        for ci in 0..self.b.neighbors(image).len() {
            let cand = self.b.neighbors(image)[ci].0 as usize;
            if self.used[cand] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Undecided { nodes: self.nodes });
            }
            if !self.consistent(i, cand, mapped_deg_a) {
                continue;
            }
            self.map[i] = cand as u32;
            self.used[cand] = true;
            if self.extend(i + 1)? {
                return Ok(true);
            }
            self.used[cand] = false;
            self.map[i] = u32::MAX;
        }
        Ok(false)
    }

    fn consistent(&self, i: usize, cand: usize, mapped_deg_a: usize) -> bool {
        let (a, b) = (self.a, self.b);
        if a.depth(i) != b.depth(cand)
            || a.degree(i) != b.degree(cand)
            || !weights_compatible(&self.sig_a[i], &self.sig_b[cand], self.eps)
        {
            return false;
        }
        let mapped_deg_b = b.neighbors(cand).iter().filter(|&&(y, _)| self.used[y as usize]).count();
        if mapped_deg_a != mapped_deg_b {
            return false;
        }
        a.neighbors(i).iter().filter(|&&(x, _)| (x as usize) < i).all(|&(x, wa)| {
            let target = self.map[x as usize];
            b.neighbors(cand)
                .iter()
                .any(|&(y, wb)| y == target && (wa - wb).abs() <= self.eps)
        })
    }
}

/// `G ≡_r G'`: the radius-`r` balls around the roots are `1/r`-isomorphic.
/// Radius 0 compares bare roots and always holds.
pub fn equivalent_at(ga: &WeightedGraph, gb: &WeightedGraph, r: usize, opts: &IsoOptions) -> Result<bool> {
    if r == 0 {
        return Ok(true);
    }
    let ba = ball_filtered(ga, ga.require_root()?, r, opts.vertex_cap, |_| true)?;
    let bb = ball_filtered(gb, gb.require_root()?, r, opts.vertex_cap, |_| true)?;
    eps_isomorphic(&ba, &bb, 1.0 / r as f64, opts)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalDistance {
    /// `1 / (1 + r*)`.
    pub distance: f64,
    /// Largest radius `r*` (up to the cap) at which the graphs are equivalent.
    pub radius: usize,
    /// True when equivalence held all the way to `r_max`, so `distance` is
    /// only an upper bound.
    pub capped: bool,
}

/// Local distance `1/(1 + sup{r : Ga ≡_r Gb})`, with the supremum searched up
/// to `r_max`.
pub fn local_distance(ga: &WeightedGraph, gb: &WeightedGraph, r_max: usize, opts: &IsoOptions) -> Result<LocalDistance> {
    let mut last = 0;
    for r in 1..=r_max {
        if !equivalent_at(ga, gb, r, opts)? {
            return Ok(LocalDistance {
                distance: 1.0 / (1.0 + last as f64),
                radius: last,
                capped: false,
            });
        }
        last = r;
    }
    Ok(LocalDistance {
        distance: 1.0 / (1.0 + r_max as f64),
        radius: r_max,
        capped: true,
    })
}
