use crate::error::Result;
use crate::graph::{ball_filtered, WeightedGraph};
use crate::percolation::ThetaProfile;
use crate::spanning::{sublinear_steps, PrimTrace};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::io::Write;

/// Cap for balls scanned by the time statistics; large radii may cover the
/// whole tree.
pub(crate) const TIMES_BALL_CAP: usize = usize::MAX;

/// `τ(r, m)/n` for `m = 1, 2, ...`: sorted addition steps of the vertices of
/// the graph ball `B_r(G, root)` that the trace reaches.
pub fn addition_times(g: &WeightedGraph, trace: &PrimTrace, r: usize) -> Result<Vec<f64>> {
    let ball = ball_filtered(g, trace.root(), r, TIMES_BALL_CAP, |_| true)?;
    let mut steps: Vec<usize> = ball.vertices().iter().filter_map(|&v| trace.vertex_step(v)).collect();
    steps.sort_unstable();
    let n = trace.n() as f64;
    Ok(steps.into_iter().map(|s| s as f64 / n).collect())
}

/// Vertices of the tree ball `B_r(T, root)` of the traced tree.
pub(crate) fn tree_ball_vertices(g: &WeightedGraph, trace: &PrimTrace, r: usize) -> Result<Vec<usize>> {
    let ball = ball_filtered(g, trace.root(), r, TIMES_BALL_CAP, |e| trace.edge_step(e).is_some())?;
    Ok(ball.vertices().to_vec())
}

/// `C_n(r)/n`: the last addition step among vertices of the tree ball of the
/// final tree.
pub fn completion_time(g: &WeightedGraph, trace: &PrimTrace, r: usize) -> Result<f64> {
    let last = tree_ball_vertices(g, trace, r)?
        .into_iter()
        .filter_map(|v| trace.vertex_step(v))
        .max()
        .unwrap_or(0);
    Ok(last as f64 / trace.n() as f64)
}

/// `max θ(w(e))` over edges of the tree ball of the spanning forest `mst`
/// that lie outside the `⌊n^alpha⌋`-step prefix; 0 when there are none.
pub fn completion_prediction(
    g: &WeightedGraph,
    trace: &PrimTrace,
    mst: &[u32],
    profile: &ThetaProfile,
    r: usize,
    alpha: f64,
) -> Result<f64> {
    let k = sublinear_steps(trace.n(), alpha)?;
    let mut in_forest = vec![false; g.m()];
    for &e in mst {
        in_forest[e as usize] = true;
    }
    let ball = ball_filtered(g, trace.root(), r, TIMES_BALL_CAP, |e| in_forest[e])?;
    let inside: HashSet<usize> = ball.vertices().iter().copied().collect();
    let mut best = 0.0f64;
    for &v in ball.vertices() {
        for a in g.neighbors(v) {
            let e = a.edge as usize;
            if in_forest[e] && !trace.in_prefix(e, k) && inside.contains(&(a.to as usize)) {
                best = best.max(profile.theta_at(g.weight(e)));
            }
        }
    }
    Ok(best)
}

/// Addition and completion times around the root for one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimesReport {
    pub r: usize,
    pub n: usize,
    pub seed: u64,
    pub tau: Vec<f64>,
    pub completion: f64,
    pub prediction: f64,
}

impl TimesReport {
    pub fn new(
        g: &WeightedGraph,
        trace: &PrimTrace,
        mst: &[u32],
        profile: &ThetaProfile,
        r: usize,
        alpha: f64,
    ) -> Result<Self> {
        Ok(TimesReport {
            r,
            n: g.n(),
            seed: g.seed(),
            tau: addition_times(g, trace, r)?,
            completion: completion_time(g, trace, r)?,
            prediction: completion_prediction(g, trace, mst, profile, r, alpha)?,
        })
    }

    /// `m,tau` rows.
    pub fn write_tau_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "m,tau")?;
        for (m, t) in self.tau.iter().enumerate() {
            writeln!(out, "{},{}", m + 1, t)?;
        }
        Ok(())
    }
}
