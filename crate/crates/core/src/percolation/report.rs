use crate::error::{Error, Result};
use crate::generators::GenSpec;
use crate::graph::{ball_filtered, percolate};
use crate::trials::run_trials;
use serde::{Deserialize, Serialize};

/// Largest ball the local-giant statistic will scan.
const REPORT_BALL_CAP: usize = 1 << 20;

/// Diagnostics at one `(p, k)` pair, averaged over trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionEntry {
    pub p: f64,
    pub k: usize,
    pub theta: f64,
    pub almost_local: f64,
    pub c2_fraction: f64,
    /// Fraction of trials with a vertex of `B_r(root)` outside `C₍₁₎(p)`
    /// whose own component has at least `k` vertices.
    pub local_outsider: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub spec: GenSpec,
    pub trials: usize,
    pub r: usize,
    pub entries: Vec<AssumptionEntry>,
    /// Levels at which the almost-local statistic does not decay in `k`.
    pub non_decaying: Vec<f64>,
    pub suspect: bool,
}

impl AssumptionReport {
    pub fn entry(&self, p: f64, k: usize) -> Option<&AssumptionEntry> {
        self.entries.iter().find(|e| e.p == p && e.k == k)
    }
}

/// Floor below which a flat almost-local curve is treated as decayed.
pub const SUSPECT_FLOOR: f64 = 0.01;

/// Per-`(p, k)` diagnostics. A level is flagged when the statistic at the
/// largest `k` stays above [`SUSPECT_FLOOR`] and above half its value at the
/// smallest `k`.
pub fn assumption_report(
    spec: &GenSpec,
    p_list: &[f64],
    k_list: &[usize],
    trials: usize,
    r: usize,
) -> Result<AssumptionReport> {
    if p_list.is_empty() || k_list.is_empty() || trials == 0 {
        return Err(Error::InvalidParameter("need p levels, k cutoffs and trials".into()));
    }
    if k_list.contains(&0) {
        return Err(Error::InvalidParameter("size cutoff k must be >= 1".into()));
    }
    spec.validate()?;
    let mut ks = k_list.to_vec();
    ks.sort_unstable();
    ks.dedup();

    // per trial: [p][k] -> (theta, almost_local, c2, outsider)
    let per_trial = run_trials(trials, spec.seed, |_, seed| {
        let g = spec.with_seed(seed).generate()?;
        let root = g.require_root()?;
        let ball = ball_filtered(&g, root, r, REPORT_BALL_CAP, |_| true)?;
        let nf = g.n() as f64;
        let mut rows = Vec::with_capacity(p_list.len() * ks.len());
        for &p in p_list {
            let d = percolate(&g, p)?;
            for &k in &ks {
                let outsider = ball.vertices().iter().any(|&v| !d.in_largest(v) && d.size_of(v) >= k);
                rows.push([
                    d.largest() as f64 / nf,
                    d.almost_local(k)?,
                    d.second() as f64 / nf,
                    if outsider { 1.0 } else { 0.0 },
                ]);
            }
        }
        Ok(rows)
    })?;

    let mut entries = Vec::with_capacity(p_list.len() * ks.len());
    for (i, &p) in p_list.iter().enumerate() {
        for (j, &k) in ks.iter().enumerate() {
            let idx = i * ks.len() + j;
            let mean = |c: usize| per_trial.iter().map(|rows| rows[idx][c]).sum::<f64>() / trials as f64;
            entries.push(AssumptionEntry {
                p,
                k,
                theta: mean(0),
                almost_local: mean(1),
                c2_fraction: mean(2),
                local_outsider: mean(3),
            });
        }
    }
    let non_decaying: Vec<f64> = p_list
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            let first = entries[i * ks.len()].almost_local;
            let last = entries[i * ks.len() + ks.len() - 1].almost_local;
            last > SUSPECT_FLOOR && last > 0.5 * first
        })
        .map(|(_, &p)| p)
        .collect();
    Ok(AssumptionReport {
        spec: spec.clone(),
        trials,
        r,
        suspect: !non_decaying.is_empty(),
        non_decaying,
        entries,
    })
}
