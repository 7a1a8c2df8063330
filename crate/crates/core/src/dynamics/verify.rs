use crate::error::{Error, Result};
use crate::generators::GenSpec;
use crate::graph::{ball_filtered, eps_isomorphic, percolate, IsoOptions, RootedBall, WeightedGraph, DEFAULT_BALL_CAP};
use crate::percolation::{default_p_grid, empirical_theta_with, theta_inverse, ThetaOptions, ThetaProfile, DEFAULT_EPS0};
use crate::rng::mix;
use crate::spanning::{
    expanded_ipc_with, kruskal_mst, matching_prefix_steps, prim_trace, reach_step, sublinear_steps, ExpandedIpc,
    PrimTrace,
};
use crate::trials::run_trials;
use serde::{Deserialize, Serialize};

pub const DEFAULT_ALPHA: f64 = 2.0 / 3.0;

const PROFILE_SALT: u64 = 0x7E7A;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub alpha: f64,
    /// Trials behind the θ profile used to turn `t` into a level.
    pub profile_trials: usize,
    pub p_grid: Vec<f64>,
    pub eps0: f64,
    pub node_budget: u64,
    pub vertex_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            alpha: DEFAULT_ALPHA,
            profile_trials: 10,
            p_grid: default_p_grid(64),
            eps0: DEFAULT_EPS0,
            node_budget: 1_000_000,
            vertex_cap: DEFAULT_BALL_CAP,
        }
    }
}

impl VerifyOptions {
    pub fn iso(&self) -> IsoOptions {
        IsoOptions {
            node_budget: self.node_budget,
            vertex_cap: self.vertex_cap,
        }
    }
}

/// A generated graph with its Prim trace from the root and its spanning forest.
#[derive(Debug, Clone)]
pub struct Instance {
    pub g: WeightedGraph,
    pub trace: PrimTrace,
    pub mst: Vec<u32>,
}

impl Instance {
    pub fn build(spec: &GenSpec, seed: u64) -> Result<Self> {
        Instance::from_graph(spec.with_seed(seed).generate()?)
    }

    pub fn from_graph(g: WeightedGraph) -> Result<Self> {
        let trace = prim_trace(&g, g.require_root()?)?;
        let mst = kruskal_mst(&g);
        Ok(Instance { g, trace, mst })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// Tree ball of the first `k` Prim steps.
    pub fn prefix_ball(&self, k: usize, r: usize, cap: usize) -> Result<RootedBall> {
        ball_filtered(&self.g, self.trace.root(), r, cap, |e| self.trace.in_prefix(e, k))
    }

    /// Tree ball of an expanded cluster.
    pub fn cluster_ball(&self, ipc: &ExpandedIpc, r: usize, cap: usize) -> Result<RootedBall> {
        ball_filtered(&self.g, self.trace.root(), r, cap, |e| ipc.contains_edge(e))
    }
}

/// `k_n(t)`: `⌊tn⌋` for `t > 0`, and the sub-linear `⌊n^alpha⌋` at `t = 0`.
pub fn steps_at(t: f64, n: usize, alpha: f64) -> Result<usize> {
    if t == 0.0 {
        sublinear_steps(n, alpha)
    } else {
        Ok((t * n as f64).floor() as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Match,
    Mismatch,
    Undecided,
}

/// `≡_r` on two tree balls; budget and cap overruns are undecided.
fn compare(a: Result<RootedBall>, b: Result<RootedBall>, r: usize, iso: &IsoOptions) -> Result<Check> {
    if r == 0 {
        return Ok(Check::Match);
    }
    let decided = a.and_then(|a| b.and_then(|b| eps_isomorphic(&a, &b, 1.0 / r as f64, iso)));
    match decided {
        Ok(true) => Ok(Check::Match),
        Ok(false) => Ok(Check::Mismatch),
        Err(Error::Undecided { .. } | Error::BallOverflow { .. }) => Ok(Check::Undecided),
        Err(e) => Err(e),
    }
}

/// Success count over trials; undecided trials count as failures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub trials: usize,
    pub successes: usize,
    pub undecided: usize,
    pub fraction: f64,
}

impl Outcome {
    fn tally(checks: impl IntoIterator<Item = Check>) -> Self {
        let (mut trials, mut successes, mut undecided) = (0, 0, 0);
        for c in checks {
            trials += 1;
            match c {
                Check::Match => successes += 1,
                Check::Undecided => undecided += 1,
                Check::Mismatch => {}
            }
        }
        let fraction = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        Outcome {
            trials,
            successes,
            undecided,
            fraction,
        }
    }
}

/// θ profile used by the verifiers, drawn from seeds disjoint from the
/// verification trials.
pub fn profile_for(spec: &GenSpec, opts: &VerifyOptions) -> Result<ThetaProfile> {
    let theta = ThetaOptions {
        eps0: opts.eps0,
        ..ThetaOptions::default()
    };
    empirical_theta_with(
        &spec.with_seed(mix(spec.seed ^ PROFILE_SALT)),
        &opts.p_grid,
        opts.profile_trials.max(1),
        &theta,
    )
}

fn marginal_check(inst: &Instance, profile: &ThetaProfile, t: f64, r: usize, opts: &VerifyOptions) -> Result<Check> {
    let p = theta_inverse(profile, t)?;
    let decomp = percolate(&inst.g, p)?;
    let ipc = expanded_ipc_with(&inst.g, &inst.trace, &inst.mst, &decomp)?;
    let k = steps_at(t, inst.n(), opts.alpha)?;
    compare(
        inst.prefix_ball(k, r, opts.vertex_cap),
        inst.cluster_ball(&ipc, r, opts.vertex_cap),
        r,
        &opts.iso(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalReport {
    pub spec: GenSpec,
    pub t: f64,
    pub p: f64,
    pub r: usize,
    pub alpha: f64,
    pub outcome: Outcome,
}

/// One-dimensional check: the tree ball of the `k_n(t)`-step prefix against
/// the tree ball of the expanded cluster at `θ⁻¹(t)`.
pub fn verify_marginal(spec: &GenSpec, t: f64, r: usize, trials: usize, alpha: f64) -> Result<MarginalReport> {
    let opts = VerifyOptions {
        alpha,
        ..VerifyOptions::default()
    };
    let profile = profile_for(spec, &opts)?;
    verify_marginal_with(spec, &profile, t, r, trials, &opts)
}

pub fn verify_marginal_with(
    spec: &GenSpec,
    profile: &ThetaProfile,
    t: f64,
    r: usize,
    trials: usize,
    opts: &VerifyOptions,
) -> Result<MarginalReport> {
    let p = theta_inverse(profile, t)?;
    let checks = run_trials(trials, spec.seed, |_, seed| {
        marginal_check(&Instance::build(spec, seed)?, profile, t, r, opts)
    })?;
    Ok(MarginalReport {
        spec: spec.clone(),
        t,
        p,
        r,
        alpha: opts.alpha,
        outcome: Outcome::tally(checks),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactStepReport {
    pub spec: GenSpec,
    pub p: f64,
    pub r: usize,
    pub outcome: Outcome,
    /// `K(p)` per trial.
    pub reach: Vec<usize>,
    /// `|C₍₁₎(p)|` per trial.
    pub giant: Vec<usize>,
}

/// Same-graph check: prefix at `K + |C₍₁₎| − 1` steps against the expanded
/// cluster at level `p`.
pub fn verify_exact_step(spec: &GenSpec, p: f64, r: usize, trials: usize) -> Result<ExactStepReport> {
    verify_exact_step_with(spec, p, r, trials, &VerifyOptions::default())
}

pub fn verify_exact_step_with(
    spec: &GenSpec,
    p: f64,
    r: usize,
    trials: usize,
    opts: &VerifyOptions,
) -> Result<ExactStepReport> {
    let rows = run_trials(trials, spec.seed, |_, seed| {
        let inst = Instance::build(spec, seed)?;
        let decomp = percolate(&inst.g, p)?;
        let reach = reach_step(&inst.trace, &decomp)?;
        let ipc = expanded_ipc_with(&inst.g, &inst.trace, &inst.mst, &decomp)?;
        let k = matching_prefix_steps(&reach, &decomp);
        let check = compare(
            inst.prefix_ball(k, r, opts.vertex_cap),
            inst.cluster_ball(&ipc, r, opts.vertex_cap),
            r,
            &opts.iso(),
        )?;
        Ok((check, reach.k, decomp.largest()))
    })?;
    Ok(ExactStepReport {
        spec: spec.clone(),
        p,
        r,
        outcome: Outcome::tally(rows.iter().map(|x| x.0)),
        reach: rows.iter().map(|x| x.1).collect(),
        giant: rows.iter().map(|x| x.2).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaStat {
    pub delta: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessReport {
    pub spec: GenSpec,
    pub r: usize,
    pub alpha: f64,
    pub t_grid: Vec<f64>,
    /// Every `t` of the grid matched within the same trial.
    pub joint: Outcome,
    pub per_t: Vec<Outcome>,
    /// Trials whose ball at `⌊(1−δ)n⌋` steps differs from the final one.
    pub continuity: Vec<DeltaStat>,
    /// Trials with two ball changes after `k_n(0)` less than `δn` steps apart.
    pub double_jump: Vec<DeltaStat>,
}

/// Steps after `k_n(0)` at which the tree ball of radius `r` grows.
pub fn ball_change_steps(inst: &Instance, r: usize, alpha: f64) -> Result<Vec<usize>> {
    let k0 = sublinear_steps(inst.n(), alpha)?;
    let ball = ball_filtered(&inst.g, inst.trace.root(), r, usize::MAX, |e| inst.trace.edge_step(e).is_some())?;
    let mut steps: Vec<usize> = ball
        .vertices()
        .iter()
        .filter_map(|&v| inst.trace.vertex_step(v))
        .filter(|&s| s > k0)
        .collect();
    steps.sort_unstable();
    Ok(steps)
}

pub fn verify_process_conditions(
    spec: &GenSpec,
    t_grid: &[f64],
    r: usize,
    delta_list: &[f64],
    trials: usize,
) -> Result<ProcessReport> {
    let opts = VerifyOptions::default();
    let profile = profile_for(spec, &opts)?;
    verify_process_conditions_with(spec, &profile, t_grid, r, delta_list, trials, &opts)
}

pub fn verify_process_conditions_with(
    spec: &GenSpec,
    profile: &ThetaProfile,
    t_grid: &[f64],
    r: usize,
    delta_list: &[f64],
    trials: usize,
    opts: &VerifyOptions,
) -> Result<ProcessReport> {
    if t_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("t grid must be sorted".into()));
    }
    for &d in delta_list {
        crate::error::check_unit("delta", d)?;
    }
    let rows = run_trials(trials, spec.seed, |_, seed| {
        let inst = Instance::build(spec, seed)?;
        let n = inst.n();
        let marg = t_grid
            .iter()
            .map(|&t| marginal_check(&inst, profile, t, r, opts))
            .collect::<Result<Vec<_>>>()?;
        let full = inst.prefix_ball(n, r, opts.vertex_cap);
        let mut cont = Vec::with_capacity(delta_list.len());
        for &d in delta_list {
            let k = ((1.0 - d) * n as f64).floor() as usize;
            let c = compare(inst.prefix_ball(k, r, opts.vertex_cap), full.clone(), r, &opts.iso())?;
            cont.push(c != Check::Match);
        }
        let changes = ball_change_steps(&inst, r, opts.alpha)?;
        let jumps = delta_list
            .iter()
            .map(|&d| {
                let window = d * n as f64;
                changes.windows(2).any(|w| ((w[1] - w[0]) as f64) < window)
            })
            .collect::<Vec<_>>();
        Ok((marg, cont, jumps))
    })?;
    let joint = Outcome::tally(rows.iter().map(|(m, _, _)| {
        if m.iter().all(|&c| c == Check::Match) {
            Check::Match
        } else if m.contains(&Check::Undecided) {
            Check::Undecided
        } else {
            Check::Mismatch
        }
    }));
    let per_t = (0..t_grid.len())
        .map(|i| Outcome::tally(rows.iter().map(|(m, _, _)| m[i])))
        .collect();
    let share = |hit: &dyn Fn(&(Vec<Check>, Vec<bool>, Vec<bool>)) -> bool| {
        rows.iter().filter(|row| hit(row)).count() as f64 / trials.max(1) as f64
    };
    let continuity = delta_list
        .iter()
        .enumerate()
        .map(|(i, &delta)| DeltaStat {
            delta,
            fraction: share(&|row| row.1[i]),
        })
        .collect();
    let double_jump = delta_list
        .iter()
        .enumerate()
        .map(|(i, &delta)| DeltaStat {
            delta,
            fraction: share(&|row| row.2[i]),
        })
        .collect();
    Ok(ProcessReport {
        spec: spec.clone(),
        r,
        alpha: opts.alpha,
        t_grid: t_grid.to_vec(),
        joint,
        per_t,
        continuity,
        double_jump,
    })
}
