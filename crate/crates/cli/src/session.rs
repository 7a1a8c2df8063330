//! Stage implementations. A session caches the graph, trace, forest and θ
//! profile so that a pipeline builds each of them once.

use crate::config::{RunConfig, Stage, VerifyMode};
use crate::error::{CliError, CliResult};
use crate::render::render_lattice;
use primlocal::dynamics::{
    profile_for, verify_exact_step_with, verify_marginal_with, verify_process_conditions_with, TimesReport,
    VerifyOptions,
};
use primlocal::graph::{read_graph, write_graph};
use primlocal::percolation::{assumption_report, default_p_grid, empirical_theta_with, ThetaOptions};
use primlocal::spanning::{kruskal_mst, prim_trace};
use primlocal::{PrimTrace, ThetaProfile, WeightedGraph};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

/// Files written by a stage and whether a verification fell short.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StageOutput {
    pub files: Vec<PathBuf>,
    pub sidecars: Vec<PathBuf>,
    pub below_threshold: bool,
}

/// `<path>.json`
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub config: RunConfig,
    pub root: Option<usize>,
    #[serde(default)]
    pub details: Value,
}

fn write_json(path: &Path, value: &impl Serialize) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).map_err(CliError::io(path))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    }
    Ok(BufWriter::new(File::create(path).map_err(CliError::io(path))?))
}

fn finish(mut w: BufWriter<File>, path: &Path) -> CliResult<()> {
    w.flush().map_err(CliError::io(path))
}

pub struct Session {
    config: RunConfig,
    graph: Option<WeightedGraph>,
    trace: Option<PrimTrace>,
    mst: Option<Vec<u32>>,
    profile: Option<ThetaProfile>,
}

impl Session {
    pub fn new(config: RunConfig) -> Self {
        Session {
            config,
            graph: None,
            trace: None,
            mst: None,
            profile: None,
        }
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            alpha: self.config.params.alpha,
            profile_trials: self.config.params.profile_trials,
            ..VerifyOptions::default()
        }
    }

    fn sidecar(&self, path: &Path, root: Option<usize>, details: Value) -> CliResult<PathBuf> {
        let side = sidecar_path(path);
        let car = Sidecar {
            config: self.config.clone(),
            root,
            details,
        };
        write_json(&side, &car)?;
        Ok(side)
    }

    pub fn graph(&mut self) -> CliResult<&WeightedGraph> {
        if self.graph.is_none() {
            let g = match &self.config.input {
                Some(path) => load_graph(path)?,
                None => self.config.spec.generate()?,
            };
            self.graph = Some(g);
        }
        Ok(self.graph.as_ref().expect("graph set"))
    }

    pub fn trace(&mut self) -> CliResult<&PrimTrace> {
        if self.trace.is_none() {
            let g = self.graph()?;
            let t = prim_trace(g, g.require_root()?)?;
            self.trace = Some(t);
        }
        Ok(self.trace.as_ref().expect("trace set"))
    }

    fn mst(&mut self) -> CliResult<&[u32]> {
        if self.mst.is_none() {
            let m = kruskal_mst(self.graph()?);
            self.mst = Some(m);
        }
        Ok(self.mst.as_deref().expect("forest set"))
    }

    fn profile(&mut self) -> CliResult<&ThetaProfile> {
        if self.profile.is_none() {
            let p = profile_for(&self.config.spec, &self.verify_options())?;
            self.profile = Some(p);
        }
        Ok(self.profile.as_ref().expect("profile set"))
    }

    pub fn run(&mut self, stage: Stage, out: &Path) -> CliResult<StageOutput> {
        match stage {
            Stage::Gen => self.run_gen(out),
            Stage::Prim => self.run_prim(out),
            Stage::Theta => self.run_theta(out),
            Stage::Verify => self.run_verify(out),
            Stage::Times => self.run_times(out),
            Stage::Render => self.run_render(out),
        }
    }

    pub fn run_gen(&mut self, out: &Path) -> CliResult<StageOutput> {
        let g = self.graph()?;
        let root = g.root();
        let details = json!({ "n": g.n(), "m": g.m() });
        let mut w = create(out)?;
        write_graph(g, &mut w)?;
        finish(w, out)?;
        let side = self.sidecar(out, root, details)?;
        Ok(StageOutput {
            files: vec![out.to_path_buf()],
            sidecars: vec![side],
            below_threshold: false,
        })
    }

    pub fn run_prim(&mut self, out: &Path) -> CliResult<StageOutput> {
        let t = self.trace()?;
        let (root, details) = (t.root(), json!({ "steps": t.len(), "complete": t.is_complete() }));
        let mut w = create(out)?;
        t.write(&mut w)?;
        finish(w, out)?;
        let side = self.sidecar(out, Some(root), details)?;
        Ok(StageOutput {
            files: vec![out.to_path_buf()],
            sidecars: vec![side],
            below_threshold: false,
        })
    }

    pub fn run_theta(&mut self, out: &Path) -> CliResult<StageOutput> {
        let params = self.config.params.clone();
        let grid = if params.p.is_empty() { default_p_grid(64) } else { params.p.clone() };
        let profile = empirical_theta_with(&self.config.spec, &grid, params.trials, &ThetaOptions::default())?;
        let mut w = create(out)?;
        profile.write_csv(&mut w)?;
        finish(w, out)?;
        let details = json!({ "p_c_estimate": profile.p_c_estimate(), "n": profile.n() });
        let mut result = StageOutput {
            files: vec![out.to_path_buf()],
            ..StageOutput::default()
        };
        result.sidecars.push(self.sidecar(out, None, details)?);
        if !params.k.is_empty() {
            let report = assumption_report(&self.config.spec, &grid, &params.k, params.trials, params.r)?;
            let path = with_suffix(out, "assumptions.json");
            write_json(&path, &json!({ "config": &self.config, "report": report }))?;
            result.files.push(path);
        }
        Ok(result)
    }

    pub fn run_verify(&mut self, out: &Path) -> CliResult<StageOutput> {
        let opts = self.verify_options();
        let params = self.config.params.clone();
        let spec = self.config.spec.clone();
        let (reports, fractions): (Value, Vec<f64>) = match params.mode {
            VerifyMode::Exact => {
                let ps = if params.p.is_empty() { vec![0.7, 1.0] } else { params.p.clone() };
                let reps = ps
                    .iter()
                    .map(|&p| verify_exact_step_with(&spec, p, params.r, params.trials, &opts))
                    .collect::<Result<Vec<_>, _>>()?;
                let f = reps.iter().map(|r| r.outcome.fraction).collect();
                (serde_json::to_value(reps)?, f)
            }
            VerifyMode::Marginal => {
                let profile = self.profile()?.clone();
                let reps = params
                    .t
                    .iter()
                    .map(|&t| verify_marginal_with(&spec, &profile, t, params.r, params.trials, &opts))
                    .collect::<Result<Vec<_>, _>>()?;
                let f = reps.iter().map(|r| r.outcome.fraction).collect();
                (serde_json::to_value(reps)?, f)
            }
            VerifyMode::Process => {
                let profile = self.profile()?.clone();
                let rep = verify_process_conditions_with(
                    &spec,
                    &profile,
                    &params.t,
                    params.r,
                    &params.deltas,
                    params.trials,
                    &opts,
                )?;
                let f = vec![rep.joint.fraction];
                (serde_json::to_value(rep)?, f)
            }
        };
        let lowest = fractions.iter().copied().fold(1.0f64, f64::min);
        let below = lowest < params.min_success;
        write_json(
            out,
            &json!({
                "config": &self.config,
                "mode": params.mode,
                "min_success": params.min_success,
                "lowest_fraction": lowest,
                "passed": !below,
                "reports": reports,
            }),
        )?;
        Ok(StageOutput {
            files: vec![out.to_path_buf()],
            sidecars: vec![],
            below_threshold: below,
        })
    }

    pub fn run_times(&mut self, out: &Path) -> CliResult<StageOutput> {
        let (r, alpha) = (self.config.params.r, self.config.params.alpha);
        let profile = self.profile()?.clone();
        self.mst()?;
        self.trace()?;
        let (g, t, mst) = (
            self.graph.as_ref().expect("graph"),
            self.trace.as_ref().expect("trace"),
            self.mst.as_deref().expect("forest"),
        );
        let report = TimesReport::new(g, t, mst, &profile, r, alpha)?;
        let mut w = create(out)?;
        report.write_tau_csv(&mut w)?;
        finish(w, out)?;
        let details = json!({
            "r": report.r,
            "completion": report.completion,
            "prediction": report.prediction,
        });
        let side = self.sidecar(out, Some(t.root()), details)?;
        Ok(StageOutput {
            files: vec![out.to_path_buf()],
            sidecars: vec![side],
            below_threshold: false,
        })
    }

    pub fn run_render(&mut self, out: &Path) -> CliResult<StageOutput> {
        let side = self.config.spec.lattice_side().ok_or_else(|| {
            CliError::Usage(format!("render needs a lattice family, not {}", self.config.spec.name()))
        })?;
        let (fractions, crop) = (self.config.params.fractions.clone(), self.config.params.crop);
        if fractions.is_empty() {
            return Err(CliError::Usage("--fractions is empty".into()));
        }
        let mut result = StageOutput::default();
        for (i, &f) in fractions.iter().enumerate() {
            let path = if fractions.len() == 1 { out.to_path_buf() } else { numbered(out, i + 1) };
            let img = render_lattice(self.trace()?, side, f, crop)?;
            let mut w = create(&path)?;
            img.write_ppm(&mut w).map_err(CliError::io(&path))?;
            finish(w, &path)?;
            let root = self.trace()?.root();
            let details = json!({ "fraction": f, "width": img.width, "height": img.height });
            result.sidecars.push(self.sidecar(&path, Some(root), details)?);
            result.files.push(path);
        }
        Ok(result)
    }
}

/// `dir/name.ext` -> `dir/name_<i>.ext`
pub fn numbered(path: &Path, i: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{i}.{ext}"),
        None => format!("{stem}_{i}"),
    };
    path.with_file_name(name)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

/// Reads a graph file, taking the root from its sidecar when present.
pub fn load_graph(path: &Path) -> CliResult<WeightedGraph> {
    let f = File::open(path).map_err(CliError::io(path))?;
    let g = read_graph(BufReader::new(f))?;
    let side = sidecar_path(path);
    if side.exists() {
        let text = fs::read_to_string(&side).map_err(CliError::io(&side))?;
        let car: Sidecar = serde_json::from_str(&text)?;
        if let Some(root) = car.root {
            return Ok(g.with_root(root)?);
        }
    }
    Err(CliError::Usage(format!("{} has no root; its sidecar {} is missing", path.display(), side.display())))
}
