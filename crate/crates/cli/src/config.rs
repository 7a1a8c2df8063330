//! Run configuration shared by every subcommand and embedded in outputs.

use crate::error::{CliError, CliResult};
use primlocal::dynamics::DEFAULT_ALPHA;
use primlocal::GenSpec;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Gen,
    Prim,
    Theta,
    Verify,
    Times,
    Render,
}

impl Stage {
    pub const ALL: [Stage; 6] = [Stage::Gen, Stage::Prim, Stage::Theta, Stage::Verify, Stage::Times, Stage::Render];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Gen => "gen",
            Stage::Prim => "prim",
            Stage::Theta => "theta",
            Stage::Verify => "verify",
            Stage::Times => "times",
            Stage::Render => "render",
        }
    }

    pub fn parse(s: &str) -> CliResult<Stage> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown stage `{s}`")))
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Marginal,
    Exact,
    Process,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Params {
    /// Percolation levels; empty means the default 64-point grid (theta)
    /// or `[0.7, 1]` (exact verification).
    pub p: Vec<f64>,
    /// Time fractions for marginal and process verification.
    pub t: Vec<f64>,
    pub r: usize,
    pub alpha: f64,
    pub trials: usize,
    pub profile_trials: usize,
    pub fractions: Vec<f64>,
    pub deltas: Vec<f64>,
    /// Size cutoffs for the assumption report; empty skips it.
    pub k: Vec<usize>,
    pub min_success: f64,
    /// Side of the rendered window; `None` renders the whole lattice.
    pub crop: Option<usize>,
    pub mode: VerifyMode,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            p: Vec::new(),
            t: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            r: 2,
            alpha: DEFAULT_ALPHA,
            trials: 20,
            profile_trials: 10,
            fractions: vec![1.0],
            deltas: vec![0.0, 0.005, 0.01],
            k: Vec::new(),
            min_success: 0.9,
            crop: None,
            mode: VerifyMode::Marginal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub spec: GenSpec,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub stages: Vec<Stage>,
    /// Graph file to load instead of generating from `spec`.
    #[serde(default)]
    pub input: Option<PathBuf>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(command: &str, spec: GenSpec, out: impl Into<PathBuf>) -> Self {
        RunConfig {
            command: command.to_string(),
            spec,
            params: Params::default(),
            stages: Vec::new(),
            input: None,
            out: out.into(),
        }
    }

    pub fn to_json(&self) -> CliResult<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Reads a config file, or the config embedded in an output sidecar.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(CliError::io(path))?;
        let mut value: serde_json::Value = serde_json::from_str(&text)?;
        if let Some(inner) = value.get_mut("config") {
            value = inner.take();
        }
        Ok(serde_json::from_value(value)?)
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        fs::write(path, self.to_json()? + "\n").map_err(CliError::io(path))
    }

    pub fn validate(&self) -> CliResult<()> {
        self.spec.validate()?;
        let p = &self.params;
        if p.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        if !(p.alpha > 0.0 && p.alpha < 1.0) {
            return Err(CliError::Usage(format!("--alpha {} must lie in (0, 1)", p.alpha)));
        }
        let unit = |name: &str, xs: &[f64]| -> CliResult<()> {
            match xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                Some(x) => Err(CliError::Usage(format!("--{name} value {x} outside [0, 1]"))),
                None => Ok(()),
            }
        };
        unit("p", &p.p)?;
        unit("t", &p.t)?;
        unit("fractions", &p.fractions)?;
        unit("delta", &p.deltas)?;
        unit("min-success", &[p.min_success])?;
        if p.k.contains(&0) {
            return Err(CliError::Usage("--k values must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use primlocal::Boundary;

    #[test]
    fn json_round_trip_is_stable() {
        let mut c = RunConfig::new("pipeline", GenSpec::grid(50, Boundary::Torus, 7), "out");
        c.params.fractions = vec![1.0 / 3.0, 2.0 / 3.0, 1.0];
        c.stages = vec![Stage::Gen, Stage::Render];
        let text = c.to_json().unwrap();
        let back = RunConfig::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn missing_params_take_defaults() {
        let text = r#"{"command":"gen","spec":{"family":"random-regular","n":10,"d":3,"seed":1},"out":"g.wg"}"#;
        let c = RunConfig::from_json(text).unwrap();
        assert_eq!(c.params, Params::default());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn loads_plain_and_embedded_configs() {
        let dir = std::env::temp_dir().join(format!("primlocal-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let c = RunConfig::new("gen", GenSpec::random_regular(10, 3, 1), "g.wg");
        let plain = dir.join("plain.json");
        c.save(&plain).unwrap();
        assert_eq!(RunConfig::load(&plain).unwrap(), c);
        let wrapped = dir.join("wrapped.json");
        let text = format!("{{\"config\": {}, \"root\": 3}}", c.to_json().unwrap());
        fs::write(&wrapped, text).unwrap();
        assert_eq!(RunConfig::load(&wrapped).unwrap(), c);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn validation_rejects_bad_values() {
        let mut c = RunConfig::new("verify", GenSpec::random_regular(10, 3, 1), "v.json");
        c.params.t = vec![1.5];
        assert!(matches!(c.validate(), Err(CliError::Usage(_))));
        c.params.t = vec![0.5];
        c.params.alpha = 1.0;
        assert!(c.validate().is_err());
    }
}
