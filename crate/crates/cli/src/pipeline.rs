//! Runs selected stages in order and records what they produced.

use crate::config::{RunConfig, Stage};
use crate::error::{CliError, CliResult};
use crate::session::Session;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs::{self, File};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub stage: Stage,
    #[serde(flatten)]
    pub file: FileHash,
    pub sidecar: Option<FileHash>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: Stage,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub stage: Stage,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    pub seed: u64,
    pub stages: Vec<Stage>,
    pub outputs: Vec<OutputEntry>,
    pub timings: Vec<StageTiming>,
    pub total_seconds: f64,
    pub below_threshold: bool,
    pub failed: Option<Failure>,
}

impl Manifest {
    /// `(path, sha256)` for every output and sidecar.
    pub fn hashes(&self) -> Vec<(String, String)> {
        let mut all = Vec::new();
        for o in &self.outputs {
            all.push((o.file.path.clone(), o.file.sha256.clone()));
            if let Some(s) = &o.sidecar {
                all.push((s.path.clone(), s.sha256.clone()));
            }
        }
        all
    }
}

pub fn file_name(stage: Stage) -> &'static str {
    match stage {
        Stage::Gen => "graph.wg",
        Stage::Prim => "trace.txt",
        Stage::Theta => "theta.csv",
        Stage::Verify => "verify.json",
        Stage::Times => "times.csv",
        Stage::Render => "render.ppm",
    }
}

pub fn sha256_file(path: &Path) -> CliResult<(String, u64)> {
    let mut f = File::open(path).map_err(CliError::io(path))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 20];
    let mut total = 0u64;
    loop {
        let k = f.read(&mut buf).map_err(CliError::io(path))?;
        if k == 0 {
            break;
        }
        hasher.update(&buf[..k]);
        total += k as u64;
    }
    Ok((hex::encode(hasher.finalize()), total))
}

fn hash_entry(dir: &Path, path: &Path) -> CliResult<FileHash> {
    let (sha256, bytes) = sha256_file(path)?;
    let rel = path.strip_prefix(dir).unwrap_or(path);
    Ok(FileHash {
        path: rel.to_string_lossy().into_owned(),
        sha256,
        bytes,
    })
}

/// Stages to run: the configured list, or every stage that applies to the
/// family.
pub fn planned_stages(config: &RunConfig) -> Vec<Stage> {
    if !config.stages.is_empty() {
        return config.stages.clone();
    }
    Stage::ALL
        .into_iter()
        .filter(|&s| s != Stage::Render || config.spec.lattice_side().is_some())
        .collect()
}

/// Runs the pipeline into `config.out` (a directory) and writes the
/// manifest there, also when a stage fails.
pub fn run_pipeline(config: &RunConfig) -> CliResult<Manifest> {
    config.validate()?;
    let dir: PathBuf = config.out.clone();
    fs::create_dir_all(&dir).map_err(CliError::io(&dir))?;
    let stages = planned_stages(config);
    let mut manifest = Manifest {
        config: config.clone(),
        seed: config.spec.seed,
        stages: stages.clone(),
        outputs: Vec::new(),
        timings: Vec::new(),
        total_seconds: 0.0,
        below_threshold: false,
        failed: None,
    };
    let start = Instant::now();
    let mut session = Session::new(config.clone());
    let mut failure = None;
    for &stage in &stages {
        let t0 = Instant::now();
        let result = session.run(stage, &dir.join(file_name(stage))).and_then(|out| {
            let mut entries = Vec::new();
            for (i, f) in out.files.iter().enumerate() {
                let sidecar = match out.sidecars.get(i) {
                    Some(s) => Some(hash_entry(&dir, s)?),
                    None => None,
                };
                entries.push(OutputEntry {
                    stage,
                    file: hash_entry(&dir, f)?,
                    sidecar,
                });
            }
            Ok((entries, out.below_threshold))
        });
        manifest.timings.push(StageTiming {
            stage,
            seconds: t0.elapsed().as_secs_f64(),
        });
        match result {
            Ok((entries, below)) => {
                manifest.outputs.extend(entries);
                manifest.below_threshold |= below;
            }
            Err(e) => {
                manifest.failed = Some(Failure {
                    stage,
                    error: e.to_string(),
                });
                failure = Some(CliError::Stage {
                    stage: stage.name().to_string(),
                    source: Box::new(e),
                });
                break;
            }
        }
    }
    manifest.total_seconds = start.elapsed().as_secs_f64();
    let path = dir.join(MANIFEST);
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n").map_err(CliError::io(&path))?;
    match failure {
        Some(e) => Err(e),
        None => Ok(manifest),
    }
}
