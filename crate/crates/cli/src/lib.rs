//! Command-line stages, lattice rendering and the artifact pipeline.

pub mod config;
pub mod error;
pub mod pipeline;
pub mod render;
pub mod session;

pub use config::{Params, RunConfig, Stage, VerifyMode};
pub use error::{CliError, CliResult};
pub use pipeline::{run_pipeline, Manifest};
pub use session::Session;
