use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of bounds for graph with {n} vertices")]
    VertexOutOfBounds { vertex: usize, n: usize },

    #[error("graph has no root")]
    Unrooted,

    #[error("ball around vertex {root} exceeds the cap of {cap} vertices")]
    BallOverflow { root: usize, cap: usize },

    #[error("isomorphism search undecided after {nodes} backtracking nodes")]
    Undecided { nodes: u64 },

    #[error("balls have different radii ({0} vs {1})")]
    RadiusMismatch(usize, usize),

    #[error("random-regular pairing still not simple after {0} attempts; dense degrees need an erased configuration model, which is not provided")]
    RetryCapExceeded(u32),

    #[error("fixed-point iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("theta profile is not monotone at p = {0}")]
    NonMonotoneProfile(f64),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            lo: 0.0,
            hi: 1.0,
        })
    }
}
