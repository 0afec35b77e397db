use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("ambiguous winding between samples {index} and {next}: angular gap {gap:.6} rad (refine sampling)")]
    AmbiguousWinding { index: usize, next: usize, gap: f64 },

    #[error("duplicate consecutive samples at index {0}")]
    DuplicateSample(usize),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("distance search did not converge; best estimate {best:.3e}")]
    NotConverged { best: f64 },

    #[error("invalid mesh: {0}")]
    Mesh(String),

    #[error("solver aborted: {reason}")]
    SolverAborted { reason: String, report: Box<crate::surface::SolverReport> },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
