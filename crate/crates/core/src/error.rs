use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("quadrature did not converge after {nodes} nodes (estimate {abs_error:e}, partial {partial})")]
    Convergence {
        partial: Complex64,
        abs_error: f64,
        nodes: usize,
    },

    #[error("oscillation budget exceeded: {0}")]
    Budget(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("boundary guard: {detail} (max admissible |t| = {max_t})")]
    BoundaryGuard { detail: String, max_t: f64 },

    #[error("blow-up at t = {time}: {detail}")]
    BlowUp { time: f64, detail: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        what,
        detail: detail.into(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
