use thiserror::Error;

/// Errors produced by the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("system too large for this path: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("couplings are not real at lambda = {lambda}, gamma = {gamma}: point is {class}")]
    NotUnbroken { lambda: f64, gamma: f64, class: String },
    #[error(
        "eigensolver did not converge: {converged} of {dim} eigenvalues found after {iterations} iterations"
    )]
    NoConvergence { dim: usize, converged: usize, iterations: usize },
    #[error("spectra have different sizes ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
