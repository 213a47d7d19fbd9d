use thiserror::Error;

/// Failure modes shared by every numeric and exact routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at s = 1")]
    PoleAtOne,
    #[error("requested tolerance {requested:e} not reached (error bound {achieved:e})")]
    PrecisionLoss { requested: f64, achieved: f64 },
    #[error("tail bound does not close at truncation {truncation} for Im(tau) = {im_tau}")]
    DivergentTail { truncation: u64, im_tau: f64 },
    #[error("invalid series specification: {0}")]
    InvalidSpec(String),
    #[error("lattice sum does not converge absolutely: {0}")]
    NonConvergent(String),
    #[error("s = {0} lies outside the half-plane of absolute convergence")]
    OutsideConvergence(String),
    #[error("pole at s = 0")]
    PoleAt0,
    #[error("pole at s = k = {0}")]
    PoleAtK(i64),
    #[error("double-series tail not closed at cutoff {cutoff} (tail bound {bound:e})")]
    TailNotClosed { cutoff: u64, bound: f64 },
    #[error("closed-form Mellin transform requested outside its strip: {0}")]
    OutsideStrip(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),
    #[error("integral does not converge absolutely: {0}")]
    ConvergenceViolation(String),
    #[error("inadmissible input: {0}")]
    Inadmissible(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_) | Error::Inadmissible(_) => 2,
            Error::PoleAtOne | Error::PoleAt0 | Error::PoleAtK(_) => 3,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
