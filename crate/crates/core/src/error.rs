use thiserror::Error;

/// Errors raised by the evaluators, the bound constructors and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q = {0} is outside (0, 1 - 1e-12)")]
    InvalidQ(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The series engine hit `max_terms` before its stopping rule fired.
    #[error(
        "series did not converge after {terms_used} terms (partial value {partial}, tail estimate {error_estimate})"
    )]
    NonConvergence {
        partial: f64,
        error_estimate: f64,
        terms_used: u64,
    },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("no sign change of psi_q found for q = {q} within [1e-8, 1e8]")]
    BracketFailure { q: f64 },

    #[error("alpha = {alpha} is below the positive root {root} of psi_q")]
    AlphaBelowRoot { alpha: f64, root: f64 },

    #[error("rejection sampling gave up after {attempts} attempts: {reason}")]
    RejectionOverflow { attempts: u32, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::BracketFailure { .. } | Error::Overflow(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
