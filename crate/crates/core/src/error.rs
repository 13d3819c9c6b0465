use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on the inputs is violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested certified tolerance cannot be reached within the
    /// sieve/summation capability; carries the best achievable bound.
    #[error(
        "capacity error: tolerance {requested:.3e} needs cutoff {needed_cutoff} \
         beyond capability {capability}; best achievable tail bound {achievable:.3e}"
    )]
    Capacity {
        requested: f64,
        achievable: f64,
        needed_cutoff: u64,
        capability: u64,
    },

    /// Quadrature failed to reach the requested tolerance within the
    /// panel-refinement budget; carries the last error estimate.
    #[error("quadrature error: estimate {estimate:.3e} exceeds tolerance {tol:.3e}")]
    Quadrature { estimate: f64, tol: f64 },

    /// Gamma evaluated at a pole (non-positive integer).
    #[error("pole error: gamma pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// A result left the representable range of f64.
    #[error("overflow error: {0}")]
    Overflow(String),

    /// A bilinear operator carries a mode outside the requested cutoff.
    #[error("cutoff error: mode {mode} exceeds cutoff {cutoff}")]
    Cutoff { mode: i64, cutoff: i64 },

    /// The operation is not defined for this mode set.
    #[error("unsupported mode set: {0}")]
    Unsupported(String),

    /// Writing output failed (CLI sinks).
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
