use thiserror::Error;

/// Errors shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested tolerance cannot be reached with the configured truncation.
    #[error("error budget exceeded: reached {reached:e}, requested {requested:e} ({context})")]
    BudgetExceeded {
        requested: f64,
        reached: f64,
        context: String,
    },

    /// A weighted lattice sum does not converge.
    #[error("divergent lattice sum: {0}")]
    Divergence(String),

    /// Bracketing root search failed.
    #[error("root not found: {0}")]
    RootNotFound(String),

    /// Adaptive quadrature did not converge.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// A straight-line configuration violates the torus parity constraint.
    #[error("parity violation: {0}")]
    Parity(String),

    /// Torus side not compatible with the requested geometry.
    #[error("divisibility violation: {0}")]
    Divisibility(String),

    /// The minimum of a search sits on the edge of its window.
    #[error("search window exhausted: {0}")]
    WindowExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
