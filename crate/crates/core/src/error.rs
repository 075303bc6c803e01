use thiserror::Error;

/// Errors raised by the numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A point lies outside the function's domain or certified range.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integrand produced NaN or an infinity.
    #[error("non-finite integrand value at t = {at}")]
    NonFinite { at: f64 },

    /// The supplied interval does not bracket a sign change.
    #[error("no sign change on [{lo}, {hi}]: E({lo}) = {e_lo:e}, E({hi}) = {e_hi:e}")]
    Bracket {
        lo: f64,
        hi: f64,
        e_lo: f64,
        e_hi: f64,
    },

    /// The requested combination has no implementation route.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parameter(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
