use thiserror::Error;

use crate::resources::Port;

/// Errors raised by the library surface.
///
/// Hot-path protocol code never errors: every input that reaches it is
/// finite and unit-norm by construction. The fallible surface is input
/// validation and resource-usage contracts.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A real-valued argument was NaN or infinite.
    #[error("{context}: value is not finite")]
    NonFinite { context: &'static str },

    /// A vector failed the unit-norm check at construction.
    #[error("vector has norm {norm}, which deviates from 1 by more than {tol}")]
    NotUnit { norm: f64, tol: f64 },

    /// A vector too close to zero to normalize.
    #[error("cannot normalize a vector with norm {norm}")]
    ZeroVector { norm: f64 },

    /// An integer outside {0, 1} where a bit was expected.
    #[error("value {0} is not a bit (expected 0 or 1)")]
    NotABit(u8),

    /// A one-shot box port received a second input.
    #[error("port {0} of the box was already invoked")]
    PortConsumed(Port),

    /// A port output was requested before the inputs it depends on exist.
    #[error("output of port {0} is not determined yet (remote input missing)")]
    OutputNotReady(Port),

    /// A precondition on operation arguments was violated.
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
