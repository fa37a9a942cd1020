//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Incompatible operand shapes, reported against the tape node that
    /// would have produced the result.
    #[error("shape mismatch at node {node} ({op}): {detail}")]
    ShapeMismatch {
        node: usize,
        op: &'static str,
        detail: String,
    },

    /// `log` evaluated on a non-positive entry.
    #[error("log of non-positive value at node {node} (min entry {value:e})")]
    LogDomain { node: usize, value: f64 },

    /// Forward pass requested with a leaf left unbound.
    #[error("leaf `{0}` is not bound")]
    UnboundLeaf(String),

    /// Operation called out of order (e.g. backward before forward).
    #[error("invalid state: {0}")]
    State(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A non-finite number surfaced where finite values are required.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Closed-form formulas applied outside their validity regime.
    #[error("regime violation: {0}")]
    Regime(String),

    #[error("degenerate spec: {0}")]
    Degenerate(String),

    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
