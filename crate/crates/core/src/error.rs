use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: String },

    #[error("unknown {kind} {name:?} (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    /// The two coefficient methods produced different values.
    #[error("coefficient methods disagree at a_{index}: {left} vs {right}")]
    MethodDisagreement {
        index: usize,
        left: String,
        right: String,
    },

    #[error("closed-form evaluation at x = {x} left imaginary residue {residue:e}")]
    BranchDiagnostic { x: f64, residue: f64 },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
