//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable-set mismatch: {0} vs {1}")]
    VarSetMismatch(String, String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("superalgebra has no `{0}` structure tensor")]
    MissingTensor(&'static str),

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("prerequisite check `{check}` failed: {detail}")]
    PrerequisiteFailed { check: &'static str, detail: String },

    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),

    #[error("truncation parameter out of range: {0}")]
    BadTruncation(String),

    #[error("sub-basis is not closed under the bracket: {0}")]
    NotClosed(String),

    #[error("derivation check failed: {0}")]
    NotADerivation(String),

    #[error("nonzero speciality kernel of dimension {0}; the envelope quotient does not contain the algebra")]
    NonzeroKernel(usize),

    #[error("quotient dimensions did not stabilize across truncation windows: {0}")]
    NotStabilized(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("undeclared generator label `{0}`")]
    UndeclaredLabel(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
