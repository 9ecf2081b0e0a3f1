use thiserror::Error;

/// Errors raised by the algebraic constructions.
///
/// `ContractViolation` and `Precondition` signal bad input data;
/// `Internal` signals that a verified identity failed on output the library
/// produced itself, which is always a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no contraction: complement has nonzero homology in degree {degree}")]
    NoContraction { degree: i32 },
    #[error("truncation overflow: weight {weight} exceeds {max}")]
    Truncation { weight: u32, max: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
