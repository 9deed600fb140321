use thiserror::Error;

use crate::field::FieldSpec;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrices {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("zero polynomial passed to {0}")]
    ZeroPolynomial(&'static str),

    #[error("degree {0} too large (factorization over Q is limited to degree 64)")]
    DegreeTooLarge(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("subspace is not invariant under the tuple")]
    NotInvariant,

    #[error("module is not local: {0}")]
    NotLocal(String),

    #[error("enumeration bound exceeded: {size} > {bound}")]
    BoundExceeded { size: u128, bound: u128 },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}
