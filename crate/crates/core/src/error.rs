use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring signature mismatch")]
    SignatureMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("exponent vector has length {got}, ring has {expected} variables")]
    ExponentLength { expected: usize, got: usize },
    #[error("negative exponent on non-invertible variable `{0}`")]
    NegativeExponent(String),
    #[error("no image supplied for variable `{0}`")]
    MissingImage(String),
    #[error("cannot invert: not a unit monomial on invertible variables")]
    NotInvertible,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("inexact division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not unimodular: determinant {0}")]
    NotUnimodular(String),
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
}

pub type Result<T> = std::result::Result<T, Error>;
