use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("frame incompatible with the transverse/tangential split: {0}")]
    IncompatibleFrame(String),
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("not point-supported: {0}")]
    NotPointSupported(String),
    #[error("support violation: {0}")]
    SupportViolation(String),
    #[error("not closed off boundary")]
    NotClosedOffBoundary,
    #[error("not closed in interior")]
    NotClosedInInterior,
    #[error("k=0 nonconstant: closed 0-form with nonconstant coefficient")]
    NonconstantZeroForm,
    #[error("term not attributable to any simplex: {0}")]
    NotAttributable(String),
    #[error("unrealized simplex {0}")]
    Unrealized(usize),
    #[error("coefficient extracted below dual dimension on simplex {0}")]
    CoefficientBelowDualDimension(usize),
    #[error("input chain is not a cycle")]
    NotACycle,
    #[error("dangling simplex id {0}")]
    DanglingSimplex(usize),
    #[error("pairing of a non-compact term: {0}")]
    NonCompact(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
