//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("symbol {0} has no assigned value")]
    MissingSymbol(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("duplicate symbol {0}")]
    DuplicateSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("derivative table of {0} has non-commuting partials")]
    NonCommutingDerivatives(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("expected a homogeneous form of degree {expected}, found degree {found}")]
    Inhomogeneous { expected: usize, found: usize },
    #[error("interior product needs a form of degree >= 1")]
    ContractDegreeZero,
    #[error("basis index {0} out of range 1..=4")]
    BadIndex(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlagError {
    #[error("subsystem generators are linearly dependent")]
    DependentGenerators,
    #[error("coframing is not adapted: {0}")]
    NotAdapted(String),
    #[error("invariant {invariant} = {value} depends on parameter values; split on its vanishing locus")]
    AmbiguousParameter { invariant: String, value: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<FormError> for FlagError {
    fn from(e: FormError) -> Self {
        FlagError::NotAdapted(e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("structure equations do not satisfy the Jacobi identity: {0}")]
    JacobiFailure(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("trace^2 - 4 = {0} is not positive: no hyperbolic expansion")]
    NotHyperbolic(i64),
    #[error("trace {0} <= -3: both eigenvalues negative; use the negated matrix instead")]
    NegativeEigenvalues(i64),
    #[error("determinant must be 1, found {0}")]
    BadDeterminant(i64),
    #[error("matrix of forms has wrong shape")]
    ShapeMismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Parse errors carry a 1-based source position.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}
