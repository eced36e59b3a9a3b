use thiserror::Error;

use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("polynomial arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("determinant of size {0} exceeds the supported maximum of 8")]
    TooLarge(usize),
    #[error("quartic is identically zero")]
    ZeroQuartic,
    #[error("field characteristic {0} is not supported here")]
    BadCharacteristic(u64),
    #[error("the two non-contracted slots are not square ({0}x{1})")]
    NonSquareSlots(usize, usize),
    #[error("enumeration of {required} points exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("algebra has no unit")]
    NotUnital,
    #[error("declared unit is not a two-sided unit")]
    InvalidUnit,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("operation needs a prime field, got {0}")]
    NotPrimeField(FieldSpec),
    #[error("slot must be 1, 2 or 3, got {0}")]
    BadSlot(usize),
    #[error("invalid file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
