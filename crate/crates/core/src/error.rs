//! Crate-wide error type.

use crate::fields::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    ParseScalar(String),
    #[error("cannot enumerate an infinite field")]
    InfiniteField,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("right-hand side is zero")]
    ZeroRhs,
    #[error("transform matrix is singular")]
    SingularTransform,
    #[error("matrices are not linearly independent")]
    NotReduced,
    #[error("completion columns do not yield an invertible matrix")]
    SingularCompletion,
    #[error("matrix does not have rank one")]
    NotRankOne,
    #[error("collective support lacks the three-corner property")]
    NotThreeCorner,
    #[error("matrices are linearly dependent")]
    DependentMatrices,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// A step that provably cannot fail did; indicates a bug, not a usage
    /// error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
