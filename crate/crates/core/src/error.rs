use thiserror::Error;

use crate::linalg::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field has {available} elements but {needed} distinct points are required")]
    FieldTooSmall { needed: u128, available: u128 },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown label {}", .0 + 1)]
    UnknownLabel(Label),
    #[error("row and column labels of the two matrices differ")]
    LabelMismatch,
    #[error("duplicate interpolation point")]
    DuplicatePoint,
    #[error("subset is not a cut{}", match .index { Some(i) => format!(" (sequence position {i})"), None => String::new() })]
    NotACut { index: Option<usize> },
    #[error("off-diagonal block of the cut is identically zero")]
    ZeroBlock,
    #[error("matrix is reducible")]
    NotIrreducible,
    #[error("instance of size {size} exceeds the limit {limit} of this routine")]
    TooLarge { size: usize, limit: usize },
    #[error("term {term} has rank greater than one")]
    RankTooHigh { term: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
