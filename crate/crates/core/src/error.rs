use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("argument must be positive (got 0) in {0}")]
    ZeroArgument(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix {0} has non-positive determinant")]
    NotPositiveDeterminant(String),
    #[error("matrix {0} is not Euclid-reduced")]
    NotReduced(String),
    #[error("matrix has non-zero determinant {0}")]
    NonZeroDeterminant(i128),
    #[error("vectors {0} and {1} are linearly dependent")]
    DependentVectors(String, String),
    #[error("vector {0} lies outside the closed first quadrant")]
    OutsideQuadrant(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("lattice {0} is not bad")]
    NotBad(String),
    #[error("sailbasis is not central")]
    NotCentral,
    #[error("correspondence violated: {0}")]
    Bijection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
