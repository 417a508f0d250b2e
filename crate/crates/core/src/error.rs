use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid population size {0}: at least 2 members are required")]
    InvalidPopulation(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("objective evaluation failed at iteration {iteration}: {source}")]
    Objective {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },
}
