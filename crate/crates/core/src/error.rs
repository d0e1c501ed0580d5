use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("number of variables {n} exceeds the supported maximum {max}")]
    TooManyVariables { n: u32, max: u32 },
    #[error("truth table has length {got}, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("reconstructed value at x = {x} is {value}, not 0 or 1")]
    NotBoolean { x: u64, value: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("noise rate {0} is outside (0, 1]")]
    InvalidEta(f64),
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("direction must be a non-zero mask")]
    ZeroDirection,
    #[error("constraint masks are linearly dependent")]
    DependentConstraints,
    #[error("no degree-reducing subspace of codimension <= {max_codim}")]
    NotFound { max_codim: u32 },
    #[error("input function is constant")]
    ConstantInput,
    #[error("tree does not compute the function: {0}")]
    InvalidTree(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("invalid family specification: {0}")]
    InvalidSpec(String),
    #[error("function has zero density")]
    ZeroDensity,
    #[error("degree {0} is below the recurrence base case 3")]
    InvalidDegree(u32),
    #[error("recurrence argument {0} is below 1")]
    InvalidArgument(f64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
