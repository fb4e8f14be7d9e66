use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {degree} is not of the form 2m + {k}")]
    KamekoParity { degree: u32, k: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element is not primitive: {0}")]
    NotPrimitive(String),
    #[error("element is not a cycle in bidegree ({s}, {w})")]
    NotCycle { s: usize, w: u32 },
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
