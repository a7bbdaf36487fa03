use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("elements belong to different cyclotomic fields (n = {left} vs n = {right})")]
    ContextMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what}: dimension {dim} exceeds configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        dim: usize,
        cap: usize,
    },

    #[error("mapping is not a bijection on 1..={0}")]
    NotBijective(usize),

    #[error("parity mismatch: {0}")]
    Parity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
