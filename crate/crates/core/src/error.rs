use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mismatched q contexts: {0} vs {1}")]
    QMismatch(u32, u32),

    #[error("q = {0} is not a prime power")]
    InvalidQ(u32),

    #[error("quantum binomial [{n} choose {k}] requires k <= n")]
    BinomialRange { n: u32, k: u32 },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("vector of length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("guard exceeded: {what} is {value}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("construction failure: {0}")]
    Construction(String),

    #[error("letters at positions {pos} and {next} are not orthogonal")]
    NotOrthogonal { pos: usize, next: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
