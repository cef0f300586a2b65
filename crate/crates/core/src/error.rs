use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("index map is not injective")]
    NonInjective,

    #[error("factor index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("divisor index {index} out of range 1..={rank}")]
    DivisorOutOfRange { index: usize, rank: usize },

    #[error("repeated factor index {0}")]
    RepeatedIndex(usize),

    #[error("permutation group is empty")]
    EmptyGroup,

    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("expression is not homogeneous")]
    NotHomogeneous,

    #[error("expected codimension {expected}, found {found}")]
    WrongCodimension { expected: usize, found: usize },

    #[error("{0}")]
    WrongMode(&'static str),

    #[error("invalid surface model: {0}")]
    InvalidModel(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
