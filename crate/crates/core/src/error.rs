use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("class functions belong to different tables")]
    TableMismatch,

    #[error("attempted to invert zero")]
    ZeroInverse,

    #[error("expected a rational integer, found {0}")]
    NonIntegerValue(String),

    #[error("vanishing basis is singular: {0}")]
    SingularBasis(String),

    #[error("gram matrix admits no integer decomposition: {0}")]
    InfeasibleGram(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("system is underdetermined: {0}")]
    UnderdeterminedSystem(String),

    #[error("column-method instance is infeasible: {0}")]
    InfeasibleInstance(String),

    #[error("arithmetic did not close to a contradiction: {0}")]
    NoContradiction(String),

    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("character value outside Q(sqrt 3): {0}")]
    ValueOutsideRing(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
