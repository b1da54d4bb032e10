use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch in {context}: expected {expected}, found {found}")]
    SizeMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid Gelfand-Tsetlin pattern: {0}")]
    InvalidPattern(String),

    #[error("parameter must be strictly positive, got {0}")]
    NonPositiveParameter(String),

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("value is not real: {0}")]
    NotReal(String),

    #[error("operation requires exact arithmetic; floating-point input refused")]
    InexactScalar,

    #[error("unknown kernel strategy `{0}` (expected naive, cycle-cached or parallel)")]
    UnknownStrategy(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_size(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            context,
            expected,
            found,
        })
    }
}
