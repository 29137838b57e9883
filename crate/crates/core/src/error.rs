use thiserror::Error;

use crate::lp::LpError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input vectors are linearly dependent (numerical rank {rank} < {count})")]
    DependentInput { rank: usize, count: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bad dimensions: {0}")]
    BadDims(String),

    #[error("empty input")]
    EmptyInput,

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("direction must be a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("point is not a vertex of the polytope")]
    NotAVertex,

    #[error("perturbation failed to isolate a singleton face after {retries} retries")]
    PerturbationFailed { retries: usize },

    #[error("operation requires a polytope with at least two vertices")]
    SingletonInput,

    #[error("homothety ratio must be nonzero")]
    ZeroLambda,

    #[error("tolerance must be positive and finite (got {0})")]
    BadTolerance(f64),

    #[error("cannot compare a full plane with a parabola region")]
    MixedVariants,

    #[error("difference-body vertex disagrees with x - z by {0}")]
    InconsistentDiameter(f64),

    #[error("frame rows are not orthonormal (Gram deviation {0})")]
    NotOrthonormal(f64),

    #[error("matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("missing field `{0}`")]
    MissingField(&'static str),

    #[error("bad number: {0}")]
    BadNumber(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error(transparent)]
    Lp(#[from] LpError),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
