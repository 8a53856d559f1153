use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is zero")]
    ZeroInput,
    #[error("logarithm of a non-positive integer")]
    NonPositive,
    #[error("all coordinates are zero")]
    AllZero,
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map is not defined at step {index}: every component vanishes")]
    IndeterminatePoint { index: usize },
    #[error("point lies on the support of the form")]
    OnSupport,
    #[error("point lies on the subscheme; its height is infinite")]
    InfiniteHeight,
    #[error("both forms of the rational map vanish at step {index}")]
    OnIndeterminacy { index: usize },
    #[error("orbit is periodic with bounded height (preperiod {preperiod}, period {period})")]
    DegenerateOrbit { preperiod: usize, period: usize },
    #[error("map is degenerate: its components share a common root")]
    MapDegenerate,
    #[error("iterate degree {degree} exceeds the cap {cap}")]
    IterateOverflow { degree: u128, cap: u64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("factorization budget exceeded")]
    BudgetExceeded,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Math,
    Budget,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) | Error::Invalid(_) | Error::DimensionMismatch { .. } => {
                ErrorKind::Usage
            }
            Error::BudgetExceeded | Error::IterateOverflow { .. } => ErrorKind::Budget,
            _ => ErrorKind::Math,
        }
    }
}
