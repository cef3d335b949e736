use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not outer-safe: {0}")]
    NotOuterSafe(String),
    #[error("kernel sequence numerically dependent (pivot {pivot:e} at position {index})")]
    NumericallyDependent { index: usize, pivot: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("insufficient degree cap: need {need}, have {have}")]
    DegreeCap { need: usize, have: usize },
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
