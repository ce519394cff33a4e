use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("field has nonzero mean (c_0^0 = {0:e}); operator requires a zero-mean field")]
    NonZeroMean(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite tendency at step {step}")]
    NonFinite { step: usize },

    #[error("quadrature cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("optimizer failed: {0}")]
    Optimizer(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
