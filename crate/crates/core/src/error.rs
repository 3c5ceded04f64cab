use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported cell count {0}, expected 2 or 3")]
    UnsupportedCellCount(usize),

    #[error("operation requires a pure state")]
    NotPure,

    #[error("wrong state dimension: expected {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter `{field}`: {message}")]
    InvalidParams { field: &'static str, message: String },

    #[error("RK4 step too large: (|H| + 2N gamma) dt = {product:.4} exceeds {limit}")]
    StepTooLarge { product: f64, limit: f64 },

    #[error("need at least {needed} samples, got {found}")]
    TooFewSamples { needed: usize, found: usize },

    #[error("time grid is not uniform")]
    NonUniformGrid,

    #[error("Simpson quadrature needs an odd sample count, got {0}")]
    EvenSampleCount(usize),

    #[error("length mismatch: {0} times vs {1} values")]
    LengthMismatch(usize, usize),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("configuration error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
