use thiserror::Error;

/// Errors raised by matrix construction, decompositions, bound evaluation and the trial harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimension must be positive")]
    EmptyMatrix,

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (asymmetry {residual:e} exceeds {tolerance:e})")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("{0} did not converge within its iteration cap")]
    NoConvergence(&'static str),

    #[error("invalid exponent {0}")]
    InvalidExponent(f64),

    #[error("scalar function produced negative value {value:e} at eigenvalue {eigenvalue:e}")]
    NegativeResult { eigenvalue: f64, value: f64 },

    #[error("function pair `{label}` violates f(t)g(t) = t or nonnegativity at t = {t}")]
    InvalidFunctionPair { label: String, t: f64 },

    #[error("vector is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },

    #[error("family `{family}` does not support dimension {dim}")]
    UnsupportedDim { family: String, dim: usize },

    #[error("no witness found within a budget of {budget} draws: {detail}")]
    WitnessNotFound { budget: usize, detail: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
