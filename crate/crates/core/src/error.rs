use thiserror::Error;

/// Errors raised by the exact-arithmetic layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u32),
    #[error("residue {value} out of range for modulus {q}")]
    ResidueOutOfRange { value: u32, q: u32 },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("operation requires q = 2, got q = {0}")]
    RequiresBoolean(u32),
    #[error("exact arithmetic requires a prime modulus, got q = {0}")]
    CompositeModulus(u32),
    #[error("value is not exact in Z[zeta]: {0}")]
    Inexact(String),
    #[error("not a function spectrum: {0}")]
    NotASpectrum(String),
    #[error("matrix is singular over Z_{0}")]
    Singular(u32),
    #[error("not a bent function: {0}")]
    NotBent(String),
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("problem exceeds the supported scale: {0}")]
    ScaleLimit(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
