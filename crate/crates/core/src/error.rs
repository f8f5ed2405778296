use thiserror::Error;

/// Errors raised by state construction and the geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension {dim} outside the supported range {min}..={max}")]
    DimensionOutOfRange { dim: usize, min: usize, max: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (worst residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("trace is not one (residual {residual:e})")]
    TraceNotOne { residual: f64 },
    #[error("matrix is not positive semi-definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemiDefinite { min_eigenvalue: f64 },
    #[error("matrix is not unitary (worst residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },
    #[error("statevector has zero length; angle is undefined")]
    ZeroStatevector,
    #[error("segment endpoints coincide (distance {distance:e})")]
    CoincidentEndpoints { distance: f64 },
    #[error("invalid mixture weights: {reason}")]
    BadWeights { reason: &'static str },
    #[error("decoherence time must be non-negative, got {t}")]
    NegativeTime { t: f64 },
    #[error("tomography record holds no bases")]
    EmptyRecord,
    #[error("states coincide (distance {distance:e}); no orthogonal completion exists")]
    CoincidentStates { distance: f64 },
    #[error("dimensions out of order: {larger} must be >= {smaller}")]
    BadOrdering { larger: usize, smaller: usize },
    #[error("ket is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },
    #[error("invalid probability vector: {reason}")]
    InvalidProbabilities { reason: &'static str },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::NonFinite { .. } => "NonFinite",
            Error::DimensionOutOfRange { .. } => "DimensionOutOfRange",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPositiveSemiDefinite { .. } => "NotPositiveSemiDefinite",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::ZeroStatevector => "ZeroStatevector",
            Error::CoincidentEndpoints { .. } => "CoincidentEndpoints",
            Error::BadWeights { .. } => "BadWeights",
            Error::NegativeTime { .. } => "NegativeTime",
            Error::EmptyRecord => "EmptyRecord",
            Error::CoincidentStates { .. } => "CoincidentStates",
            Error::BadOrdering { .. } => "BadOrdering",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::InvalidProbabilities { .. } => "InvalidProbabilities",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
