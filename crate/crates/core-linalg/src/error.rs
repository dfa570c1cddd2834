use thiserror::Error;

/// Errors raised by the dense linear algebra kernels.
#[derive(Debug, Clone, Error)]
pub enum LinalgError {
    #[error("entry ({row},{col}) is not finite")]
    NotFinite { row: usize, col: usize },

    #[error("entry count {got} does not match {rows}x{cols}")]
    BadEntryCount { rows: usize, cols: usize, got: usize },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("matrix is not Hermitian: |h[{row},{col}] - conj(h[{col},{row}])| = {magnitude:.3e} exceeds {tol:.3e}")]
    NotHermitian { row: usize, col: usize, magnitude: f64, tol: f64 },

    #[error("matrix is not unitary within tolerance: residual {residual:.3e} exceeds {tol:.3e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("split index r={r} out of range, require 1 <= r < {max}")]
    SplitOutOfRange { r: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, LinalgError>;
