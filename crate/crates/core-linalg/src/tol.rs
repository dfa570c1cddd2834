//! Shared tolerance and iteration constants for binary64 desk scale (n <= ~200).

/// Unitarity residual allowance for an n x n matrix.
pub fn tol_unitary(n: usize) -> f64 {
    1e-10 * n as f64
}

/// Hermitian deviation allowance, scaled by the Frobenius norm of the input.
pub fn tol_herm(h_fro: f64) -> f64 {
    1e-12 * h_fro
}

/// Relative reconstruction tolerance for factorizations.
pub const TOL_RECON: f64 = 1e-10;

/// Relative residual tolerance for equation solves.
pub const TOL_SOLVE: f64 = 1e-9;

/// Step tolerance of the fixed-point rotation solve.
pub const TOL_FP: f64 = 1e-13;

/// Cyclic Jacobi sweep limit (both the one-sided SVD and the Hermitian solver).
pub const MAX_SWEEPS: usize = 60;

/// Fixed-point iteration limit.
pub const MAX_FP_ITERS: usize = 200;

/// A column pair counts as orthogonal once |x^H y| / (|x| |y|) drops below this.
pub const JACOBI_COS_TOL: f64 = 1e-14;
