//! Self-contained dense complex linear algebra at desk scale: one-sided
//! Jacobi SVD, a Hermitian Jacobi eigensolver, unitarily invariant norms,
//! Gram inverse square roots, and singular-spectrum utilities.
//!
//! Everything operates on owned [`Matrix`] values and is a pure function of
//! its inputs, so callers are free to parallelize across instances.

pub mod eigh;
pub mod error;
pub mod gram;
pub mod matrix;
pub mod norms;
pub mod spectrum;
pub mod svd;
pub mod tol;

pub use eigh::{eigh, Eigh};
pub use error::{LinalgError, Result};
pub use gram::{inv_sqrt_gram, sqrt_gram};
pub use matrix::Matrix;
pub use norms::{pair_norm, spectral_norm, ui_norm, NormKind, PairingNorm};
pub use spectrum::{interlace_check, sv_ext, InterlaceReport, SingularSpectrum};
pub use svd::{orthonormal_complement, svd, Svd};

pub use num_complex::Complex64;
