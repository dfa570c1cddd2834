//! Singular value spectra, their rectangular zero extension, and interlacing checks.

use crate::error::{LinalgError, Result};
use crate::matrix::Matrix;
use crate::svd::svd;

/// Nonincreasing singular values plus the number of zeros appended by the
/// rectangular extension sv_ext(G) = sv(G) u {|m-n| copies of 0}.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
    ext_zeros: usize,
}

impl SingularSpectrum {
    pub(crate) fn new(values: Vec<f64>, ext_zeros: usize) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]), "values must be nonincreasing");
        Self { values, ext_zeros }
    }

    /// The min(m, n) singular values, nonincreasing.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ext_zeros(&self) -> usize {
        self.ext_zeros
    }

    /// sigma_max, the first value.
    pub fn max(&self) -> f64 {
        self.values[0]
    }

    /// sigma_min over the unextended set.
    pub fn min(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// The extended multiset: all values followed by the appended zeros.
    pub fn ext_values(&self) -> Vec<f64> {
        let mut out = self.values.clone();
        out.extend(std::iter::repeat_n(0.0, self.ext_zeros));
        out
    }

    /// min |mu - nu| over mu in self.values, nu in other's extended multiset.
    pub fn min_gap_to_ext(&self, other: &SingularSpectrum) -> f64 {
        let ext = other.ext_values();
        let mut gap = f64::INFINITY;
        for &mu in &self.values {
            for &nu in &ext {
                gap = gap.min((mu - nu).abs());
            }
        }
        gap
    }
}

/// Singular spectrum of `a` with |rows - cols| zeros recorded as the extension.
pub fn sv_ext(a: &Matrix) -> Result<SingularSpectrum> {
    Ok(svd(a)?.sigma)
}

/// Values and flags for the submatrix interlacing inequalities at split r:
/// sigma_r(B) >= max{sigma_min(B[:, :r]), sigma_min(B[:r, :])} >= sigma_min(B[:r, :r])
/// and sigma_{r+1}(B) <= min{sigma_max(B[:, r:]), sigma_max(B[r:, :])}.
#[derive(Debug, Clone)]
pub struct InterlaceReport {
    pub sigma_r: f64,
    pub sigma_r_plus_1: f64,
    pub leading_cols_min: f64,
    pub leading_rows_min: f64,
    pub corner_min: f64,
    pub trailing_cols_max: f64,
    pub trailing_rows_max: f64,
    /// sigma_r >= max of the two leading block minima
    pub lower_vs_blocks: bool,
    /// max of the two leading block minima >= corner minimum
    pub blocks_vs_corner: bool,
    /// sigma_{r+1} <= trailing column block maximum
    pub upper_vs_cols: bool,
    /// sigma_{r+1} <= trailing row block maximum
    pub upper_vs_rows: bool,
}

impl InterlaceReport {
    pub fn all_hold(&self) -> bool {
        self.lower_vs_blocks && self.blocks_vs_corner && self.upper_vs_cols && self.upper_vs_rows
    }
}

/// Checks the four interlacing inequalities between sigma_r(B), sigma_{r+1}(B)
/// and the extreme singular values of the leading/trailing blocks of B.
pub fn interlace_check(b: &Matrix, r: usize) -> Result<InterlaceReport> {
    let (m, n) = b.dims();
    if r < 1 || r >= m.min(n) {
        return Err(LinalgError::SplitOutOfRange { r, max: m.min(n) });
    }
    let sigma = sv_ext(b)?;
    let sigma_r = sigma.values()[r - 1];
    let sigma_r_plus_1 = sigma.values()[r];

    let leading_cols_min = sv_ext(&b.block(0, m, 0, r))?.min();
    let leading_rows_min = sv_ext(&b.block(0, r, 0, n))?.min();
    let corner_min = sv_ext(&b.block(0, r, 0, r))?.min();
    let trailing_cols_max = sv_ext(&b.block(0, m, r, n))?.max();
    let trailing_rows_max = sv_ext(&b.block(r, m, 0, n))?.max();

    // Mathematically exact inequalities; the slack only absorbs roundoff.
    let tol = 1e-10 * (1.0 + sigma.max());
    let block_lower = leading_cols_min.max(leading_rows_min);
    Ok(InterlaceReport {
        sigma_r,
        sigma_r_plus_1,
        leading_cols_min,
        leading_rows_min,
        corner_min,
        trailing_cols_max,
        trailing_rows_max,
        lower_vs_blocks: sigma_r >= block_lower - tol,
        blocks_vs_corner: block_lower >= corner_min - tol,
        upper_vs_cols: sigma_r_plus_1 <= trailing_cols_max + tol,
        upper_vs_rows: sigma_r_plus_1 <= trailing_rows_max + tol,
    })
}
