//! One-sided Jacobi SVD for dense complex matrices.
//!
//! Column pairs are orthogonalized by cyclic sweeps of plane rotations until
//! every pair of nonzero columns has cosine below `JACOBI_COS_TOL`. Column
//! norms then give the singular values to high relative accuracy, and the
//! accumulated rotations give the right singular vectors. Wide inputs are
//! handled through the adjoint.

use num_complex::Complex64;

use crate::error::{LinalgError, Result};
use crate::matrix::Matrix;
use crate::spectrum::SingularSpectrum;
use crate::tol::{JACOBI_COS_TOL, MAX_SWEEPS};

#[derive(Debug, Clone)]
pub struct Svd {
    /// m x m unitary.
    pub u: Matrix,
    /// Nonincreasing values with the |m-n| rectangular zero extension recorded.
    pub sigma: SingularSpectrum,
    /// n x n unitary.
    pub v: Matrix,
}

impl Svd {
    /// U * diag(sigma) * V^H.
    pub fn reconstruct(&self) -> Matrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let s = Matrix::leading_diag(m, n, self.sigma.values());
        &(&self.u * &s) * &self.v.adjoint()
    }
}

/// Full SVD: `a = u * diag(sigma) * v^H` with square unitary factors.
pub fn svd(a: &Matrix) -> Result<Svd> {
    let (m, n) = a.dims();
    if m < n {
        let t = svd(&a.adjoint())?;
        return Ok(Svd { u: t.v, sigma: t.sigma, v: t.u });
    }

    // Tall or square: rotate column pairs of a working copy. Columns that
    // fall to roundoff scale are numerically in the null space; rotating two
    // of them exchanges noise forever, so they are frozen instead and their
    // basis vectors come from the completion below.
    let mut w = a.clone();
    let mut v = Matrix::identity(n);
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let max_col = (0..n).map(|j| column_norm(&w, j)).fold(0.0, f64::max);
        let zero_tol = max_col * 8.0 * m as f64 * f64::EPSILON;
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let (alpha, beta, gamma) = column_gram(&w, p, q);
                if alpha.sqrt() <= zero_tol || beta.sqrt() <= zero_tol {
                    continue;
                }
                let cos = gamma.norm() / (alpha.sqrt() * beta.sqrt());
                if cos <= JACOBI_COS_TOL {
                    continue;
                }
                rotated = true;
                let phase = gamma / gamma.norm();
                let tau = (beta - alpha) / (2.0 * gamma.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                apply_rotation(&mut w, p, q, c, s, phase);
                apply_rotation(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Column norms are the singular values; sort nonincreasing, ties keep
    // their column order.
    let mut norms: Vec<f64> = (0..n).map(|j| column_norm(&w, j)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    norms.sort_by(|x, y| y.partial_cmp(x).unwrap());

    // Null-space columns hold roundoff junk in an arbitrary direction; do
    // not normalize those, let the completion produce their basis vectors.
    let zero_tol = norms[0] * 8.0 * m as f64 * f64::EPSILON;
    let mut u = Matrix::zeros(m, m);
    let mut v_sorted = Matrix::zeros(n, n);
    let mut filled = 0usize;
    for (slot, &j) in order.iter().enumerate() {
        v_sorted.set_block(0, slot, &v.column(j));
        let sigma = norms[slot];
        if sigma > zero_tol {
            for i in 0..m {
                u[(i, slot)] = w[(i, j)] / sigma;
            }
            filled = slot + 1;
        }
    }
    complete_unitary(&mut u, filled);

    Ok(Svd { u, sigma: SingularSpectrum::new(norms, m - n), v: v_sorted })
}

/// (||w_p||^2, ||w_q||^2, w_p^H w_q)
fn column_gram(w: &Matrix, p: usize, q: usize) -> (f64, f64, Complex64) {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = Complex64::new(0.0, 0.0);
    for i in 0..w.rows() {
        let wp = w[(i, p)];
        let wq = w[(i, q)];
        alpha += wp.norm_sqr();
        beta += wq.norm_sqr();
        gamma += wp.conj() * wq;
    }
    (alpha, beta, gamma)
}

fn column_norm(w: &Matrix, j: usize) -> f64 {
    (0..w.rows()).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt()
}

/// Right-multiplies columns (p, q) by [[c, s], [-s conj(phase), c conj(phase)]],
/// the unitary that orthogonalizes the pair after factoring out the phase of
/// their inner product.
fn apply_rotation(w: &mut Matrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let pc = phase.conj();
    for i in 0..w.rows() {
        let wp = w[(i, p)];
        let wq = w[(i, q)];
        w[(i, p)] = c * wp - s * pc * wq;
        w[(i, q)] = s * wp + c * pc * wq;
    }
}

/// Orthonormal basis of the complement of range(basis): an m x (m - r) matrix
/// whose columns extend the given orthonormal columns to a basis of C^m.
/// Requires r < m.
pub fn orthonormal_complement(basis: &Matrix) -> Matrix {
    let (m, r) = basis.dims();
    assert!(r < m, "basis already spans the whole space");
    let mut full = Matrix::zeros(m, m);
    full.set_block(0, 0, basis);
    complete_unitary(&mut full, r);
    full.block(0, m, r, m)
}

/// Fills columns `filled..` of `u` with an orthonormal completion, choosing at
/// each step the standard basis vector with the largest residual.
fn complete_unitary(u: &mut Matrix, filled: usize) {
    let m = u.rows();
    for slot in filled..m {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for cand in 0..m {
            let mut col: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); m];
            col[cand] = Complex64::new(1.0, 0.0);
            orthogonalize(u, slot, &mut col);
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, col));
            }
        }
        let (norm, mut col) = best.expect("m > 0");
        for z in col.iter_mut() {
            *z /= norm;
        }
        // One re-orthogonalization pass keeps the completion crisp.
        orthogonalize(u, slot, &mut col);
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..m {
            u[(i, slot)] = col[i] / norm;
        }
    }
}

/// Modified Gram-Schmidt of `col` against the first `k` columns of `u`.
fn orthogonalize(u: &Matrix, k: usize, col: &mut [Complex64]) {
    let m = u.rows();
    for j in 0..k {
        let mut proj = Complex64::new(0.0, 0.0);
        for i in 0..m {
            proj += u[(i, j)].conj() * col[i];
        }
        for i in 0..m {
            col[i] -= proj * u[(i, j)];
        }
    }
}
