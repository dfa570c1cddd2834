//! Two-sided complex Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use crate::error::{LinalgError, Result};
use crate::matrix::Matrix;
use crate::tol::{tol_herm, JACOBI_COS_TOL, MAX_SWEEPS};

#[derive(Debug, Clone)]
pub struct Eigh {
    /// n x n unitary, columns are eigenvectors.
    pub q: Matrix,
    /// Real eigenvalues, nonincreasing.
    pub lambda: Vec<f64>,
}

impl Eigh {
    /// Q * diag(lambda) * Q^H.
    pub fn reconstruct(&self) -> Matrix {
        let d = Matrix::diag(&self.lambda);
        &(&self.q * &d) * &self.q.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian within `tol_herm(|h|_F)`; the offending entry
/// is reported otherwise. The tiny skew part is discarded before iterating.
pub fn eigh(h: &Matrix) -> Result<Eigh> {
    if !h.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", h.rows(), h.cols()),
        });
    }
    let tol = tol_herm(h.frobenius());
    let (dev, row, col) = h.hermitian_deviation();
    if dev > tol {
        return Err(LinalgError::NotHermitian { row, col, magnitude: dev, tol });
    }

    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut q = Matrix::identity(n);
    let scale = a.frobenius();
    if scale == 0.0 {
        return Ok(Eigh { q, lambda: vec![0.0; n] });
    }
    let thresh = JACOBI_COS_TOL * scale;

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q_idx in (p + 1)..n {
                let hpq = a[(p, q_idx)];
                if hpq.norm() <= thresh {
                    continue;
                }
                rotated = true;
                let phase = hpq / hpq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q_idx, q_idx)].re;
                let tau = (aqq - app) / (2.0 * hpq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate(&mut a, &mut q, p, q_idx, c, s, phase);
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

    let mut lambda: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| lambda[j].partial_cmp(&lambda[i]).unwrap());
    lambda.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let mut q_sorted = Matrix::zeros(n, n);
    for (slot, &j) in order.iter().enumerate() {
        q_sorted.set_block(0, slot, &q.column(j));
    }
    Ok(Eigh { q: q_sorted, lambda })
}

/// A <- J^H A J and Q <- Q J for the plane rotation
/// J = [[c, s], [-s conj(phase), c conj(phase)]] acting on indices (p, q).
fn rotate(a: &mut Matrix, q: &mut Matrix, p: usize, qi: usize, c: f64, s: f64, phase: Complex64) {
    let n = a.rows();
    let pc = phase.conj();
    // Column update: B = A J.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, qi)];
        a[(i, p)] = c * aip - s * pc * aiq;
        a[(i, qi)] = s * aip + c * pc * aiq;
    }
    // Row update: J^H B.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(qi, j)];
        a[(p, j)] = c * apj - s * phase * aqj;
        a[(qi, j)] = s * apj + c * phase * aqj;
    }
    // The rotation annihilates the pair exactly; clear the roundoff residue.
    a[(p, qi)] = Complex64::new(0.0, 0.0);
    a[(qi, p)] = Complex64::new(0.0, 0.0);
    for i in 0..q.rows() {
        let qip = q[(i, p)];
        let qiq = q[(i, qi)];
        q[(i, p)] = c * qip - s * pc * qiq;
        q[(i, qi)] = s * qip + c * pc * qiq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_fixed() {
        let h = Matrix::diag(&[2.0, -1.0]);
        let e = eigh(&h).unwrap();
        assert_eq!(e.lambda, vec![2.0, -1.0]);
        assert_eq!(e.q, Matrix::identity(2));
    }

    #[test]
    fn symmetric_flip() {
        let h = Matrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = eigh(&h).unwrap();
        assert!((e.lambda[0] - 1.0).abs() < 1e-14);
        assert!((e.lambda[1] + 1.0).abs() < 1e-14);
        assert!((&e.reconstruct() - &h).frobenius() < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = Matrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(0.0, -2.0),
                Complex64::new(-1.0, 0.0),
            ],
        )
        .unwrap();
        let e = eigh(&h).unwrap();
        assert!(e.q.unitary_residual() < 1e-13);
        assert!((&e.reconstruct() - &h).frobenius() < 1e-13 * h.frobenius());
        // Eigenvalues of [[1, 2i], [-2i, -1]] are +-sqrt(5).
        assert!((e.lambda[0] - 5f64.sqrt()).abs() < 1e-13);
        assert!((e.lambda[1] + 5f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = Matrix::from_real(2, 2, &[1.0, 2.0, 0.5, 1.0]).unwrap();
        match eigh(&h) {
            Err(LinalgError::NotHermitian { magnitude, .. }) => {
                assert!((magnitude - 1.5).abs() < 1e-15)
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }
}
