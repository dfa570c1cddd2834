//! Subspace-rotation oracle: reads (Gamma, Omega) off a full SVD of the
//! perturbed matrix instead of solving the quadratic system.

use core_linalg::{svd, Complex64, Matrix};

use crate::error::OracleError;

#[derive(Debug, Clone)]
pub struct RotationOracleResult {
    pub gamma: Matrix,
    pub omega: Matrix,
    /// Frobenius residuals of the two quadratic equations at the oracle output.
    pub residual_1: f64,
    pub residual_2: f64,
}

/// Computes the full SVD of G + E, greedily selects the r singular directions
/// whose left vectors lie closest to range(U1) (largest principal cosine),
/// and forms Gamma = (U2^H W1)(U1^H W1)^{-1}, Omega = (V2^H Z1)(V1^H Z1)^{-1}
/// from the selected left/right vectors W1, Z1.
///
/// Abstains when U1^H W1 or V1^H Z1 has condition number above 1e8.
pub fn direct_rotation_oracle(
    g: &Matrix,
    u: &Matrix,
    v: &Matrix,
    r: usize,
    e: &Matrix,
) -> Result<RotationOracleResult, OracleError> {
    let (m, n) = g.dims();
    assert!(r >= 1 && r < m.min(n), "split out of range");
    let g_tilde = g + e;
    let f = svd(&g_tilde)?;

    let u1 = u.block(0, m, 0, r);
    let u2 = u.block(0, m, r, m);
    let v1 = v.block(0, n, 0, r);
    let v2 = v.block(0, n, r, n);

    // Projection norm of each perturbed left vector onto range(U1).
    let proj = &u1.adjoint() * &f.u;
    let mut scores: Vec<(f64, usize)> = (0..m.min(n))
        .map(|j| {
            let norm = (0..r).map(|i| proj[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            (norm, j)
        })
        .collect();
    scores.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut selected: Vec<usize> = scores.iter().take(r).map(|&(_, j)| j).collect();
    selected.sort_unstable();

    let mut w1 = Matrix::zeros(m, r);
    let mut z1 = Matrix::zeros(n, r);
    for (slot, &j) in selected.iter().enumerate() {
        w1.set_block(0, slot, &f.u.column(j));
        z1.set_block(0, slot, &f.v.column(j));
    }

    let m1 = &u1.adjoint() * &w1;
    let m2 = &v1.adjoint() * &z1;
    let gamma = &(&u2.adjoint() * &w1) * &inv_checked(&m1)?;
    let omega = &(&v2.adjoint() * &z1) * &inv_checked(&m2)?;

    // Residuals of the quadratic system in the (U, V) coordinates:
    // Gamma A - B Omega = E21 - Gamma E12 Omega and its adjoint twin.
    let core = &(&u.adjoint() * &g_tilde) * v;
    let a11 = core.block(0, r, 0, r);
    let e12 = core.block(0, r, r, n);
    let e21 = core.block(r, m, 0, r);
    let b22 = core.block(r, m, r, n);
    let quad_1 = &(&gamma * &e12) * &omega;
    let quad_2 = &(&omega * &e21.adjoint()) * &gamma;
    let residual_1 = (&(&(&(&gamma * &a11) - &(&b22 * &omega)) - &e21) + &quad_1).frobenius();
    let residual_2 = (&(&(&(&omega * &a11.adjoint()) - &(&b22.adjoint() * &gamma)) - &e12.adjoint())
        + &quad_2)
        .frobenius();

    Ok(RotationOracleResult { gamma, omega, residual_1, residual_2 })
}

/// Inverse of a small square matrix by Gauss-Jordan with partial pivoting,
/// preceded by an SVD condition estimate.
fn inv_checked(a: &Matrix) -> Result<Matrix, OracleError> {
    let sigma = svd(a)?.sigma;
    let cond = sigma.max() / sigma.min();
    if !cond.is_finite() || cond > 1e8 {
        return Err(OracleError::IllConditioned { cond });
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut inv = Matrix::identity(n);
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = work[(col, col)].norm();
        for row in (col + 1)..n {
            if work[(row, col)].norm() > pivot_val {
                pivot_val = work[(row, col)].norm();
                pivot_row = row;
            }
        }
        if pivot_val == 0.0 {
            return Err(OracleError::Singular(format!("zero pivot at column {col}")));
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = work[(col, j)];
                work[(col, j)] = work[(pivot_row, j)];
                work[(pivot_row, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(pivot_row, j)];
                inv[(pivot_row, j)] = tmp;
            }
        }
        let pivot = work[(col, col)];
        for j in 0..n {
            work[(col, j)] /= pivot;
            inv[(col, j)] /= pivot;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = work[(row, col)];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let wd = factor * work[(col, j)];
                work[(row, j)] -= wd;
                let id = factor * inv[(col, j)];
                inv[(row, j)] -= id;
            }
        }
    }
    Ok(inv)
}
