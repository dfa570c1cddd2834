//! Brute-force solve of the coupled Sylvester pair by stacking both equations
//! into one dense real linear system over the real and imaginary parts of all
//! unknowns, eliminated with partial pivoting. Shares no code with the
//! production solver path.

use core_linalg::{Complex64, Matrix};

use crate::error::OracleError;

#[derive(Debug, Clone)]
pub struct VectorizedSolution {
    pub x: Matrix,
    pub y: Matrix,
    pub residual_1: f64,
    pub residual_2: f64,
}

/// Solves XA - BY = S, YA^H - B^H X = T by dense elimination.
pub fn vectorized_coupled_solve(
    a: &Matrix,
    b: &Matrix,
    s_rhs: &Matrix,
    t_rhs: &Matrix,
) -> Result<VectorizedSolution, OracleError> {
    let r = a.rows();
    assert!(a.is_square(), "A must be square");
    let (s, t) = b.dims();
    assert_eq!(s_rhs.dims(), (s, r), "S must be s x r");
    assert_eq!(t_rhs.dims(), (t, r), "T must be t x r");

    let unknowns = (s + t) * r; // complex count
    let n_real = 2 * unknowns;
    let mut mat = vec![0.0_f64; n_real * n_real];
    let mut rhs = vec![0.0_f64; n_real];

    let x_idx = |i: usize, k: usize| i * r + k;
    let y_idx = |l: usize, k: usize| s * r + l * r + k;

    // Writes the real 2x2 expansion of complex coefficient c at (row, col).
    let put = |mat: &mut Vec<f64>, row: usize, col: usize, c: Complex64| {
        mat[(2 * row) * n_real + 2 * col] += c.re;
        mat[(2 * row) * n_real + 2 * col + 1] -= c.im;
        mat[(2 * row + 1) * n_real + 2 * col] += c.im;
        mat[(2 * row + 1) * n_real + 2 * col + 1] += c.re;
    };

    // Equation 1, entry (i, j): sum_k X[i,k] A[k,j] - sum_l B[i,l] Y[l,j] = S[i,j].
    for i in 0..s {
        for j in 0..r {
            let row = i * r + j;
            for k in 0..r {
                put(&mut mat, row, x_idx(i, k), a[(k, j)]);
            }
            for l in 0..t {
                put(&mut mat, row, y_idx(l, j), -b[(i, l)]);
            }
            rhs[2 * row] = s_rhs[(i, j)].re;
            rhs[2 * row + 1] = s_rhs[(i, j)].im;
        }
    }
    // Equation 2, entry (i, j): sum_k Y[i,k] conj(A[j,k]) - sum_l conj(B[l,i]) X[l,j] = T[i,j].
    for i in 0..t {
        for j in 0..r {
            let row = s * r + i * r + j;
            for k in 0..r {
                put(&mut mat, row, y_idx(i, k), a[(j, k)].conj());
            }
            for l in 0..s {
                put(&mut mat, row, x_idx(l, j), -b[(l, i)].conj());
            }
            rhs[2 * row] = t_rhs[(i, j)].re;
            rhs[2 * row + 1] = t_rhs[(i, j)].im;
        }
    }

    gauss_solve(&mut mat, &mut rhs, n_real)?;

    let mut x = Matrix::zeros(s, r);
    for i in 0..s {
        for k in 0..r {
            let q = x_idx(i, k);
            x[(i, k)] = Complex64::new(rhs[2 * q], rhs[2 * q + 1]);
        }
    }
    let mut y = Matrix::zeros(t, r);
    for l in 0..t {
        for k in 0..r {
            let q = y_idx(l, k);
            y[(l, k)] = Complex64::new(rhs[2 * q], rhs[2 * q + 1]);
        }
    }

    let residual_1 = (&(&(&x * a) - &(b * &y)) - s_rhs).frobenius();
    let residual_2 = (&(&(&y * &a.adjoint()) - &(&b.adjoint() * &x)) - t_rhs).frobenius();
    Ok(VectorizedSolution { x, y, residual_1, residual_2 })
}

/// Brute-force solve of the single Sylvester equation XA - BX = S by the same
/// real vectorization.
pub fn vectorized_sylvester_solve(a: &Matrix, b: &Matrix, s_rhs: &Matrix) -> Result<Matrix, OracleError> {
    let r = a.rows();
    assert!(a.is_square() && b.is_square());
    let s = b.rows();
    assert_eq!(s_rhs.dims(), (s, r));

    let unknowns = s * r;
    let n_real = 2 * unknowns;
    let mut mat = vec![0.0_f64; n_real * n_real];
    let mut rhs = vec![0.0_f64; n_real];
    let x_idx = |i: usize, k: usize| i * r + k;
    let put = |mat: &mut Vec<f64>, row: usize, col: usize, c: Complex64| {
        mat[(2 * row) * n_real + 2 * col] += c.re;
        mat[(2 * row) * n_real + 2 * col + 1] -= c.im;
        mat[(2 * row + 1) * n_real + 2 * col] += c.im;
        mat[(2 * row + 1) * n_real + 2 * col + 1] += c.re;
    };
    // Entry (i, j): sum_k X[i,k] A[k,j] - sum_l B[i,l] X[l,j] = S[i,j].
    for i in 0..s {
        for j in 0..r {
            let row = i * r + j;
            for k in 0..r {
                put(&mut mat, row, x_idx(i, k), a[(k, j)]);
            }
            for l in 0..s {
                put(&mut mat, row, x_idx(l, j), -b[(i, l)]);
            }
            rhs[2 * row] = s_rhs[(i, j)].re;
            rhs[2 * row + 1] = s_rhs[(i, j)].im;
        }
    }
    gauss_solve(&mut mat, &mut rhs, n_real)?;
    let mut x = Matrix::zeros(s, r);
    for i in 0..s {
        for k in 0..r {
            let q = x_idx(i, k);
            x[(i, k)] = Complex64::new(rhs[2 * q], rhs[2 * q + 1]);
        }
    }
    Ok(x)
}

/// In-place Gaussian elimination with partial pivoting; `rhs` becomes the solution.
fn gauss_solve(mat: &mut [f64], rhs: &mut [f64], n: usize) -> Result<(), OracleError> {
    let scale = mat.iter().fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = mat[col * n + col].abs();
        for row in (col + 1)..n {
            let v = mat[row * n + col].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val <= 1e-13 * scale {
            return Err(OracleError::Singular(format!(
                "pivot {pivot_val:.3e} at column {col} below threshold"
            )));
        }
        if pivot_row != col {
            for j in 0..n {
                mat.swap(col * n + j, pivot_row * n + j);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = mat[col * n + col];
        for row in (col + 1)..n {
            let factor = mat[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            mat[row * n + col] = 0.0;
            for j in (col + 1)..n {
                mat[row * n + j] -= factor * mat[col * n + j];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = rhs[col];
        for j in (col + 1)..n {
            acc -= mat[col * n + j] * rhs[j];
        }
        rhs[col] = acc / mat[col * n + col];
    }
    Ok(())
}
