//! Inverse and direct square roots of I + g^H g, used to orthonormalize the
//! corrected singular vector bases.

use crate::error::Result;
use crate::eigh::eigh;
use crate::matrix::Matrix;

/// (I + g^H g)^(-1/2), Hermitian positive definite.
pub fn inv_sqrt_gram(g: &Matrix) -> Result<Matrix> {
    gram_power(g, -0.5)
}

/// (I + g^H g)^(+1/2).
pub fn sqrt_gram(g: &Matrix) -> Result<Matrix> {
    gram_power(g, 0.5)
}

fn gram_power(g: &Matrix, exponent: f64) -> Result<Matrix> {
    let n = g.cols();
    let gram = &(&Matrix::identity(n) + &(&g.adjoint() * g));
    let e = eigh(gram)?;
    // Eigenvalues are >= 1 up to roundoff.
    let powered: Vec<f64> = e.lambda.iter().map(|&l| l.max(f64::MIN_POSITIVE).powf(exponent)).collect();
    let d = Matrix::diag(&powered);
    let result = &(&e.q * &d) * &e.q.adjoint();
    Ok(result.hermitian_part())
}
