//! Seeded randomness for instance generation. All draws go through an
//! explicitly seeded ChaCha stream; there is no hidden global state.

use core_linalg::{Complex64, Matrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box-Muller.
pub fn standard_normal(rng: &mut SeededRng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn complex_normal(rng: &mut SeededRng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// m x n matrix with independent complex Gaussian entries.
pub fn random_matrix(rng: &mut SeededRng, m: usize, n: usize) -> Matrix {
    Matrix::from_fn(m, n, |_, _| complex_normal(rng))
}

/// Random n x n unitary as a product of n Householder reflectors built from
/// seeded Gaussian vectors.
pub fn random_unitary(rng: &mut SeededRng, n: usize) -> Matrix {
    let mut q = Matrix::identity(n);
    for _ in 0..n {
        let w: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let v: Vec<Complex64> = w.into_iter().map(|z| z / norm).collect();
        // q <- (I - 2 v v^H) q
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in 0..n {
                dot += v[i].conj() * q[(i, j)];
            }
            let dot2 = 2.0 * dot;
            for i in 0..n {
                let delta = dot2 * v[i];
                q[(i, j)] -= delta;
            }
        }
    }
    q
}

/// m x n matrix with prescribed singular values (random unitary factors).
pub fn random_with_singular_values(rng: &mut SeededRng, m: usize, n: usize, svals: &[f64]) -> Matrix {
    let u = random_unitary(rng, m);
    let v = random_unitary(rng, n);
    let s = Matrix::leading_diag(m, n, svals);
    &(&u * &s) * &v.adjoint()
}

/// Hermitian matrix with prescribed eigenvalues.
pub fn random_hermitian(rng: &mut SeededRng, eigs: &[f64]) -> Matrix {
    let n = eigs.len();
    let q = random_unitary(rng, n);
    let d = Matrix::diag(eigs);
    (&(&q * &d) * &q.adjoint()).hermitian_part()
}
