//! The coupled pair XA - BY = S, YA^H - B^H X = T. A nonsquare B is padded
//! with zero blocks to an equivalent square problem, and the padded pair is
//! merged into a single Sylvester equation whose coefficients are the
//! Hermitian embeddings [[0, A^H], [A, 0]] and [[0, B], [B^H, 0]].

use core_linalg::{tol, Matrix};

use crate::error::{Result, SylvesterError};
use crate::herm::HermSylvesterSolver;

/// XA - BY = S, YA^H - B^H X = T with A (r x r), B (s x t), S (s x r), T (t x r).
#[derive(Debug, Clone)]
pub struct CoupledSylvesterProblem {
    pub a: Matrix,
    pub b: Matrix,
    pub s_rhs: Matrix,
    pub t_rhs: Matrix,
}

impl CoupledSylvesterProblem {
    pub fn new(a: Matrix, b: Matrix, s_rhs: Matrix, t_rhs: Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(SylvesterError::Shape("A must be square".into()));
        }
        let r = a.rows();
        let (s, t) = b.dims();
        if s_rhs.dims() != (s, r) {
            return Err(SylvesterError::Shape(format!(
                "S must be {s}x{r}, got {}x{}",
                s_rhs.rows(),
                s_rhs.cols()
            )));
        }
        if t_rhs.dims() != (t, r) {
            return Err(SylvesterError::Shape(format!(
                "T must be {t}x{r}, got {}x{}",
                t_rhs.rows(),
                t_rhs.cols()
            )));
        }
        Ok(Self { a, b, s_rhs, t_rhs })
    }
}

/// Solution pair with the Frobenius residuals of both equations.
#[derive(Debug, Clone)]
pub struct SolutionPair {
    pub x: Matrix,
    pub y: Matrix,
    pub residual_1: f64,
    pub residual_2: f64,
}

/// Zero-pads B (and the matching right-hand side) so that B becomes square of
/// size max(s, t). Solving the padded problem and truncating recovers the
/// original solution.
pub fn pad_to_square(p: &CoupledSylvesterProblem) -> CoupledSylvesterProblem {
    let r = p.a.rows();
    let (s, t) = p.b.dims();
    if s == t {
        return p.clone();
    }
    if s > t {
        // B_ext = [B, 0], T_ext gains s - t zero rows.
        let b_ext = Matrix::hstack(&p.b, &Matrix::zeros(s, s - t));
        let t_ext = Matrix::vstack(&p.t_rhs, &Matrix::zeros(s - t, r));
        CoupledSylvesterProblem { a: p.a.clone(), b: b_ext, s_rhs: p.s_rhs.clone(), t_rhs: t_ext }
    } else {
        // B_ext gains t - s zero rows, S_ext gains t - s zero rows.
        let b_ext = Matrix::vstack(&p.b, &Matrix::zeros(t - s, t));
        let s_ext = Matrix::vstack(&p.s_rhs, &Matrix::zeros(t - s, r));
        CoupledSylvesterProblem { a: p.a.clone(), b: b_ext, s_rhs: s_ext, t_rhs: p.t_rhs.clone() }
    }
}

/// Reusable coupled solver: the two Hermitian embeddings are diagonalized once
/// and shared across solves with different right-hand sides.
#[derive(Debug, Clone)]
pub struct CoupledSolver {
    r: usize,
    s: usize,
    t: usize,
    k: usize,
    a: Matrix,
    b: Matrix,
    merged: HermSylvesterSolver,
}

impl CoupledSolver {
    pub fn new(a: &Matrix, b: &Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(SylvesterError::Shape("A must be square".into()));
        }
        let r = a.rows();
        let (s, t) = b.dims();
        let k = s.max(t);
        let b_ext = if s == t {
            b.clone()
        } else if s > t {
            Matrix::hstack(b, &Matrix::zeros(s, s - t))
        } else {
            Matrix::vstack(b, &Matrix::zeros(t - s, t))
        };
        // eig([[0, A^H],[A, 0]]) = +-sv(A); likewise for the padded B. The
        // eigenvalue gap of the merged pair equals the singular value gap
        // min |omega - gamma| over sv(A) x sv_ext(B).
        let ma = Matrix::block_2x2(&Matrix::zeros(r, r), &a.adjoint(), a, &Matrix::zeros(r, r));
        let mb = Matrix::block_2x2(&Matrix::zeros(k, k), &b_ext, &b_ext.adjoint(), &Matrix::zeros(k, k));
        let merged = HermSylvesterSolver::new(&ma, &mb)?;
        Ok(Self { r, s, t, k, a: a.clone(), b: b.clone(), merged })
    }

    /// min |omega - gamma| over sv(A) x sv_ext(B), as seen by the merged solver.
    pub fn min_gap(&self) -> f64 {
        self.merged.min_gap()
    }

    pub fn solve(&self, s_rhs: &Matrix, t_rhs: &Matrix) -> Result<SolutionPair> {
        let (r, s, t, k) = (self.r, self.s, self.t, self.k);
        if s_rhs.dims() != (s, r) || t_rhs.dims() != (t, r) {
            return Err(SylvesterError::Shape("right-hand side shape mismatch".into()));
        }
        let s_ext = if k > s { Matrix::vstack(s_rhs, &Matrix::zeros(k - s, r)) } else { s_rhs.clone() };
        let t_ext = if k > t { Matrix::vstack(t_rhs, &Matrix::zeros(k - t, r)) } else { t_rhs.clone() };
        let c = Matrix::block_2x2(&s_ext, &Matrix::zeros(k, r), &Matrix::zeros(k, r), &t_ext);
        let z = self.merged.solve(&c);
        let x = z.block(0, s, r, 2 * r);
        let y = z.block(k, k + t, 0, r);

        let residual_1 = (&(&(&x * &self.a) - &(&self.b * &y)) - s_rhs).frobenius();
        let residual_2 =
            (&(&(&y * &self.a.adjoint()) - &(&self.b.adjoint() * &x)) - t_rhs).frobenius();
        let pair = SolutionPair { x, y, residual_1, residual_2 };
        let allowance = tol::TOL_SOLVE * (s_rhs.frobenius() + t_rhs.frobenius() + 1.0);
        if residual_1 > allowance || residual_2 > allowance {
            return Err(SylvesterError::ResidualTooLarge { r1: residual_1, r2: residual_2, allowance });
        }
        Ok(pair)
    }
}

/// One-shot solve of the coupled pair.
pub fn solve_coupled(p: &CoupledSylvesterProblem) -> Result<SolutionPair> {
    CoupledSolver::new(&p.a, &p.b)?.solve(&p.s_rhs, &p.t_rhs)
}
