//! Block-diagonal decomposition contexts U^H G V = blkdiag(G1, G2) and the
//! projection of a perturbation into the same coordinates.

use core_linalg::{tol, Matrix};

use crate::error::{PerturbError, Result};

/// A matrix G with unitaries U = [U1, U2], V = [V1, V2] such that U^H G V is
/// block diagonal at the split index r.
#[derive(Debug, Clone)]
pub struct BlockContext {
    pub g: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    pub r: usize,
    pub g1: Matrix,
    pub g2: Matrix,
}

impl BlockContext {
    pub fn m(&self) -> usize {
        self.g.rows()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn u1(&self) -> Matrix {
        self.u.block(0, self.m(), 0, self.r)
    }

    pub fn u2(&self) -> Matrix {
        self.u.block(0, self.m(), self.r, self.m())
    }

    pub fn v1(&self) -> Matrix {
        self.v.block(0, self.n(), 0, self.r)
    }

    pub fn v2(&self) -> Matrix {
        self.v.block(0, self.n(), self.r, self.n())
    }
}

/// Validates the unitaries and the block-diagonal structure, then extracts
/// the diagonal blocks. Off-diagonal mass above 1e-12 |G|_F is rejected with
/// the measured contamination.
pub fn split_context(g: &Matrix, u: &Matrix, v: &Matrix, r: usize) -> Result<BlockContext> {
    let (m, n) = g.dims();
    if r < 1 || r >= m.min(n) {
        return Err(core_linalg::LinalgError::SplitOutOfRange { r, max: m.min(n) }.into());
    }
    if u.dims() != (m, m) || v.dims() != (n, n) {
        return Err(PerturbError::Shape(format!(
            "U must be {m}x{m} and V {n}x{n}, got {}x{} and {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    u.check_unitary(tol::tol_unitary(m))?;
    v.check_unitary(tol::tol_unitary(n))?;

    let core = &(&u.adjoint() * g) * v;
    let off_12 = core.block(0, r, r, n).frobenius();
    let off_21 = core.block(r, m, 0, r).frobenius();
    let measured = off_12.hypot(off_21);
    let threshold = 1e-12 * g.frobenius();
    if measured > threshold {
        return Err(PerturbError::OffDiagonal { measured, threshold });
    }

    Ok(BlockContext {
        g: g.clone(),
        u: u.clone(),
        v: v.clone(),
        r,
        g1: core.block(0, r, 0, r),
        g2: core.block(r, m, r, n),
    })
}

/// The four blocks of U^H E V at the context split.
#[derive(Debug, Clone)]
pub struct PerturbationBlocks {
    pub e11: Matrix,
    pub e12: Matrix,
    pub e21: Matrix,
    pub e22: Matrix,
}

impl PerturbationBlocks {
    /// [[E11, E12], [E21, E22]] as one matrix in the (U, V) coordinates.
    pub fn assemble_core(&self) -> Matrix {
        Matrix::block_2x2(&self.e11, &self.e12, &self.e21, &self.e22)
    }

    /// Maps the blocks back to the original coordinates: U [blocks] V^H.
    pub fn assemble(&self, ctx: &BlockContext) -> Matrix {
        &(&ctx.u * &self.assemble_core()) * &ctx.v.adjoint()
    }
}

/// Projects a perturbation E into the (U, V) coordinates of the context.
pub fn project_perturbation(ctx: &BlockContext, e: &Matrix) -> Result<PerturbationBlocks> {
    let (m, n) = (ctx.m(), ctx.n());
    if e.dims() != (m, n) {
        return Err(PerturbError::Shape(format!(
            "E must be {m}x{n}, got {}x{}",
            e.rows(),
            e.cols()
        )));
    }
    let r = ctx.r;
    let core = &(&ctx.u.adjoint() * e) * &ctx.v;
    Ok(PerturbationBlocks {
        e11: core.block(0, r, 0, r),
        e12: core.block(0, r, r, n),
        e21: core.block(r, m, 0, r),
        e22: core.block(r, m, r, n),
    })
}
