//! Fixed-point solve of the coupled quadratic system
//!
//!   Gamma (G1 + E11) - (G2 + E22) Omega = E21 - Gamma E12 Omega,
//!   Omega (G1 + E11)^H - (G2 + E22)^H Gamma = E12^H - Omega E21^H Gamma,
//!
//! by successive substitution x_{k+1} = T^{-1}((E21, E12^H) - phi(x_k)) from
//! x_0 = 0. Each inverse application is one coupled Sylvester solve with the
//! same coefficient pair, so the diagonalizations are reused across steps.

use core_linalg::{pair_norm, tol, Matrix};
use sylvester::CoupledSolver;

use crate::context::{BlockContext, PerturbationBlocks};
use crate::error::{PerturbError, Result};
use crate::gap::GapReport;

/// A solution pair with iteration statistics and the Frobenius residuals of
/// the two quadratic equations.
#[derive(Debug, Clone)]
pub struct RotationPair {
    pub gamma: Matrix,
    pub omega: Matrix,
    pub iterations: usize,
    pub final_step_norm: f64,
    pub residual_1: f64,
    pub residual_2: f64,
}

/// The linear operator T(Gamma, Omega) with A = G1 + E11, B = G2 + E22.
pub fn t_map(
    ctx: &BlockContext,
    eb: &PerturbationBlocks,
    gamma: &Matrix,
    omega: &Matrix,
) -> (Matrix, Matrix) {
    let a = &ctx.g1 + &eb.e11;
    let b = &ctx.g2 + &eb.e22;
    let first = &(gamma * &a) - &(&b * omega);
    let second = &(omega * &a.adjoint()) - &(&b.adjoint() * gamma);
    (first, second)
}

/// The quadratic term phi(Gamma, Omega) = (Gamma E12 Omega, Omega E21^H Gamma).
pub fn phi_map(eb: &PerturbationBlocks, gamma: &Matrix, omega: &Matrix) -> (Matrix, Matrix) {
    let first = &(gamma * &eb.e12) * omega;
    let second = &(omega * &eb.e21.adjoint()) * gamma;
    (first, second)
}

/// Solves for the rotation pair; requires the smallness condition of `rep`.
pub fn solve_rotations(
    ctx: &BlockContext,
    eb: &PerturbationBlocks,
    rep: &GapReport,
) -> Result<RotationPair> {
    if !rep.condition_met {
        return Err(PerturbError::ConditionNotMet { delta_under: rep.delta_under, kappa2: rep.kappa2 });
    }
    solve_rotations_forced(ctx, eb, rep)
}

/// Attempts the fixed-point iteration even when the sufficient condition
/// fails (it is not necessary). Certificates downstream are then not
/// guaranteed, only checked after the fact.
pub fn solve_rotations_forced(
    ctx: &BlockContext,
    eb: &PerturbationBlocks,
    rep: &GapReport,
) -> Result<RotationPair> {
    let a = &ctx.g1 + &eb.e11;
    let b = &ctx.g2 + &eb.e22;
    let solver = CoupledSolver::new(&a, &b)?;

    let (m, n, r) = (ctx.m(), ctx.n(), ctx.r);
    let mut gamma = Matrix::zeros(m - r, r);
    let mut omega = Matrix::zeros(n - r, r);
    let rhs_base_1 = eb.e21.clone();
    let rhs_base_2 = eb.e12.adjoint();

    let mut iterations = 0;
    let mut final_step_norm = f64::INFINITY;
    let mut converged = false;
    while iterations < tol::MAX_FP_ITERS {
        iterations += 1;
        let (phi1, phi2) = phi_map(eb, &gamma, &omega);
        let sol = solver.solve(&(&rhs_base_1 - &phi1), &(&rhs_base_2 - &phi2))?;
        let step = pair_norm(&(&sol.x - &gamma), &(&sol.y - &omega), rep.pairing)?;
        gamma = sol.x;
        omega = sol.y;
        final_step_norm = step;
        let iterate_norm = pair_norm(&gamma, &omega, rep.pairing)?;
        if step < tol::TOL_FP * (1.0 + iterate_norm) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(PerturbError::NoConvergence { iterations, final_step_norm });
    }

    let (t1, t2) = t_map(ctx, eb, &gamma, &omega);
    let (phi1, phi2) = phi_map(eb, &gamma, &omega);
    let residual_1 = (&(&t1 + &phi1) - &rhs_base_1).frobenius();
    let residual_2 = (&(&t2 + &phi2) - &rhs_base_2).frobenius();
    let allowance = tol::TOL_SOLVE * (eb.e21.frobenius() + eb.e12.frobenius() + 1.0);
    if residual_1 > allowance || residual_2 > allowance {
        return Err(PerturbError::Diagnostic(format!(
            "rotation residuals ({residual_1:.3e}, {residual_2:.3e}) exceed allowance {allowance:.3e}"
        )));
    }

    Ok(RotationPair { gamma, omega, iterations, final_step_norm, residual_1, residual_2 })
}

/// (1 + sqrt(1 - 4 k)) / (1 - 2 k + sqrt(1 - 4 k)), the sharp factor of the
/// fixed-point bound; 1 at k = 0, increasing to 2 as k -> 1/4.
pub fn contraction_factor(kappa2: f64) -> f64 {
    let root = (1.0 - 4.0 * kappa2).sqrt();
    (1.0 + root) / (1.0 - 2.0 * kappa2 + root)
}

/// The norm bound on the rotation pair: factor(kappa2) * c |(E21, E12^H)| / delta_under,
/// always strictly below 2 c |(E21, E12^H)| / delta_under.
pub fn rotation_bound(rep: &GapReport) -> Result<f64> {
    if !rep.condition_met {
        return Err(PerturbError::ConditionNotMet { delta_under: rep.delta_under, kappa2: rep.kappa2 });
    }
    let factor = contraction_factor(rep.kappa2);
    let bound = factor * rep.c * rep.g_norm / rep.delta_under;
    let cap = 2.0 * rep.c * rep.g_norm / rep.delta_under;
    debug_assert!(bound <= cap && (rep.g_norm == 0.0 || bound < cap));
    Ok(bound)
}
