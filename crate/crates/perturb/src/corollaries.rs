//! Side-by-side evaluation of the rotation-norm bounds: the classical
//! Frobenius-based result, its naive spectral-norm paraphrase (which picks up
//! a sqrt(min{m-r, n-r, r}) factor), and the sharper mixed-norm corollaries.
//! Also the improved enclosure of sigma_min(G1_check) available under
//! interval separation.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use core_linalg::{spectral_norm, svd, Matrix};

use crate::context::{BlockContext, PerturbationBlocks};
use crate::corrected::CorrectedDecomposition;
use crate::error::{PerturbError, Result};
use crate::gap::GapReport;
use crate::rotations::contraction_factor;

/// One condition/bound pair. `bound` is present exactly when the condition
/// holds (the closed form needs kappa2 < 1/4).
#[derive(Debug, Clone)]
pub struct CorollaryBound {
    pub condition_met: bool,
    pub kappa2: f64,
    pub bound: Option<f64>,
}

fn evaluate(delta_under: f64, kappa2: f64, norm_over_delta: f64) -> CorollaryBound {
    let condition_met = delta_under > 0.0 && kappa2 < 0.25;
    let bound = condition_met.then(|| contraction_factor(kappa2) * norm_over_delta);
    CorollaryBound { condition_met, kappa2, bound }
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub delta: f64,
    pub delta_under: f64,
    pub epsilon: f64,
    /// sqrt(|E12|_F^2 + |E21|_F^2).
    pub eps_hat: f64,
    /// sqrt(min{m-r, n-r, r}) sqrt(|E12|_2^2 + |E21|_2^2).
    pub eps_tilde: f64,
    pub interval_separated: bool,
    pub stewart_condition_met: bool,
    pub stewart_bound: Option<f64>,
    pub naive_condition_met: bool,
    pub naive_bound: Option<f64>,
    /// Keyed by "cor-f-i", "cor-f-ii", "cor-sp-i", "cor-sp-ii".
    pub new_bounds: BTreeMap<String, CorollaryBound>,
}

/// Evaluates every condition flag and bound value for the same instance.
pub fn corollary_suite(ctx: &BlockContext, eb: &PerturbationBlocks) -> Result<ComparisonReport> {
    let (m, n, r) = (ctx.m(), ctx.n(), ctx.r);
    let sv1 = svd(&ctx.g1)?.sigma;
    let sv2 = svd(&ctx.g2)?.sigma;
    let delta = sv1.min_gap_to_ext(&sv2);
    let delta_under = delta - spectral_norm(&eb.e11)? - spectral_norm(&eb.e22)?;
    let e12_2 = spectral_norm(&eb.e12)?;
    let e21_2 = spectral_norm(&eb.e21)?;
    let epsilon = e12_2.max(e21_2);
    let e12_f = eb.e12.frobenius();
    let e21_f = eb.e21.frobenius();
    let interval_separated = sv1.min() > sv2.max();

    let eps_hat = e12_f.hypot(e21_f);
    let rank_cap = ((m - r).min(n - r).min(r)) as f64;
    let eps_tilde = rank_cap.sqrt() * e12_2.hypot(e21_2);
    debug_assert!(eps_hat * eps_hat >= epsilon * eps_hat - 1e-12);

    // Classical condition eps_hat / delta_under < 1/2, i.e. kappa2 < 1/4 with
    // kappa2 = (eps_hat / delta_under)^2; same shape for the naive variant.
    let du2 = delta_under * delta_under;
    let stewart = evaluate(delta_under, eps_hat * eps_hat / du2, eps_hat / delta_under);
    let naive = evaluate(delta_under, eps_tilde * eps_tilde / du2, eps_tilde / delta_under);

    let mut new_bounds = BTreeMap::new();
    // blkdiag-Frobenius pair norm, c = 1 unconditionally.
    new_bounds.insert(
        "cor-f-i".to_string(),
        evaluate(delta_under, epsilon * eps_hat / du2, eps_hat / delta_under),
    );
    // max-Frobenius pair norm, c = 1 under interval separation.
    let max_f = e12_f.max(e21_f);
    let mut cor_f_ii = evaluate(delta_under, epsilon * max_f / du2, max_f / delta_under);
    if !interval_separated {
        cor_f_ii = CorollaryBound { condition_met: false, kappa2: cor_f_ii.kappa2, bound: None };
    }
    new_bounds.insert("cor-f-ii".to_string(), cor_f_ii);
    // Spectral pair norm, c = pi/2 in general.
    new_bounds.insert(
        "cor-sp-i".to_string(),
        evaluate(
            delta_under,
            FRAC_PI_2 * FRAC_PI_2 * epsilon * epsilon / du2,
            FRAC_PI_2 * epsilon / delta_under,
        ),
    );
    // Spectral pair norm, c = 1 under interval separation.
    let mut cor_sp_ii = evaluate(delta_under, epsilon * epsilon / du2, epsilon / delta_under);
    if !interval_separated {
        cor_sp_ii = CorollaryBound { condition_met: false, kappa2: cor_sp_ii.kappa2, bound: None };
    }
    new_bounds.insert("cor-sp-ii".to_string(), cor_sp_ii);

    Ok(ComparisonReport {
        delta,
        delta_under,
        epsilon,
        eps_hat,
        eps_tilde,
        interval_separated,
        stewart_condition_met: stewart.condition_met,
        stewart_bound: stewart.bound,
        naive_condition_met: naive.condition_met,
        naive_bound: naive.bound,
        new_bounds,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ImprovedSigmaBounds {
    pub lower: f64,
    pub upper: f64,
    /// 2 eps^2 / (delta_under + sqrt(delta_under^2 + 4 eps^2)).
    pub correction: f64,
    /// max_i |sigma_i(G1_check) - sigma_i(G1 + E11)| over i <= r.
    pub per_index_max_dev: f64,
}

/// Under interval separation with c = 1, encloses sigma_min(G1_check) in
///
///   [sigma_min(G1) - |E11|_2, sigma_min(G1) + |E11|_2 + correction]
///
/// and verifies that the top r singular values of G + E are exactly those of
/// G1_check, with the per-index refinement |sigma_i(G1_check) -
/// sigma_i(G1 + E11)| <= correction.
pub fn improved_sigma_bounds(
    ctx: &BlockContext,
    eb: &PerturbationBlocks,
    cd: &CorrectedDecomposition,
    rep: &GapReport,
) -> Result<ImprovedSigmaBounds> {
    let sv1 = svd(&ctx.g1)?.sigma;
    let sv2 = svd(&ctx.g2)?.sigma;
    if sv1.min() <= sv2.max() {
        return Err(PerturbError::NotSeparated { sigma_min_g1: sv1.min(), sigma_max_g2: sv2.max() });
    }
    if rep.c != 1.0 || !rep.condition_met {
        return Err(PerturbError::ConditionNotMet { delta_under: rep.delta_under, kappa2: rep.kappa2 });
    }

    let e11_2 = spectral_norm(&eb.e11)?;
    let eps = rep.epsilon;
    let du = rep.delta_under;
    let correction = 2.0 * eps * eps / (du + (du * du + 4.0 * eps * eps).sqrt());
    let lower = sv1.min() - e11_2;
    let upper = sv1.min() + e11_2 + correction;

    let perturbed_core = Matrix::block_2x2(
        &(&ctx.g1 + &eb.e11),
        &eb.e12,
        &eb.e21,
        &(&ctx.g2 + &eb.e22),
    );
    let sv_full = svd(&perturbed_core)?.sigma;
    let sv1c = svd(&cd.g1_check)?.sigma;
    let slack = 1e-9 * (1.0 + sv_full.max());

    let measured = sv1c.min();
    if measured < lower - slack || measured > upper + slack {
        return Err(PerturbError::Diagnostic(format!(
            "sigma_min(G1_check) = {measured:.12e} outside [{lower:.12e}, {upper:.12e}]"
        )));
    }
    if !(cd.sigma_min_g1 > cd.sigma_max_g2) {
        return Err(PerturbError::Diagnostic(format!(
            "expected sigma_min(G1_check) > sigma_max(G2_check), got {:.12e} <= {:.12e}",
            cd.sigma_min_g1, cd.sigma_max_g2
        )));
    }
    for i in 0..ctx.r {
        if (sv_full.values()[i] - sv1c.values()[i]).abs() > slack {
            return Err(PerturbError::Diagnostic(format!(
                "top-{} singular value of G+E is {:.12e}, G1_check gives {:.12e}",
                i + 1,
                sv_full.values()[i],
                sv1c.values()[i]
            )));
        }
    }

    let sv_a11 = svd(&(&ctx.g1 + &eb.e11))?.sigma;
    let mut per_index_max_dev = 0.0_f64;
    for i in 0..ctx.r {
        let dev = (sv1c.values()[i] - sv_a11.values()[i]).abs();
        per_index_max_dev = per_index_max_dev.max(dev);
        if dev > correction + 1e-10 * (1.0 + sv_full.max()) {
            return Err(PerturbError::Diagnostic(format!(
                "per-index refinement violated at i = {}: |{:.12e} - {:.12e}| > {correction:.12e}",
                i + 1,
                sv1c.values()[i],
                sv_a11.values()[i]
            )));
        }
    }

    Ok(ImprovedSigmaBounds { lower, upper, correction, per_index_max_dev })
}
