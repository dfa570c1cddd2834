use core_linalg::LinalgError;
use sylvester::SylvesterError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PerturbError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Sylvester(#[from] SylvesterError),

    #[error("off-diagonal contamination {measured:.3e} exceeds threshold {threshold:.3e}")]
    OffDiagonal { measured: f64, threshold: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("smallness condition not met: delta_under = {delta_under:.6e}, kappa2 = {kappa2:.6e} (need delta_under > 0 and kappa2 < 1/4)")]
    ConditionNotMet { delta_under: f64, kappa2: f64 },

    #[error("fixed-point iteration did not converge in {iterations} steps, final step norm {final_step_norm:.3e}")]
    NoConvergence { iterations: usize, final_step_norm: f64 },

    #[error("interval separation required: sigma_min(G1) = {sigma_min_g1:.6e} <= sigma_max(G2) = {sigma_max_g2:.6e}")]
    NotSeparated { sigma_min_g1: f64, sigma_max_g2: f64 },

    #[error("diagnostic failure: {0}")]
    Diagnostic(String),
}

pub type Result<T> = std::result::Result<T, PerturbError>;
