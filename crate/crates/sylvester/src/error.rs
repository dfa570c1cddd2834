use core_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SylvesterError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("singular problem: nearest coefficient pair ({mu:.6e}, {nu:.6e}) has gap {gap:.3e} below tolerance {tol:.3e}")]
    SingularProblem { mu: f64, nu: f64, gap: f64, tol: f64 },

    #[error("interval separation violated: sigma_min(A) = {sigma_min_a:.6e} <= sigma_max(B) = {sigma_max_b:.6e}")]
    NotSeparated { sigma_min_a: f64, sigma_max_b: f64 },

    #[error("solve residuals ({r1:.3e}, {r2:.3e}) exceed allowance {allowance:.3e}")]
    ResidualTooLarge { r1: f64, r2: f64, allowance: f64 },
}

pub type Result<T> = std::result::Result<T, SylvesterError>;
