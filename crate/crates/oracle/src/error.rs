use core_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("infeasible gap request: {0}")]
    InfeasibleGap(String),

    #[error("numerically singular system: {0}")]
    Singular(String),

    #[error("oracle abstains: subspace pairing matrix has condition number {cond:.3e}")]
    IllConditioned { cond: f64 },

    #[error("bad instance spec: {0}")]
    BadSpec(String),
}
