//! Gap quantities and the smallness condition:
//!
//!   delta       = min |mu - nu| over sv(G1) x sv_ext(G2),
//!   delta_under = delta - |E11|_2 - |E22|_2,
//!   epsilon     = max(|E12|_2, |E21|_2),
//!   kappa2      = c^2 epsilon |(E21, E12^H)| / delta_under^2 < 1/4.
//!
//! The constant c depends on the chosen pair norm and on whether the spectra
//! are separated by an interval or merely disjoint.

use std::f64::consts::PI;

use core_linalg::{pair_norm, spectral_norm, svd, NormKind, PairingNorm};

use crate::context::{BlockContext, PerturbationBlocks};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationMode {
    /// sigma_min(G1) > sigma_max(G2).
    IntervalSeparated,
    /// Spectra disjoint but interleaved.
    DisjointOnly,
}

impl SeparationMode {
    pub fn name(&self) -> &'static str {
        match self {
            SeparationMode::IntervalSeparated => "interval-separated",
            SeparationMode::DisjointOnly => "disjoint-only",
        }
    }
}

/// The operator lower-bound constant: with the blkdiag pair norm, 1 under
/// interval separation or for the Frobenius norm and pi/2 otherwise; with the
/// max pair norm, 1 under interval separation and pi otherwise.
pub fn constant_c(separation: SeparationMode, pairing: PairingNorm) -> f64 {
    let separated = separation == SeparationMode::IntervalSeparated;
    match pairing {
        PairingNorm::BlockDiag(kind) => {
            if separated || kind == NormKind::Frobenius {
                1.0
            } else {
                PI / 2.0
            }
        }
        PairingNorm::MaxOf(_) => {
            if separated {
                1.0
            } else {
                PI
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct GapReport {
    pub delta: f64,
    pub delta_under: f64,
    pub epsilon: f64,
    /// |(E21, E12^H)| in the chosen pair norm.
    pub g_norm: f64,
    pub kappa2: f64,
    pub c: f64,
    pub separation: SeparationMode,
    pub pairing: PairingNorm,
    pub condition_met: bool,
}

/// Evaluates the gap quantities for a context and projected perturbation.
/// `condition_met = false` is a valid outcome, not an error.
pub fn gap_quantities(
    ctx: &BlockContext,
    eb: &PerturbationBlocks,
    pairing: PairingNorm,
) -> Result<GapReport> {
    let sv1 = svd(&ctx.g1)?.sigma;
    let sv2 = svd(&ctx.g2)?.sigma;
    let delta = sv1.min_gap_to_ext(&sv2);
    let delta_under = delta - spectral_norm(&eb.e11)? - spectral_norm(&eb.e22)?;
    let epsilon = spectral_norm(&eb.e12)?.max(spectral_norm(&eb.e21)?);
    let separation = if sv1.min() > sv2.max() {
        SeparationMode::IntervalSeparated
    } else {
        SeparationMode::DisjointOnly
    };
    let c = constant_c(separation, pairing);
    let g_norm = pair_norm(&eb.e21, &eb.e12.adjoint(), pairing)?;
    let kappa2 = if delta_under > 0.0 {
        c * c * epsilon * g_norm / (delta_under * delta_under)
    } else {
        f64::INFINITY
    };
    let condition_met = delta_under > 0.0 && kappa2 < 0.25;
    Ok(GapReport { delta, delta_under, epsilon, g_norm, kappa2, c, separation, pairing, condition_met })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::split_context;
    use core_linalg::Matrix;

    #[test]
    fn constant_table() {
        use NormKind::*;
        use PairingNorm::*;
        use SeparationMode::*;
        assert_eq!(constant_c(IntervalSeparated, BlockDiag(Spectral)), 1.0);
        assert_eq!(constant_c(DisjointOnly, BlockDiag(Nuclear)), PI / 2.0);
        assert_eq!(constant_c(DisjointOnly, BlockDiag(Frobenius)), 1.0);
        assert_eq!(constant_c(DisjointOnly, MaxOf(Frobenius)), PI);
        assert_eq!(constant_c(IntervalSeparated, MaxOf(Nuclear)), 1.0);
    }

    #[test]
    fn explicit_min_gap() {
        // G1 = diag(3, 2), G2 a 2x1 block with sigma = 0.5: sv_ext(G2) = {0.5, 0},
        // so delta = min(2.5, 3, 1.5, 2) = 1.5.
        let g1 = Matrix::diag(&[3.0, 2.0]);
        let g2 = Matrix::from_real(2, 1, &[0.5, 0.0]).unwrap();
        let g = Matrix::block_diag(&g1, &g2);
        let ctx = split_context(&g, &Matrix::identity(4), &Matrix::identity(3), 2).unwrap();
        let eb = crate::context::project_perturbation(&ctx, &Matrix::zeros(4, 3)).unwrap();
        let rep = gap_quantities(&ctx, &eb, PairingNorm::BlockDiag(NormKind::Frobenius)).unwrap();
        assert!((rep.delta - 1.5).abs() < 1e-14);
        assert_eq!(rep.separation, SeparationMode::IntervalSeparated);
    }

    #[test]
    fn zero_perturbation_condition() {
        let g = Matrix::diag(&[3.0, 1.0]);
        let id = Matrix::identity(2);
        let ctx = split_context(&g, &id, &id, 1).unwrap();
        let eb = crate::context::project_perturbation(&ctx, &Matrix::zeros(2, 2)).unwrap();
        let rep = gap_quantities(&ctx, &eb, PairingNorm::MaxOf(NormKind::Spectral)).unwrap();
        assert_eq!(rep.delta_under, rep.delta);
        assert_eq!(rep.epsilon, 0.0);
        assert_eq!(rep.kappa2, 0.0);
        assert!(rep.condition_met);
    }
}
