//! Unitarily invariant norms and the two endowed norms on matrix pairs.

use crate::error::Result;
use crate::matrix::Matrix;
use crate::svd::svd;

/// The three unitarily invariant norms carried by the library. Nuclear is here
/// so that norm-generic inequalities get exercised on a norm that is neither
/// of the two workhorses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    Spectral,
    Frobenius,
    Nuclear,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::Spectral, NormKind::Frobenius, NormKind::Nuclear];

    pub fn name(&self) -> &'static str {
        match self {
            NormKind::Spectral => "spectral",
            NormKind::Frobenius => "frobenius",
            NormKind::Nuclear => "nuclear",
        }
    }

    /// Evaluates the norm on a nonincreasing singular value list.
    pub fn of_singular_values(&self, sigma: &[f64]) -> f64 {
        match self {
            NormKind::Spectral => sigma.first().copied().unwrap_or(0.0),
            NormKind::Frobenius => sigma.iter().map(|s| s * s).sum::<f64>().sqrt(),
            NormKind::Nuclear => sigma.iter().sum(),
        }
    }
}

/// Norm on pairs (X, Y): either the UI norm of blkdiag(X, Y) or the max of
/// the two UI norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairingNorm {
    BlockDiag(NormKind),
    MaxOf(NormKind),
}

impl PairingNorm {
    pub const ALL: [PairingNorm; 6] = [
        PairingNorm::BlockDiag(NormKind::Spectral),
        PairingNorm::BlockDiag(NormKind::Frobenius),
        PairingNorm::BlockDiag(NormKind::Nuclear),
        PairingNorm::MaxOf(NormKind::Spectral),
        PairingNorm::MaxOf(NormKind::Frobenius),
        PairingNorm::MaxOf(NormKind::Nuclear),
    ];

    pub fn kind(&self) -> NormKind {
        match self {
            PairingNorm::BlockDiag(k) | PairingNorm::MaxOf(k) => *k,
        }
    }

    pub fn name(&self) -> String {
        match self {
            PairingNorm::BlockDiag(k) => format!("blockdiag-{}", k.name()),
            PairingNorm::MaxOf(k) => format!("max-{}", k.name()),
        }
    }
}

/// Unitarily invariant norm of a matrix. The Frobenius norm is computed
/// entrywise; the spectral and nuclear norms go through the singular values.
pub fn ui_norm(a: &Matrix, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::Frobenius => Ok(a.frobenius()),
        _ => Ok(kind.of_singular_values(svd(a)?.sigma.values())),
    }
}

/// Spectral norm shorthand.
pub fn spectral_norm(a: &Matrix) -> Result<f64> {
    ui_norm(a, NormKind::Spectral)
}

/// Endowed norm of the pair (g, w). The blkdiag variant never forms the block
/// matrix: its singular values are the multiset union of the two spectra.
pub fn pair_norm(g: &Matrix, w: &Matrix, pairing: PairingNorm) -> Result<f64> {
    match pairing {
        PairingNorm::BlockDiag(NormKind::Frobenius) => {
            Ok(g.frobenius().hypot(w.frobenius()))
        }
        PairingNorm::BlockDiag(kind) => {
            let mut sigma = svd(g)?.sigma.values().to_vec();
            sigma.extend_from_slice(svd(w)?.sigma.values());
            sigma.sort_by(|x, y| y.partial_cmp(x).unwrap());
            Ok(kind.of_singular_values(&sigma))
        }
        PairingNorm::MaxOf(kind) => Ok(ui_norm(g, kind)?.max(ui_norm(w, kind)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_345() {
        let a = Matrix::diag(&[3.0, 4.0]);
        assert_eq!(ui_norm(&a, NormKind::Frobenius).unwrap(), 5.0);
    }

    #[test]
    fn spectral_picks_max() {
        let a = Matrix::diag(&[3.0, 4.0]);
        assert!((ui_norm(&a, NormKind::Spectral).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_norms_coincide() {
        // x y^H with unit x, y has all three norms equal to 1.
        let x = Matrix::from_real(3, 1, &[0.6, 0.8, 0.0]).unwrap();
        let y = Matrix::from_real(2, 1, &[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap();
        let a = &x * &y.adjoint();
        for kind in NormKind::ALL {
            assert!((ui_norm(&a, kind).unwrap() - 1.0).abs() < 1e-14, "{kind:?}");
        }
    }

    #[test]
    fn pair_norm_small_examples() {
        let g = Matrix::diag(&[2.0]);
        let w = Matrix::diag(&[3.0]);
        let bd = pair_norm(&g, &w, PairingNorm::BlockDiag(NormKind::Frobenius)).unwrap();
        assert!((bd - 13f64.sqrt()).abs() < 1e-14);
        let mx = pair_norm(&g, &w, PairingNorm::MaxOf(NormKind::Spectral)).unwrap();
        assert_eq!(mx, 3.0);
    }
}
