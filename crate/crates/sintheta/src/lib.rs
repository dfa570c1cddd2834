//! Canonical angles between equidimensional subspaces and sin-theta
//! certificates: with residuals R = G V1~ - U1~ G1~ and S = G^H U1~ - V1~ G1~^H
//! and the gap delta = min |mu - nu| over sv(G1~) x sv_ext(G2),
//!
//!   |blkdiag(sin Theta_U, sin Theta_V)|_UI <= c / delta |blkdiag(R, S)|_UI,
//!
//! where c = 1 under interval separation or for the Frobenius norm and pi/2
//! otherwise.

use core_linalg::{
    orthonormal_complement, svd, tol, LinalgError, Matrix, NormKind,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SinThetaError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("basis is not orthonormal: residual {residual:.3e} exceeds {tol:.3e}")]
    NotOrthonormal { residual: f64, tol: f64 },

    #[error("gap delta = {delta:.6e} must be positive")]
    NonPositiveGap { delta: f64 },

    #[error("cosine and sine routes disagree: {0:.3e}")]
    RouteMismatch(f64),
}

pub type Result<T> = std::result::Result<T, SinThetaError>;

/// Two r-dimensional subspaces of C^m given by orthonormal bases.
#[derive(Debug, Clone)]
pub struct SubspacePair {
    pub basis_a: Matrix,
    pub basis_b: Matrix,
}

impl SubspacePair {
    pub fn new(basis_a: Matrix, basis_b: Matrix) -> Result<Self> {
        if basis_a.dims() != basis_b.dims() {
            return Err(SinThetaError::Shape(format!(
                "bases must have equal shape, got {}x{} and {}x{}",
                basis_a.rows(),
                basis_a.cols(),
                basis_b.rows(),
                basis_b.cols()
            )));
        }
        for basis in [&basis_a, &basis_b] {
            check_orthonormal(basis)?;
        }
        Ok(Self { basis_a, basis_b })
    }
}

fn check_orthonormal(basis: &Matrix) -> Result<()> {
    let t = tol::tol_unitary(basis.rows());
    let residual = basis.unitary_residual();
    if residual > t {
        return Err(SinThetaError::NotOrthonormal { residual, tol: t });
    }
    Ok(())
}

/// Canonical angles theta_i = arccos sigma_i(A^H B), nonincreasing, in
/// [0, pi/2]. The sines are cross-checked against the singular values of
/// (complement of A)^H B.
pub fn canonical_angles(p: &SubspacePair) -> Result<Vec<f64>> {
    let (m, r) = p.basis_a.dims();
    let cosines = svd(&(&p.basis_a.adjoint() * &p.basis_b))?.sigma;
    // Nonincreasing cosines give nondecreasing angles; flip for the contract.
    let mut angles: Vec<f64> = cosines
        .values()
        .iter()
        .map(|&s| s.clamp(0.0, 1.0).acos())
        .rev()
        .collect();
    for a in angles.iter_mut() {
        if *a < 0.0 {
            *a = 0.0;
        }
    }

    if r < m {
        // Cross-check against the sine route. Near theta = 0 the arccos is
        // ill-conditioned (sqrt(eps) absolute error in the angle), so the
        // comparison uses cos^2 + sin^2 = 1, which is well-conditioned at
        // every angle. Both lists are sorted by descending angle.
        let comp = orthonormal_complement(&p.basis_a);
        let sines = svd(&(&comp.adjoint() * &p.basis_b))?.sigma;
        let mut worst = 0.0_f64;
        for (i, &s) in sines.values().iter().enumerate() {
            let c = angles.get(i).map_or(1.0, |a| a.cos());
            worst = worst.max((c * c + s * s - 1.0).abs());
        }
        if worst > 1e-8 {
            return Err(SinThetaError::RouteMismatch(worst));
        }
    }
    Ok(angles)
}

/// Sines of the canonical angles via the complement route, nonincreasing.
pub fn canonical_angle_sines(p: &SubspacePair) -> Result<Vec<f64>> {
    let (m, r) = p.basis_a.dims();
    if r >= m {
        return Ok(vec![0.0; r]);
    }
    let comp = orthonormal_complement(&p.basis_a);
    let mut sines = svd(&(&comp.adjoint() * &p.basis_b))?.sigma.values().to_vec();
    sines.resize(r.max(sines.len()), 0.0);
    sines.truncate(r.max(sines.len()));
    Ok(sines)
}

/// A decomposition of G plus a competing tilde triple (U1~, V1~, G1~); the
/// complement data U2, V2, G2 comes from a fresh SVD of G when not supplied.
#[derive(Debug, Clone)]
pub struct SinThetaInput {
    pub g: Matrix,
    pub u1_t: Matrix,
    pub v1_t: Matrix,
    pub g1_t: Matrix,
    pub u2: Matrix,
    pub v2: Matrix,
    pub g2: Matrix,
}

impl SinThetaInput {
    /// Validates shapes and orthonormality; the caller supplies the
    /// complement split of G explicitly.
    pub fn new(
        g: Matrix,
        u1_t: Matrix,
        v1_t: Matrix,
        g1_t: Matrix,
        u2: Matrix,
        v2: Matrix,
        g2: Matrix,
    ) -> Result<Self> {
        let (m, n) = g.dims();
        let r = g1_t.rows();
        if !g1_t.is_square() {
            return Err(SinThetaError::Shape("G1~ must be square".into()));
        }
        if u1_t.dims() != (m, r) || v1_t.dims() != (n, r) {
            return Err(SinThetaError::Shape(format!(
                "U1~ must be {dim_m}x{r} and V1~ {dim_n}x{r}",
                dim_m = m,
                dim_n = n
            )));
        }
        if u2.dims() != (m, m - r) || v2.dims() != (n, n - r) || g2.dims() != (m - r, n - r) {
            return Err(SinThetaError::Shape("complement split has wrong shape".into()));
        }
        for basis in [&u1_t, &v1_t, &u2, &v2] {
            check_orthonormal(basis)?;
        }
        Ok(Self { g, u1_t, v1_t, g1_t, u2, v2, g2 })
    }

    /// Derives U2, V2, G2 from a fresh SVD of G with the complement split.
    pub fn from_g(g: Matrix, u1_t: Matrix, v1_t: Matrix, g1_t: Matrix) -> Result<Self> {
        let (m, n) = g.dims();
        let r = g1_t.rows();
        if r >= m.min(n) {
            return Err(SinThetaError::Shape(format!(
                "split r = {r} must be below min(m, n) = {}",
                m.min(n)
            )));
        }
        let f = svd(&g)?;
        let u2 = f.u.block(0, m, r, m);
        let v2 = f.v.block(0, n, r, n);
        let g2 = &(&u2.adjoint() * &g) * &v2;
        Self::new(g, u1_t, v1_t, g1_t, u2, v2, g2)
    }

    pub fn r(&self) -> usize {
        self.g1_t.rows()
    }
}

/// R = G V1~ - U1~ G1~ and S = G^H U1~ - V1~ G1~^H.
pub fn residuals(inp: &SinThetaInput) -> (Matrix, Matrix) {
    let r_mat = &(&inp.g * &inp.v1_t) - &(&inp.u1_t * &inp.g1_t);
    let s_mat = &(&inp.g.adjoint() * &inp.u1_t) - &(&inp.v1_t * &inp.g1_t.adjoint());
    (r_mat, s_mat)
}

#[derive(Debug, Clone)]
pub struct SinThetaCertificate {
    pub norm: NormKind,
    pub delta: f64,
    pub c: f64,
    /// |blkdiag(sin Theta_U, sin Theta_V)|_UI.
    pub measured: f64,
    /// c / delta |blkdiag(R, S)|_UI.
    pub bound_value: f64,
    pub satisfied: bool,
    pub sines_u: Vec<f64>,
    pub sines_v: Vec<f64>,
}

/// Evaluates the sin-theta bound in the given norm. The sines are the
/// singular values of U2^H U1~ and V2^H V1~.
pub fn sin_theta_certificate(inp: &SinThetaInput, kind: NormKind) -> Result<SinThetaCertificate> {
    let sv_g1t = svd(&inp.g1_t)?.sigma;
    let sv_g2 = svd(&inp.g2)?.sigma;
    let delta = sv_g1t.min_gap_to_ext(&sv_g2);
    if delta <= 0.0 {
        return Err(SinThetaError::NonPositiveGap { delta });
    }
    let c = if sv_g1t.min() > sv_g2.max() || kind == NormKind::Frobenius {
        1.0
    } else {
        std::f64::consts::FRAC_PI_2
    };

    let sines_u = svd(&(&inp.u2.adjoint() * &inp.u1_t))?.sigma.values().to_vec();
    let sines_v = svd(&(&inp.v2.adjoint() * &inp.v1_t))?.sigma.values().to_vec();
    let mut all_sines: Vec<f64> = sines_u.iter().chain(&sines_v).copied().collect();
    all_sines.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let measured = kind.of_singular_values(&all_sines);

    let (r_mat, s_mat) = residuals(inp);
    let mut rhs_sv: Vec<f64> = svd(&r_mat)?.sigma.values().to_vec();
    rhs_sv.extend_from_slice(svd(&s_mat)?.sigma.values());
    rhs_sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let bound_value = c / delta * kind.of_singular_values(&rhs_sv);

    Ok(SinThetaCertificate {
        norm: kind,
        delta,
        c,
        measured,
        bound_value,
        satisfied: measured <= bound_value * (1.0 + 1e-10) + 1e-14,
        sines_u,
        sines_v,
    })
}
