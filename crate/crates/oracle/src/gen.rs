//! Deterministic instance generators for the property and acceptance suites.

use core_linalg::{Matrix, LinalgError};
use rand::Rng;

use crate::error::OracleError;
use crate::rng::{random_matrix, random_unitary, random_with_singular_values, rng_from_seed, SeededRng};

/// Separated profiles pin sigma_min(G1) - sigma_max(G2) to `width` exactly;
/// interleaved profiles mix both spectra over [0, 3] while keeping every
/// cross gap (including the rectangular zero extension) at least `min_gap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapProfile {
    IntervalSeparated { width: f64 },
    Interleaved { min_gap: f64 },
}

/// Base of the separated construction: G2 values live in [0, GAP_ANCHOR] and
/// G1 values in [GAP_ANCHOR + width, GAP_ANCHOR + width + 2].
pub const GAP_ANCHOR: f64 = 1.0;

const MAX_REJECTIONS: usize = 10_000;

#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub gap_profile: GapProfile,
    pub pert_scale: f64,
    pub seed: u64,
}

/// A generated decomposition context plus perturbation, in raw matrix form.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub g: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    pub g1: Matrix,
    pub g2: Matrix,
    pub e: Matrix,
    /// Exhaustive min |mu - nu| over sv(G1) x sv_ext(G2) of the prescribed values.
    pub delta: f64,
    pub g1_svals: Vec<f64>,
    pub g2_svals: Vec<f64>,
}

/// Builds G = U blkdiag(G1, G2) V^H from seeded random unitaries and
/// prescribed singular values, plus a perturbation of Frobenius norm
/// `pert_scale` in a seeded random direction.
pub fn gen_instance(spec: &InstanceSpec) -> Result<GeneratedInstance, OracleError> {
    let InstanceSpec { m, n, r, gap_profile, pert_scale, seed } = *spec;
    if r < 1 || r >= m.min(n) {
        return Err(OracleError::Linalg(LinalgError::SplitOutOfRange { r, max: m.min(n) }));
    }
    if !(pert_scale >= 0.0) || !pert_scale.is_finite() {
        return Err(OracleError::BadSpec(format!("pert_scale must be finite and >= 0, got {pert_scale}")));
    }
    let mut rng = rng_from_seed(seed);
    let k = (m - r).min(n - r);
    let ext_zeros = m.abs_diff(n);
    let (g1_svals, g2_svals) = draw_singular_values(&mut rng, r, k, ext_zeros, gap_profile)?;

    let u = random_unitary(&mut rng, m);
    let v = random_unitary(&mut rng, n);
    let g1 = Matrix::diag(&g1_svals);
    let g2 = Matrix::leading_diag(m - r, n - r, &g2_svals);
    let core = Matrix::block_diag(&g1, &g2);
    let g = &(&u * &core) * &v.adjoint();

    let e = if pert_scale == 0.0 {
        Matrix::zeros(m, n)
    } else {
        let dir = random_matrix(&mut rng, m, n);
        dir.scaled_re(pert_scale / dir.frobenius())
    };

    let delta = cross_gap(&g1_svals, &g2_svals, ext_zeros);
    Ok(GeneratedInstance { m, n, r, g, u, v, g1, g2, e, delta, g1_svals, g2_svals })
}

/// Draws `na` values for the retained block and `nb` for the discarded block
/// under the requested profile. `ext_zeros` zeros join the discarded set when
/// computing gaps.
pub fn draw_singular_values(
    rng: &mut SeededRng,
    na: usize,
    nb: usize,
    ext_zeros: usize,
    profile: GapProfile,
) -> Result<(Vec<f64>, Vec<f64>), OracleError> {
    match profile {
        GapProfile::IntervalSeparated { width } => {
            if !(width > 0.0) || !width.is_finite() {
                return Err(OracleError::InfeasibleGap(format!("separation width must be positive, got {width}")));
            }
            let lo = GAP_ANCHOR + width;
            let mut a: Vec<f64> = (0..na).map(|_| rng.gen_range(lo..lo + 2.0)).collect();
            let mut b: Vec<f64> = (0..nb).map(|_| rng.gen_range(0.0..GAP_ANCHOR)).collect();
            // Pin the facing extremes so the gap is exact by construction.
            a.sort_by(|x, y| y.partial_cmp(x).unwrap());
            b.sort_by(|x, y| y.partial_cmp(x).unwrap());
            *a.last_mut().unwrap() = lo;
            b[0] = GAP_ANCHOR;
            Ok((a, b))
        }
        GapProfile::Interleaved { min_gap } => {
            if !(min_gap > 0.0) || !min_gap.is_finite() {
                return Err(OracleError::InfeasibleGap(format!("min_gap must be positive, got {min_gap}")));
            }
            for _ in 0..MAX_REJECTIONS {
                let mut a: Vec<f64> = (0..na).map(|_| rng.gen_range(0.0..3.0)).collect();
                let mut b: Vec<f64> = (0..nb).map(|_| rng.gen_range(0.0..3.0)).collect();
                a.sort_by(|x, y| y.partial_cmp(x).unwrap());
                b.sort_by(|x, y| y.partial_cmp(x).unwrap());
                if cross_gap(&a, &b, ext_zeros) >= min_gap {
                    return Ok((a, b));
                }
            }
            Err(OracleError::InfeasibleGap(format!(
                "gave up after {MAX_REJECTIONS} draws: min_gap {min_gap} with {na}+{nb} values over [0,3]"
            )))
        }
    }
}

/// Exhaustive min |mu - nu| with `ext_zeros` zeros appended to the b-side.
pub fn cross_gap(a: &[f64], b: &[f64], ext_zeros: usize) -> f64 {
    let mut gap = f64::INFINITY;
    for &mu in a {
        for &nu in b {
            gap = gap.min((mu - nu).abs());
        }
        if ext_zeros > 0 {
            gap = gap.min(mu.abs());
        }
    }
    gap
}

/// Spec of a raw coupled-Sylvester instance XA - BY = S, YA^H - B^H X = T.
#[derive(Debug, Clone)]
pub struct CoupledSpec {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub profile: GapProfile,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct CoupledInstance {
    pub a: Matrix,
    pub b: Matrix,
    pub s_rhs: Matrix,
    pub t_rhs: Matrix,
    /// min |omega - gamma| over sv(A) x sv_ext(B) of the prescribed values.
    pub delta: f64,
}

/// Random coupled problem with controlled singular value gaps.
pub fn gen_coupled(spec: &CoupledSpec) -> Result<CoupledInstance, OracleError> {
    let CoupledSpec { r, s, t, profile, seed } = *spec;
    if r == 0 || s == 0 || t == 0 {
        return Err(OracleError::BadSpec("dimensions must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let ext_zeros = s.abs_diff(t);
    let (a_svals, b_svals) = draw_singular_values(&mut rng, r, s.min(t), ext_zeros, profile)?;
    let a = random_with_singular_values(&mut rng, r, r, &a_svals);
    let b = random_with_singular_values(&mut rng, s, t, &b_svals);
    let s_rhs = random_matrix(&mut rng, s, r);
    let t_rhs = random_matrix(&mut rng, t, r);
    let delta = cross_gap(&a_svals, &b_svals, ext_zeros);
    Ok(CoupledInstance { a, b, s_rhs, t_rhs, delta })
}

/// Eigenvalue lists for a Hermitian Sylvester pair, drawn over [-3, 3] with
/// every cross gap at least `min_gap`.
pub fn draw_disjoint_eigenvalues(
    rng: &mut SeededRng,
    na: usize,
    nb: usize,
    min_gap: f64,
) -> Result<(Vec<f64>, Vec<f64>), OracleError> {
    for _ in 0..MAX_REJECTIONS {
        let a: Vec<f64> = (0..na).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let b: Vec<f64> = (0..nb).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let gap = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x - y).abs()))
            .fold(f64::INFINITY, f64::min);
        if gap >= min_gap {
            return Ok((a, b));
        }
    }
    Err(OracleError::InfeasibleGap(format!("eigenvalue gap {min_gap} infeasible for {na}+{nb} values")))
}
