//! Seeded property suites behind `svcert verify`. Every property runs a
//! fixed number of trials, counts pass/fail, and tracks the worst observed
//! slack (allowance minus measured; negative means a violation). Trials are
//! generated and merged in seed order, so reports are deterministic.

use core_linalg::{pair_norm, svd, ui_norm, Matrix, NormKind, PairingNorm};
use oracle::{
    direct_rotation_oracle, draw_disjoint_eigenvalues, gen_coupled, gen_instance, random_hermitian,
    random_matrix, rng_from_seed, vectorized_coupled_solve, CoupledSpec, GapProfile,
    GeneratedInstance, InstanceSpec,
};
use perturb::{
    basis_distance_closed_form, build_corrected, corollary_suite, gap_quantities,
    improved_sigma_bounds, phi_map, project_perturbation, rotation_bound, solve_rotations,
    split_context, t_map, BlockContext, PerturbationBlocks, SeparationMode,
};
use sintheta::{canonical_angle_sines, canonical_angles, sin_theta_certificate, SinThetaInput, SubspacePair};
use sylvester::{coupled_bounds, equality_witness, herm_bounds, pad_to_square, solve_coupled, solve_herm_sylvester, CoupledSylvesterProblem, HermSylvesterProblem};

use crate::error::CliError;
use crate::report::PropertyResult;

#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
}

struct Tracker {
    name: &'static str,
    pass: usize,
    fail: usize,
    worst: f64,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self { name, pass: 0, fail: 0, worst: f64::INFINITY }
    }

    /// One trial with its margin; several margins can be folded with `min`.
    fn record(&mut self, slack: f64) {
        if slack >= 0.0 && slack.is_finite() {
            self.pass += 1;
        } else {
            self.fail += 1;
        }
        self.worst = self.worst.min(slack);
    }

    fn error(&mut self) {
        self.fail += 1;
        self.worst = self.worst.min(-1.0);
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name.to_string(),
            pass: self.pass,
            fail: self.fail,
            worst_slack: if self.worst.is_finite() { self.worst } else { 0.0 },
        }
    }
}

fn trial_seed(base: u64, trial: usize) -> u64 {
    base.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(trial as u64)
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<PropertyResult>, CliError> {
    match name {
        "sylvester" => Ok(sylvester_suite(params)),
        "perturb" => Ok(perturb_suite(params)),
        "sintheta" => Ok(sintheta_suite(params)),
        "all" => {
            let mut all = sylvester_suite(params);
            all.extend(perturb_suite(params));
            all.extend(sintheta_suite(params));
            Ok(all)
        }
        other => Err(CliError::Usage(format!("unknown suite {other:?}"))),
    }
}

fn coupled_instance(params: &SuiteParams, seed: u64) -> Result<(CoupledSylvesterProblem, f64), CliError> {
    let cap = params.max_dim.clamp(2, 6);
    let r = 1 + (seed % cap as u64) as usize;
    let s = 1 + ((seed / 7) % cap as u64) as usize;
    let t = 1 + ((seed / 49) % cap as u64) as usize;
    let profile = if seed % 2 == 0 {
        GapProfile::IntervalSeparated { width: 0.5 }
    } else {
        GapProfile::Interleaved { min_gap: 0.1 }
    };
    let inst = gen_coupled(&CoupledSpec { r, s, t, profile, seed })?;
    let delta = inst.delta;
    Ok((CoupledSylvesterProblem::new(inst.a, inst.b, inst.s_rhs, inst.t_rhs)?, delta))
}

fn sylvester_suite(params: &SuiteParams) -> Vec<PropertyResult> {
    let mut oracle_eq = Tracker::new("coupled-oracle-agreement");
    let mut pad = Tracker::new("pad-roundtrip");
    let mut certs = Tracker::new("bound-certificates");
    let mut witness = Tracker::new("witness-ratio");
    let mut herm = Tracker::new("herm-dk-bdm-bounds");

    for trial in 0..params.trials {
        let seed = trial_seed(params.seed, trial);

        match coupled_instance(params, seed) {
            Ok((p, _)) => {
                match (solve_coupled(&p), vectorized_coupled_solve(&p.a, &p.b, &p.s_rhs, &p.t_rhs)) {
                    (Ok(sol), Ok(orc)) => {
                        let num = (&sol.x - &orc.x).frobenius().hypot((&sol.y - &orc.y).frobenius());
                        let den = orc.x.frobenius().hypot(orc.y.frobenius()).max(1e-300);
                        oracle_eq.record(1e-9 - num / den);

                        let mut worst = f64::INFINITY;
                        match coupled_bounds(&p, &sol) {
                            Ok(list) => {
                                for c in list {
                                    worst = worst.min(c.bound_value * (1.0 + 1e-10) - c.measured);
                                }
                                certs.record(worst);
                            }
                            Err(_) => certs.error(),
                        }
                    }
                    _ => {
                        oracle_eq.error();
                        certs.error();
                    }
                }

                let padded = pad_to_square(&p);
                match (solve_coupled(&p), solve_coupled(&padded)) {
                    (Ok(direct), Ok(via_pad)) => {
                        let (s, t) = p.b.dims();
                        let x_t = via_pad.x.block(0, s, 0, p.a.rows());
                        let y_t = via_pad.y.block(0, t, 0, p.a.rows());
                        let err = (&x_t - &direct.x).frobenius() + (&y_t - &direct.y).frobenius();
                        pad.record(1e-10 - err / (1.0 + direct.x.frobenius() + direct.y.frobenius()));
                    }
                    _ => pad.error(),
                }
            }
            Err(_) => {
                oracle_eq.error();
                certs.error();
                pad.error();
            }
        }

        // Witness on a separated instance.
        let wseed = seed ^ 0x5eed;
        let spec = CoupledSpec {
            r: 1 + (wseed % 4) as usize,
            s: 1 + ((wseed / 4) % 4) as usize,
            t: 1 + ((wseed / 16) % 4) as usize,
            profile: GapProfile::IntervalSeparated { width: 0.4 + 0.1 * ((wseed % 3) as f64) },
            seed: wseed,
        };
        match gen_coupled(&spec).map_err(CliError::from).and_then(|inst| {
            let w = equality_witness(&inst.a, &inst.b)?;
            Ok((inst.delta, w))
        }) {
            Ok((delta, w)) => {
                let dev = w.ratios.iter().map(|(_, r)| (r - delta).abs()).fold(0.0, f64::max);
                witness.record(1e-10 - dev);
            }
            Err(_) => witness.error(),
        }

        // Hermitian single-equation bounds.
        let mut rng = rng_from_seed(seed ^ 0xabba);
        let ra = 1 + (seed % 5) as usize;
        let rb = 1 + ((seed / 5) % 5) as usize;
        let herm_result = draw_disjoint_eigenvalues(&mut rng, ra, rb, 0.3)
            .map_err(CliError::from)
            .and_then(|(ea, eb)| {
                let a = random_hermitian(&mut rng, &ea);
                let b = random_hermitian(&mut rng, &eb);
                let s = random_matrix(&mut rng, rb, ra);
                let p = HermSylvesterProblem::new(a, b, s)?;
                let x = solve_herm_sylvester(&p)?;
                Ok(herm_bounds(&p, &x, None)?)
            });
        match herm_result {
            Ok(list) => {
                let mut worst = f64::INFINITY;
                for c in list {
                    worst = worst.min(c.bound_value * (1.0 + 1e-10) - c.measured);
                }
                herm.record(worst);
            }
            Err(_) => herm.error(),
        }
    }

    vec![oracle_eq.finish(), pad.finish(), certs.finish(), witness.finish(), herm.finish()]
}

fn perturb_dims(params: &SuiteParams, seed: u64) -> (usize, usize, usize) {
    let hi = params.max_dim.max(5);
    let span = (hi - 3) as u64;
    let m = 4 + (seed % span.max(1)) as usize;
    let n = 4 + ((seed / 31) % span.max(1)) as usize;
    let r = 1 + (seed % (m.min(n) as u64 - 1).min(5)) as usize;
    (m.min(hi), n.min(hi), r)
}

fn perturb_instance(params: &SuiteParams, seed: u64, rel: f64, force_separated: bool) -> Result<GeneratedInstance, CliError> {
    let (m, n, r) = perturb_dims(params, seed);
    let profile = if force_separated || seed % 2 == 0 {
        GapProfile::IntervalSeparated { width: 0.3 + 0.1 * ((seed % 5) as f64) }
    } else {
        GapProfile::Interleaved { min_gap: 0.15 }
    };
    let base = InstanceSpec { m, n, r, gap_profile: profile, pert_scale: 0.0, seed };
    let clean = gen_instance(&base)?;
    Ok(gen_instance(&InstanceSpec { pert_scale: rel * clean.delta, ..base })?)
}

fn context_of(inst: &GeneratedInstance) -> Result<(BlockContext, PerturbationBlocks), CliError> {
    let ctx = split_context(&inst.g, &inst.u, &inst.v, inst.r)?;
    let eb = project_perturbation(&ctx, &inst.e)?;
    Ok((ctx, eb))
}

fn perturb_suite(params: &SuiteParams) -> Vec<PropertyResult> {
    let mut rot_bound = Tracker::new("rotation-bound");
    let mut offdiag = Tracker::new("offdiag-annihilation");
    let mut multiset = Tracker::new("multiset-spectrum");
    let mut distance = Tracker::new("distance-certificates");
    let mut t_lower = Tracker::new("t-map-lower-bound");
    let mut phi_bounds = Tracker::new("phi-bounds");
    let mut dominance = Tracker::new("stewart-dominance");
    let mut oracle_rot = Tracker::new("oracle-rotation-agreement");
    let mut improved = Tracker::new("improved-sigma-bounds");

    for trial in 0..params.trials {
        let seed = trial_seed(params.seed.wrapping_add(1), trial);

        // Main theorem pipeline.
        let pipeline = perturb_instance(params, seed, 0.04, false).and_then(|inst| {
            let (ctx, eb) = context_of(&inst)?;
            let rep = gap_quantities(&ctx, &eb, PairingNorm::BlockDiag(NormKind::Frobenius))?;
            let rot = solve_rotations(&ctx, &eb, &rep)?;
            let cd = build_corrected(&ctx, &eb, &rot, &rep)?;
            Ok((ctx, eb, rep, rot, cd))
        });
        match pipeline {
            Ok((ctx, eb, rep, rot, cd)) => {
                if rot.iterations > 50 {
                    rot_bound.record(-(rot.iterations as f64));
                } else {
                    let mut worst = f64::INFINITY;
                    for pairing in PairingNorm::ALL {
                        let rep_p = match gap_quantities(&ctx, &eb, pairing) {
                            Ok(r) => r,
                            Err(_) => continue,
                        };
                        if !rep_p.condition_met {
                            continue;
                        }
                        let measured = pair_norm(&rot.gamma, &rot.omega, pairing).unwrap_or(f64::NAN);
                        let bound = rotation_bound(&rep_p).unwrap_or(f64::NAN);
                        worst = worst.min(bound * (1.0 + 1e-9) - measured);
                    }
                    rot_bound.record(worst);
                }

                let core = Matrix::block_2x2(&(&ctx.g1 + &eb.e11), &eb.e12, &eb.e21, &(&ctx.g2 + &eb.e22));
                offdiag.record(1e-9 * core.frobenius() - cd.offdiag_residual);

                let sv_full = svd(&core).map(|f| f.sigma);
                let sv1 = svd(&cd.g1_check).map(|f| f.sigma);
                let sv2 = svd(&cd.g2_check).map(|f| f.sigma);
                match (sv_full, sv1, sv2) {
                    (Ok(full), Ok(s1), Ok(s2)) => {
                        let mut merged: Vec<f64> = s1.values().iter().chain(s2.values()).copied().collect();
                        merged.sort_by(|x, y| y.partial_cmp(x).unwrap());
                        let dev = full
                            .values()
                            .iter()
                            .zip(&merged)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0, f64::max);
                        multiset.record(1e-9 * (1.0 + full.max()) - dev);
                    }
                    _ => multiset.error(),
                }

                let diff_u = &cd.u_check.block(0, ctx.m(), 0, ctx.r) - &ctx.u1();
                let diff_v = &cd.v_check.block(0, ctx.n(), 0, ctx.r) - &ctx.v1();
                let mut worst = f64::INFINITY;
                for kind in NormKind::ALL {
                    let du = ui_norm(&diff_u, kind).unwrap_or(f64::NAN);
                    let dv = ui_norm(&diff_v, kind).unwrap_or(f64::NAN);
                    let gu = ui_norm(&rot.gamma, kind).unwrap_or(f64::NAN);
                    let gv = ui_norm(&rot.omega, kind).unwrap_or(f64::NAN);
                    worst = worst.min(gu * (1.0 + 1e-12) + 1e-14 - du);
                    worst = worst.min(gv * (1.0 + 1e-12) + 1e-14 - dv);
                }
                let gamma_sp = ui_norm(&rot.gamma, NormKind::Spectral).unwrap_or(f64::NAN);
                let omega_sp = ui_norm(&rot.omega, NormKind::Spectral).unwrap_or(f64::NAN);
                let cf_u = basis_distance_closed_form(gamma_sp);
                let cf_v = basis_distance_closed_form(omega_sp);
                worst = worst.min(1e-12 * (1.0 + cf_u) - (cd.u1_dist - cf_u).abs());
                worst = worst.min(1e-12 * (1.0 + cf_v) - (cd.v1_dist - cf_v).abs());
                distance.record(worst);

                // Operator lower bound and quadratic-term bounds on random pairs.
                let mut rng = rng_from_seed(seed ^ 0xf00d);
                let gamma = random_matrix(&mut rng, ctx.m() - ctx.r, ctx.r);
                let omega = random_matrix(&mut rng, ctx.n() - ctx.r, ctx.r);
                let (t1, t2) = t_map(&ctx, &eb, &gamma, &omega);
                let mut worst_t = f64::INFINITY;
                let mut worst_phi = f64::INFINITY;
                for pairing in PairingNorm::ALL {
                    let rep_p = match gap_quantities(&ctx, &eb, pairing) {
                        Ok(r) => r,
                        Err(_) => continue,
                    };
                    if rep_p.delta_under <= 0.0 {
                        continue;
                    }
                    let lhs = pair_norm(&t1, &t2, pairing).unwrap_or(f64::NAN);
                    let arg = pair_norm(&gamma, &omega, pairing).unwrap_or(f64::NAN);
                    worst_t = worst_t.min(lhs - (rep_p.delta_under / rep_p.c * arg - 1e-9));

                    let (p1, p2) = phi_map(&eb, &gamma, &omega);
                    let n_phi = pair_norm(&p1, &p2, pairing).unwrap_or(f64::NAN);
                    worst_phi = worst_phi.min(rep_p.epsilon * arg * arg * (1.0 + 1e-12) + 1e-14 - n_phi);
                    let gamma_b = random_matrix(&mut rng, ctx.m() - ctx.r, ctx.r);
                    let omega_b = random_matrix(&mut rng, ctx.n() - ctx.r, ctx.r);
                    let (q1, q2) = phi_map(&eb, &gamma_b, &omega_b);
                    let n_b = pair_norm(&gamma_b, &omega_b, pairing).unwrap_or(f64::NAN);
                    let ndiff = pair_norm(&(&p1 - &q1), &(&p2 - &q2), pairing).unwrap_or(f64::NAN);
                    let narg = pair_norm(&(&gamma - &gamma_b), &(&omega - &omega_b), pairing).unwrap_or(f64::NAN);
                    let cap = 2.0 * rep_p.epsilon * arg.max(n_b) * narg;
                    worst_phi = worst_phi.min(cap * (1.0 + 1e-12) + 1e-14 - ndiff);
                }
                t_lower.record(worst_t);
                phi_bounds.record(worst_phi);

                match corollary_suite(&ctx, &eb) {
                    Ok(cmp) => {
                        let sum_f = eb.e12.frobenius().hypot(eb.e21.frobenius());
                        let mut worst = cmp.eps_hat * cmp.eps_hat - cmp.epsilon * sum_f + 1e-12;
                        if cmp.stewart_condition_met {
                            let cor = &cmp.new_bounds["cor-f-i"];
                            if !cor.condition_met {
                                worst = worst.min(-1.0);
                            } else {
                                worst = worst.min(
                                    cmp.stewart_bound.unwrap() * (1.0 + 1e-12) - cor.bound.unwrap(),
                                );
                            }
                        }
                        dominance.record(worst);
                    }
                    Err(_) => dominance.error(),
                }

                if rep.separation == SeparationMode::IntervalSeparated && rep.c == 1.0 {
                    match improved_sigma_bounds(&ctx, &eb, &cd, &rep) {
                        Ok(ib) => {
                            let mut worst = cd.sigma_min_g1 - (ib.lower - 1e-10);
                            worst = worst.min(ib.upper + 1e-10 - cd.sigma_min_g1);
                            worst = worst.min(ib.correction + 1e-10 - ib.per_index_max_dev);
                            improved.record(worst);
                        }
                        Err(_) => improved.error(),
                    }
                }
            }
            Err(_) => {
                rot_bound.error();
                offdiag.error();
                multiset.error();
                distance.error();
                t_lower.error();
                phi_bounds.error();
                dominance.error();
            }
        }

        // Oracle agreement on a separated, small-perturbation instance.
        let oracle_run = perturb_instance(params, seed ^ 0x0c01e, 0.005, true).and_then(|inst| {
            let (ctx, eb) = context_of(&inst)?;
            let rep = gap_quantities(&ctx, &eb, PairingNorm::BlockDiag(NormKind::Frobenius))?;
            let rot = solve_rotations(&ctx, &eb, &rep)?;
            let orc = direct_rotation_oracle(&inst.g, &inst.u, &inst.v, inst.r, &inst.e)?;
            Ok((rot, orc))
        });
        match oracle_run {
            Ok((rot, orc)) => {
                let dev = (&rot.gamma - &orc.gamma)
                    .frobenius()
                    .max((&rot.omega - &orc.omega).frobenius());
                oracle_rot.record(1e-8 - dev);
            }
            Err(_) => oracle_rot.error(),
        }
    }

    vec![
        rot_bound.finish(),
        offdiag.finish(),
        multiset.finish(),
        distance.finish(),
        t_lower.finish(),
        phi_bounds.finish(),
        dominance.finish(),
        oracle_rot.finish(),
        improved.finish(),
    ]
}

fn sintheta_suite(params: &SuiteParams) -> Vec<PropertyResult> {
    let mut routes = Tracker::new("angle-route-agreement");
    let mut sine_id = Tracker::new("sine-identity");
    let mut cert_f = Tracker::new("certificate-frobenius");
    let mut cert_sp_nu = Tracker::new("certificate-spectral-nuclear");

    for trial in 0..params.trials {
        let seed = trial_seed(params.seed.wrapping_add(2), trial);

        // Random pair of subspaces: the two angle routes agree through the
        // quadrature identity.
        let mut rng = rng_from_seed(seed);
        let m = 4 + (seed % (params.max_dim.max(5) as u64 - 3)) as usize;
        let r = 1 + (seed % 3).min(m as u64 - 2) as usize;
        let qa = oracle::random_unitary(&mut rng, m);
        let qb = oracle::random_unitary(&mut rng, m);
        let pair = SubspacePair::new(qa.block(0, m, 0, r), qb.block(0, m, 0, r));
        match pair.map_err(CliError::from).and_then(|p| {
            let angles = canonical_angles(&p)?;
            let sines = canonical_angle_sines(&p)?;
            Ok((angles, sines))
        }) {
            Ok((angles, sines)) => {
                let mut worst = f64::INFINITY;
                for (a, s) in angles.iter().zip(&sines) {
                    worst = worst.min(1e-10 - (a.cos().powi(2) + s * s - 1.0).abs());
                }
                routes.record(worst);
            }
            Err(_) => routes.error(),
        }

        // Perturbed instance: sine identity and certificates.
        let run = perturb_instance(params, seed, 0.02, false).and_then(|inst| {
            let g_tilde = &inst.g + &inst.e;
            let (m, n) = inst.g.dims();
            let r = inst.r;
            let f = svd(&inst.g)?;
            let ft = svd(&g_tilde)?;
            let u1t = ft.u.block(0, m, 0, r);
            let v1t = ft.v.block(0, n, 0, r);
            let g1t = &(&u1t.adjoint() * &g_tilde) * &v1t;

            // sin values against sigma(U2^H U1~), with U2 from the SVD of G.
            let u1 = f.u.block(0, m, 0, r);
            let u2 = f.u.block(0, m, r, m);
            let p = SubspacePair::new(u1, u1t.clone())?;
            let angles = canonical_angles(&p)?;
            let sv = svd(&(&u2.adjoint() * &u1t))?.sigma;
            let mut sines_from_angles: Vec<f64> = angles.iter().map(|a| a.sin()).collect();
            sines_from_angles.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let mut dev = 0.0_f64;
            for (i, s) in sv.values().iter().enumerate() {
                let expected = sines_from_angles.get(i).copied().unwrap_or(0.0);
                dev = dev.max((s - expected).abs());
            }

            let inp = SinThetaInput::from_g(inst.g.clone(), u1t, v1t, g1t)?;
            let cf = sin_theta_certificate(&inp, NormKind::Frobenius)?;
            let csp = sin_theta_certificate(&inp, NormKind::Spectral)?;
            let cnu = sin_theta_certificate(&inp, NormKind::Nuclear)?;
            Ok((dev, cf, csp, cnu))
        });
        match run {
            Ok((dev, cf, csp, cnu)) => {
                sine_id.record(1e-10 - dev);
                cert_f.record(cf.bound_value * (1.0 + 1e-10) + 1e-14 - cf.measured);
                let worst = (csp.bound_value * (1.0 + 1e-10) + 1e-14 - csp.measured)
                    .min(cnu.bound_value * (1.0 + 1e-10) + 1e-14 - cnu.measured);
                cert_sp_nu.record(worst);
            }
            Err(_) => {
                sine_id.error();
                cert_f.error();
                cert_sp_nu.error();
            }
        }
    }

    vec![routes.finish(), sine_id.finish(), cert_f.finish(), cert_sp_nu.finish()]
}
