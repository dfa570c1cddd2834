//! End-to-end command implementations producing [`Report`]s.

use std::path::{Path, PathBuf};
use std::time::Instant;

use core_linalg::{pair_norm, svd, ui_norm, Matrix, NormKind, PairingNorm};
use perturb::{
    basis_distance_closed_form, build_corrected, corollary_suite, gap_quantities,
    improved_sigma_bounds, project_perturbation, rotation_bound, solve_rotations,
    solve_rotations_forced, split_context, SeparationMode,
};
use sintheta::{canonical_angles, residuals, sin_theta_certificate, SinThetaInput, SubspacePair};

use crate::error::CliError;
use crate::matfile::parse_matrix_file;
use crate::report::{finite, fnv1a_hex, BoundEntry, CorrectedJson, GapReportJson, Report, RotationJson, SinThetaJson};

#[derive(Debug, Clone)]
pub struct BoundArgs {
    pub g: PathBuf,
    pub e: PathBuf,
    pub r: usize,
    pub u: Option<PathBuf>,
    pub v: Option<PathBuf>,
    pub norm: NormKind,
    pub max_pairing: bool,
    pub force: bool,
}

fn file_digest(path: &Path) -> Result<serde_json::Value, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(serde_json::json!({
        "path": path.display().to_string(),
        "fnv1a": fnv1a_hex(&bytes),
    }))
}

fn pairing_of(args: &BoundArgs) -> PairingNorm {
    if args.max_pairing {
        PairingNorm::MaxOf(args.norm)
    } else {
        PairingNorm::BlockDiag(args.norm)
    }
}

pub fn run_bound(args: &BoundArgs) -> Result<Report, CliError> {
    if args.r == 0 {
        return Err(CliError::Usage("--r must be at least 1".into()));
    }
    let inputs = serde_json::json!({
        "g": file_digest(&args.g)?,
        "e": file_digest(&args.e)?,
        "u": args.u.as_deref().map(file_digest).transpose()?,
        "v": args.v.as_deref().map(file_digest).transpose()?,
        "r": args.r,
        "norm": args.norm.name(),
        "pairing": pairing_of(args).name(),
        "force": args.force,
    });
    let mut report = Report::new("bound", inputs);

    let started = Instant::now();
    let g = parse_matrix_file(&args.g)?;
    let e = parse_matrix_file(&args.e)?;
    let (u, v) = match (&args.u, &args.v) {
        (Some(pu), Some(pv)) => (parse_matrix_file(pu)?, parse_matrix_file(pv)?),
        (None, None) => {
            let f = svd(&g)?;
            (f.u, f.v)
        }
        _ => return Err(CliError::Usage("--u and --v must be given together".into())),
    };
    record_ms(&mut report, "parse", started);

    let started = Instant::now();
    let pairing = pairing_of(args);
    let ctx = split_context(&g, &u, &v, args.r)?;
    let eb = project_perturbation(&ctx, &e)?;
    let rep = gap_quantities(&ctx, &eb, pairing)?;
    report.gap_report = Some(GapReportJson {
        delta: rep.delta,
        delta_under: rep.delta_under,
        epsilon: rep.epsilon,
        g_norm: rep.g_norm,
        kappa2: finite(rep.kappa2),
        c: rep.c,
        separation: rep.separation.name().to_string(),
        pairing: rep.pairing.name().to_string(),
        condition_met: rep.condition_met,
    });
    record_ms(&mut report, "gap", started);

    let started = Instant::now();
    let rot = if rep.condition_met {
        Some(solve_rotations(&ctx, &eb, &rep)?)
    } else if args.force {
        Some(solve_rotations_forced(&ctx, &eb, &rep)?)
    } else {
        None
    };
    if let Some(rot) = &rot {
        report.rotation = Some(RotationJson {
            gamma_norm_fro: rot.gamma.frobenius(),
            omega_norm_fro: rot.omega.frobenius(),
            pair_norm: pair_norm(&rot.gamma, &rot.omega, pairing)?,
            iterations: rot.iterations,
            final_step_norm: rot.final_step_norm,
            residual_1: rot.residual_1,
            residual_2: rot.residual_2,
        });
    }
    record_ms(&mut report, "rotations", started);

    let started = Instant::now();
    let cd = match &rot {
        Some(rot) => Some(build_corrected(&ctx, &eb, rot, &rep)?),
        None => None,
    };
    if let Some(cd) = &cd {
        report.corrected = Some(CorrectedJson {
            offdiag_residual: cd.offdiag_residual,
            sigma_min_g1: cd.sigma_min_g1,
            sigma_max_g2: cd.sigma_max_g2,
            sigma_min_g1_lower: cd.sigma_min_g1_lower,
            sigma_min_g1_upper: cd.sigma_min_g1_upper,
            sigma_max_g2_upper: cd.sigma_max_g2_upper,
            u1_dist: cd.u1_dist,
            v1_dist: cd.v1_dist,
        });
    }
    record_ms(&mut report, "corrected", started);

    let started = Instant::now();
    let comparison = corollary_suite(&ctx, &eb)?;
    let mut bounds = Vec::new();
    let pair_f = rot
        .as_ref()
        .map(|r| r.gamma.frobenius().hypot(r.omega.frobenius()));
    let max_f = rot
        .as_ref()
        .map(|r| r.gamma.frobenius().max(r.omega.frobenius()));
    let max_sp = match &rot {
        Some(r) => Some(
            ui_norm(&r.gamma, NormKind::Spectral)?.max(ui_norm(&r.omega, NormKind::Spectral)?),
        ),
        None => None,
    };
    push_upper(&mut bounds, "stewart", comparison.stewart_condition_met, comparison.stewart_bound, pair_f);
    push_upper(&mut bounds, "naive-spectral", comparison.naive_condition_met, comparison.naive_bound, pair_f);
    for (id, cor, measured) in [
        ("cor-f-i", &comparison.new_bounds["cor-f-i"], pair_f),
        ("cor-f-ii", &comparison.new_bounds["cor-f-ii"], max_f),
        ("cor-sp-i", &comparison.new_bounds["cor-sp-i"], max_sp),
        ("cor-sp-ii", &comparison.new_bounds["cor-sp-ii"], max_sp),
    ] {
        push_upper(&mut bounds, id, cor.condition_met, cor.bound, measured);
    }

    if let (Some(rot), Some(_)) = (&rot, &cd) {
        if rep.condition_met {
            let bound = rotation_bound(&rep)?;
            let measured = pair_norm(&rot.gamma, &rot.omega, pairing)?;
            push_upper(&mut bounds, "rotation-pair-norm", true, Some(bound), Some(measured));
        }
    }
    if let Some(cd) = &cd {
        let scale = {
            let core = Matrix::block_2x2(&(&ctx.g1 + &eb.e11), &eb.e12, &eb.e21, &(&ctx.g2 + &eb.e22));
            core.frobenius()
        };
        push_upper(
            &mut bounds,
            "offdiag-residual",
            true,
            Some(core_linalg::tol::TOL_SOLVE * scale),
            Some(cd.offdiag_residual),
        );
        // Basis distance certificates in all three norms plus the exact
        // spectral closed form.
        let rot = rot.as_ref().expect("cd implies rot");
        let diff_u = &cd.u_check.block(0, ctx.m(), 0, ctx.r) - &ctx.u1();
        let diff_v = &cd.v_check.block(0, ctx.n(), 0, ctx.r) - &ctx.v1();
        for kind in NormKind::ALL {
            push_upper(
                &mut bounds,
                &format!("u1-dist-{}", kind.name()),
                true,
                Some(ui_norm(&rot.gamma, kind)?),
                Some(ui_norm(&diff_u, kind)?),
            );
            push_upper(
                &mut bounds,
                &format!("v1-dist-{}", kind.name()),
                true,
                Some(ui_norm(&rot.omega, kind)?),
                Some(ui_norm(&diff_v, kind)?),
            );
        }
        let gamma_sp = ui_norm(&rot.gamma, NormKind::Spectral)?;
        let omega_sp = ui_norm(&rot.omega, NormKind::Spectral)?;
        push_equality(&mut bounds, "u1-dist-closed-form", basis_distance_closed_form(gamma_sp), cd.u1_dist);
        push_equality(&mut bounds, "v1-dist-closed-form", basis_distance_closed_form(omega_sp), cd.v1_dist);

        if let Some(lb) = cd.sigma_min_g1_lower {
            bounds.push(BoundEntry {
                id: "sigma-min-g1-lower".into(),
                condition_met: true,
                bound_value: Some(lb),
                measured_value: Some(cd.sigma_min_g1),
                satisfied: cd.sigma_min_g1 >= lb - 1e-12 * (1.0 + lb.abs()),
            });
        }
        push_upper(&mut bounds, "sigma-max-g2-upper", cd.sigma_max_g2_upper.is_some(), cd.sigma_max_g2_upper, Some(cd.sigma_max_g2));

        if rep.separation == SeparationMode::IntervalSeparated && rep.c == 1.0 && rep.condition_met {
            let ib = improved_sigma_bounds(&ctx, &eb, cd, &rep)?;
            bounds.push(BoundEntry {
                id: "improved-sigma-min-lower".into(),
                condition_met: true,
                bound_value: Some(ib.lower),
                measured_value: Some(cd.sigma_min_g1),
                satisfied: cd.sigma_min_g1 >= ib.lower - 1e-12 * (1.0 + ib.lower.abs()),
            });
            push_upper(&mut bounds, "improved-sigma-min-upper", true, Some(ib.upper), Some(cd.sigma_min_g1));
            push_upper(&mut bounds, "improved-per-index", true, Some(ib.correction), Some(ib.per_index_max_dev));
        }
    }
    report.bounds = bounds;
    record_ms(&mut report, "bounds", started);
    Ok(report)
}

/// Upper-bound style entry: satisfied when measured <= bound (or vacuously
/// when the condition fails or nothing was measured).
fn push_upper(
    bounds: &mut Vec<BoundEntry>,
    id: &str,
    condition_met: bool,
    bound_value: Option<f64>,
    measured_value: Option<f64>,
) {
    let satisfied = match (condition_met, bound_value, measured_value) {
        (true, Some(b), Some(m)) => m <= b * (1.0 + 1e-10) + 1e-300,
        _ => true,
    };
    bounds.push(BoundEntry {
        id: id.to_string(),
        condition_met,
        bound_value,
        measured_value,
        satisfied,
    });
}

fn push_equality(bounds: &mut Vec<BoundEntry>, id: &str, expected: f64, measured: f64) {
    bounds.push(BoundEntry {
        id: id.to_string(),
        condition_met: true,
        bound_value: Some(expected),
        measured_value: Some(measured),
        satisfied: (measured - expected).abs() <= 1e-12 * (1.0 + expected.abs()),
    });
}

fn record_ms(report: &mut Report, phase: &str, started: Instant) {
    report.timings.insert(phase.to_string(), started.elapsed().as_secs_f64() * 1e3);
}

#[derive(Debug, Clone)]
pub struct SinThetaArgs {
    pub g: PathBuf,
    pub u1t: PathBuf,
    pub v1t: PathBuf,
    pub g1t: PathBuf,
    pub norm: NormKind,
}

pub fn run_sintheta(args: &SinThetaArgs) -> Result<Report, CliError> {
    let inputs = serde_json::json!({
        "g": file_digest(&args.g)?,
        "u1t": file_digest(&args.u1t)?,
        "v1t": file_digest(&args.v1t)?,
        "g1t": file_digest(&args.g1t)?,
        "norm": args.norm.name(),
    });
    let mut report = Report::new("sintheta", inputs);

    let started = Instant::now();
    let g = parse_matrix_file(&args.g)?;
    let u1t = parse_matrix_file(&args.u1t)?;
    let v1t = parse_matrix_file(&args.v1t)?;
    let g1t = parse_matrix_file(&args.g1t)?;
    record_ms(&mut report, "parse", started);

    let started = Instant::now();
    let (m, n) = g.dims();
    let r = g1t.rows();
    let f = svd(&g)?;
    let inp = SinThetaInput::from_g(g.clone(), u1t, v1t, g1t)?;
    let cert = sin_theta_certificate(&inp, args.norm)?;
    let angles_u = canonical_angles(&SubspacePair::new(f.u.block(0, m, 0, r), inp.u1_t.clone())?)?;
    let angles_v = canonical_angles(&SubspacePair::new(f.v.block(0, n, 0, r), inp.v1_t.clone())?)?;
    let (r_mat, s_mat) = residuals(&inp);
    report.sintheta = Some(SinThetaJson {
        norm: args.norm.name().to_string(),
        delta: cert.delta,
        c: cert.c,
        measured: cert.measured,
        bound_value: cert.bound_value,
        satisfied: cert.satisfied,
        angles_u,
        angles_v,
        sines_u: cert.sines_u.clone(),
        sines_v: cert.sines_v.clone(),
        residual_r_fro: r_mat.frobenius(),
        residual_s_fro: s_mat.frobenius(),
    });
    report.bounds = vec![BoundEntry {
        id: format!("sin-theta-{}", args.norm.name()),
        condition_met: true,
        bound_value: Some(cert.bound_value),
        measured_value: Some(cert.measured),
        satisfied: cert.satisfied,
    }];
    record_ms(&mut report, "certificate", started);
    Ok(report)
}
