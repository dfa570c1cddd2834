//! Acceptance suite: every numbered criterion runs at its stated tolerance
//! and prints one pass/fail line. Run with `--nocapture` to see the lines:
//!
//!     cargo test -p svcert --test acceptance -- --nocapture

use std::path::{Path, PathBuf};

use core_linalg::{interlace_check, pair_norm, svd, ui_norm, Matrix, NormKind, PairingNorm};
use oracle::{
    direct_rotation_oracle, gen_coupled, gen_instance, random_matrix, rng_from_seed,
    vectorized_coupled_solve, CoupledSpec, GapProfile, GeneratedInstance, InstanceSpec,
};
use perturb::{
    basis_distance_closed_form, build_corrected, corollary_suite, gap_quantities,
    improved_sigma_bounds, phi_map, project_perturbation, rotation_bound, solve_rotations,
    split_context, t_map, BlockContext, GapReport, PerturbationBlocks, RotationPair,
    SeparationMode,
};
use sintheta::{sin_theta_certificate, SinThetaInput};
use sylvester::{coupled_bounds, equality_witness, solve_coupled, CoupledSylvesterProblem, Regime};

fn conclude(criterion: usize, description: &str, violations: Vec<String>) {
    if violations.is_empty() {
        println!("criterion {criterion:02} PASS: {description}");
    } else {
        println!(
            "criterion {criterion:02} FAIL: {description} ({} violations)",
            violations.len()
        );
        for v in violations.iter().take(8) {
            println!("    {v}");
        }
        panic!("criterion {criterion} failed with {} violations", violations.len());
    }
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

// ---------------------------------------------------------------- 1-3

fn coupled_family(count: usize, base_seed: u64) -> Vec<(CoupledSylvesterProblem, u64)> {
    (0..count)
        .map(|i| {
            let seed = base_seed + i as u64;
            let r = 1 + (seed % 6) as usize;
            let s = 1 + ((seed / 6) % 6) as usize;
            let t = 1 + ((seed / 36) % 6) as usize;
            let profile = if seed % 2 == 0 {
                GapProfile::IntervalSeparated { width: 0.5 }
            } else {
                GapProfile::Interleaved { min_gap: 0.1 }
            };
            let inst = gen_coupled(&CoupledSpec { r, s, t, profile, seed }).expect("gen_coupled");
            (
                CoupledSylvesterProblem::new(inst.a, inst.b, inst.s_rhs, inst.t_rhs).unwrap(),
                seed,
            )
        })
        .collect()
}

#[test]
fn criterion_01_coupled_solver_oracle_equivalence() {
    let mut violations = Vec::new();
    for (p, seed) in coupled_family(1000, 10_000) {
        match (solve_coupled(&p), vectorized_coupled_solve(&p.a, &p.b, &p.s_rhs, &p.t_rhs)) {
            (Ok(sol), Ok(orc)) => {
                let num = (&sol.x - &orc.x).frobenius().hypot((&sol.y - &orc.y).frobenius());
                let den = orc.x.frobenius().hypot(orc.y.frobenius()).max(1e-300);
                let rel = num / den;
                if rel > 1e-9 {
                    violations.push(format!("seed {seed}: relative error {rel:.3e}"));
                }
            }
            (a, b) => violations.push(format!("seed {seed}: solver {a:?} oracle ok={}", b.is_ok())),
        }
    }
    conclude(1, "solve_coupled matches the vectorized oracle at 1e-9 over 1000 instances", violations);
}

#[test]
fn criterion_02_coupled_bound_suite() {
    let mut violations = Vec::new();
    for (p, seed) in coupled_family(1000, 20_000) {
        let sol = match solve_coupled(&p) {
            Ok(s) => s,
            Err(e) => {
                violations.push(format!("seed {seed}: solve failed: {e}"));
                continue;
            }
        };
        match coupled_bounds(&p, &sol) {
            Ok(certs) => {
                let general = certs.iter().filter(|c| c.regime == Regime::GeneralUI).count();
                if general != 6 {
                    violations.push(format!("seed {seed}: expected 6 general certificates"));
                }
                let sep = svd(&p.a).unwrap().sigma.min() > svd(&p.b).unwrap().sigma.max();
                let interval = certs.iter().filter(|c| c.regime == Regime::IntervalSeparated).count();
                if sep && interval != 6 {
                    violations.push(format!("seed {seed}: separated but {interval} c=1 certificates"));
                }
                for c in certs {
                    if !c.satisfied {
                        violations.push(format!("seed {seed}: {} violated ({:.6e} > {:.6e})", c.id(), c.measured, c.bound_value));
                    }
                }
            }
            Err(e) => violations.push(format!("seed {seed}: bounds failed: {e}")),
        }
    }
    conclude(2, "every emitted coupled bound certificate is satisfied over 1000 instances", violations);
}

#[test]
fn criterion_03_witness_tightness() {
    let mut violations = Vec::new();
    for i in 0..200u64 {
        let seed = 30_000 + i;
        let spec = CoupledSpec {
            r: 1 + (seed % 5) as usize,
            s: 1 + ((seed / 5) % 5) as usize,
            t: 1 + ((seed / 25) % 5) as usize,
            profile: GapProfile::IntervalSeparated { width: 0.3 + 0.1 * ((seed % 4) as f64) },
            seed,
        };
        let inst = gen_coupled(&spec).unwrap();
        let delta = svd(&inst.a).unwrap().sigma.min() - svd(&inst.b).unwrap().sigma.max();
        match equality_witness(&inst.a, &inst.b) {
            Ok(w) => {
                for (pairing, ratio) in &w.ratios {
                    if (ratio - delta).abs() > 1e-10 {
                        violations.push(format!(
                            "seed {seed} {pairing:?}: ratio {ratio:.12e} vs delta {delta:.12e}"
                        ));
                    }
                }
            }
            Err(e) => violations.push(format!("seed {seed}: {e}")),
        }
    }
    conclude(3, "equality witness achieves sigma_min(A) - sigma_max(B) at 1e-10 on 200 instances", violations);
}

// ---------------------------------------------------------------- 4-9

struct Crit4Instance {
    index: usize,
    rel: f64,
    inst: GeneratedInstance,
    ctx: BlockContext,
    eb: PerturbationBlocks,
    rep: GapReport,
}

fn crit4_family() -> Vec<Crit4Instance> {
    (0..500usize)
        .map(|index| {
            let seed = 40_000 + index as u64;
            let m = 4 + ((seed * 7) % 27) as usize;
            let n = 4 + ((seed * 13) % 27) as usize;
            let r = 1 + (seed % (m.min(n) as u64 - 1).min(5)) as usize;
            let profile = if index % 2 == 0 {
                GapProfile::IntervalSeparated { width: 0.3 + 0.1 * ((seed % 5) as f64) }
            } else {
                GapProfile::Interleaved { min_gap: 0.15 }
            };
            let rel = [0.04, 0.02, 0.008][index % 3];
            let base = InstanceSpec { m, n, r, gap_profile: profile, pert_scale: 0.0, seed };
            let clean = gen_instance(&base).expect("gen clean");
            let inst = gen_instance(&InstanceSpec { pert_scale: rel * clean.delta, ..base })
                .expect("gen perturbed");
            let ctx = split_context(&inst.g, &inst.u, &inst.v, inst.r).expect("split");
            let eb = project_perturbation(&ctx, &inst.e).expect("project");
            let rep =
                gap_quantities(&ctx, &eb, PairingNorm::BlockDiag(NormKind::Frobenius)).expect("gap");
            Crit4Instance { index, rel, inst, ctx, eb, rep }
        })
        .collect()
}

fn solve_for(c: &Crit4Instance) -> Result<RotationPair, String> {
    if !c.rep.condition_met {
        return Err(format!("instance {}: condition not met (kappa2 = {})", c.index, c.rep.kappa2));
    }
    solve_rotations(&c.ctx, &c.eb, &c.rep).map_err(|e| format!("instance {}: {e}", c.index))
}

#[test]
fn criterion_04_main_theorem_end_to_end() {
    let mut violations = Vec::new();
    for c in crit4_family() {
        if c.rep.kappa2 >= 0.2 {
            violations.push(format!("instance {}: kappa2 = {} not below 0.2", c.index, c.rep.kappa2));
            continue;
        }
        let rot = match solve_for(&c) {
            Ok(r) => r,
            Err(e) => {
                violations.push(e);
                continue;
            }
        };
        if rot.iterations > 50 {
            violations.push(format!("instance {}: {} iterations", c.index, rot.iterations));
        }
        let measured = pair_norm(&rot.gamma, &rot.omega, c.rep.pairing).unwrap();
        let bound = rotation_bound(&c.rep).unwrap();
        if bound - measured < 0.0 {
            violations.push(format!(
                "instance {}: pair norm {measured:.12e} exceeds bound {bound:.12e}",
                c.index
            ));
        }
        let cd = match build_corrected(&c.ctx, &c.eb, &rot, &c.rep) {
            Ok(cd) => cd,
            Err(e) => {
                violations.push(format!("instance {}: corrected failed: {e}", c.index));
                continue;
            }
        };
        let core = Matrix::block_2x2(
            &(&c.ctx.g1 + &c.eb.e11),
            &c.eb.e12,
            &c.eb.e21,
            &(&c.ctx.g2 + &c.eb.e22),
        );
        if cd.offdiag_residual > 1e-9 * core.frobenius() {
            violations.push(format!("instance {}: offdiag residual {:.3e}", c.index, cd.offdiag_residual));
        }
        let sv_full = svd(&core).unwrap().sigma;
        let mut merged: Vec<f64> = svd(&cd.g1_check)
            .unwrap()
            .sigma
            .values()
            .iter()
            .chain(svd(&cd.g2_check).unwrap().sigma.values())
            .copied()
            .collect();
        merged.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let tol = 1e-9 * (1.0 + sv_full.max());
        for (a, b) in sv_full.values().iter().zip(&merged) {
            if (a - b).abs() > tol {
                violations.push(format!("instance {}: multiset dev {:.3e}", c.index, (a - b).abs()));
                break;
            }
        }
    }
    conclude(
        4,
        "rotation solve converges within 50 iterations, meets its norm bound, annihilates the off-diagonal, and splits the spectrum (500 instances)",
        violations,
    );
}

#[test]
fn criterion_05_rotation_oracle_agreement() {
    let mut violations = Vec::new();
    let mut checked = 0;
    for c in crit4_family() {
        if c.rep.separation != SeparationMode::IntervalSeparated || c.rel > 0.008 {
            continue;
        }
        // rel = 0.008 delta keeps pert_scale below 1e-2 delta_under.
        if c.inst.e.frobenius() > 1e-2 * c.rep.delta_under {
            continue;
        }
        checked += 1;
        let rot = match solve_for(&c) {
            Ok(r) => r,
            Err(e) => {
                violations.push(e);
                continue;
            }
        };
        match direct_rotation_oracle(&c.inst.g, &c.inst.u, &c.inst.v, c.inst.r, &c.inst.e) {
            Ok(orc) => {
                let dev = (&rot.gamma - &orc.gamma)
                    .frobenius()
                    .max((&rot.omega - &orc.omega).frobenius());
                if dev > 1e-8 {
                    violations.push(format!("instance {}: oracle deviation {dev:.3e}", c.index));
                }
            }
            Err(e) => violations.push(format!("instance {}: oracle abstained: {e}", c.index)),
        }
    }
    assert!(checked >= 50, "subset too small: {checked}");
    conclude(
        5,
        "fixed-point rotations match the direct-SVD oracle at 1e-8 on the separated small-perturbation subset",
        violations,
    );
}

#[test]
fn criterion_06_distance_formulas() {
    let mut violations = Vec::new();
    for c in crit4_family() {
        let rot = match solve_for(&c) {
            Ok(r) => r,
            Err(e) => {
                violations.push(e);
                continue;
            }
        };
        let cd = match build_corrected(&c.ctx, &c.eb, &rot, &c.rep) {
            Ok(cd) => cd,
            Err(e) => {
                violations.push(format!("instance {}: {e}", c.index));
                continue;
            }
        };
        let diff_u = &cd.u_check.block(0, c.ctx.m(), 0, c.ctx.r) - &c.ctx.u1();
        let diff_v = &cd.v_check.block(0, c.ctx.n(), 0, c.ctx.r) - &c.ctx.v1();
        for (rotation, diff, measured) in
            [(&rot.gamma, &diff_u, cd.u1_dist), (&rot.omega, &diff_v, cd.v1_dist)]
        {
            let gamma_sp = ui_norm(rotation, NormKind::Spectral).unwrap();
            let expected = basis_distance_closed_form(gamma_sp);
            if (measured - expected).abs() > 1e-12 * (1.0 + expected) {
                violations.push(format!(
                    "instance {}: closed form {expected:.15e} vs {measured:.15e}",
                    c.index
                ));
            }
            for kind in NormKind::ALL {
                let d = ui_norm(diff, kind).unwrap();
                let g = ui_norm(rotation, kind).unwrap();
                if d > g * (1.0 + 1e-12) + 1e-14 {
                    violations.push(format!(
                        "instance {}: |diff|_{} = {d:.12e} exceeds {g:.12e}",
                        c.index,
                        kind.name()
                    ));
                }
            }
        }
    }
    conclude(
        6,
        "basis distances equal the spectral closed form at 1e-12 and respect the rotation-norm cap in all three norms",
        violations,
    );
}

#[test]
fn criterion_07_corollary_dominance() {
    let mut violations = Vec::new();
    for c in crit4_family() {
        let report = match corollary_suite(&c.ctx, &c.eb) {
            Ok(r) => r,
            Err(e) => {
                violations.push(format!("instance {}: {e}", c.index));
                continue;
            }
        };
        let sum_f = c.eb.e12.frobenius().hypot(c.eb.e21.frobenius());
        if report.eps_hat * report.eps_hat < report.epsilon * sum_f - 1e-12 {
            violations.push(format!("instance {}: eps chain violated", c.index));
        }
        if report.stewart_condition_met {
            let cor = &report.new_bounds["cor-f-i"];
            if !cor.condition_met {
                violations.push(format!("instance {}: classical holds, mixed-norm condition fails", c.index));
            } else if cor.bound.unwrap() > report.stewart_bound.unwrap() * (1.0 + 1e-12) {
                violations.push(format!(
                    "instance {}: bound {:.12e} above classical {:.12e}",
                    c.index,
                    cor.bound.unwrap(),
                    report.stewart_bound.unwrap()
                ));
            }
        }
    }
    conclude(
        7,
        "the mixed-norm Frobenius corollary is never weaker than the classical theorem (500 instances)",
        violations,
    );
}

#[test]
fn criterion_08_separation_gap_exhibit() {
    let mut violations = Vec::new();
    let root = repo_root();
    let g = svcert::parse_matrix_file(&root.join("data/exhibit_g.txt")).unwrap();
    let e = svcert::parse_matrix_file(&root.join("data/exhibit_e.txt")).unwrap();
    let f = svd(&g).unwrap();
    let ctx = split_context(&g, &f.u, &f.v, 20).unwrap();
    let eb = project_perturbation(&ctx, &e).unwrap();
    let report = corollary_suite(&ctx, &eb).unwrap();
    if report.naive_condition_met {
        violations.push("rank-inflated spectral condition unexpectedly holds".into());
    }
    let sp2 = &report.new_bounds["cor-sp-ii"];
    if !sp2.condition_met {
        violations.push("direct spectral condition fails on the exhibit".into());
    }
    // The certified bound is real: the solved rotation obeys it.
    let rep = gap_quantities(&ctx, &eb, PairingNorm::MaxOf(NormKind::Spectral)).unwrap();
    match solve_rotations(&ctx, &eb, &rep) {
        Ok(rot) => {
            let measured = pair_norm(&rot.gamma, &rot.omega, rep.pairing).unwrap();
            if let Some(bound) = sp2.bound {
                if measured > bound {
                    violations.push(format!("rotation norm {measured:.6e} above certified {bound:.6e}"));
                }
            }
        }
        Err(e) => violations.push(format!("rotation solve failed: {e}")),
    }
    conclude(
        8,
        "shipped exhibit: the rank-inflated spectral condition fails while the direct spectral certificate holds",
        violations,
    );
}

#[test]
fn criterion_09_improved_sigma_bounds() {
    let mut violations = Vec::new();
    let mut checked = 0;
    for c in crit4_family() {
        if c.rep.separation != SeparationMode::IntervalSeparated || c.rep.c != 1.0 || !c.rep.condition_met {
            continue;
        }
        checked += 1;
        let rot = match solve_for(&c) {
            Ok(r) => r,
            Err(e) => {
                violations.push(e);
                continue;
            }
        };
        let cd = match build_corrected(&c.ctx, &c.eb, &rot, &c.rep) {
            Ok(cd) => cd,
            Err(e) => {
                violations.push(format!("instance {}: {e}", c.index));
                continue;
            }
        };
        match improved_sigma_bounds(&c.ctx, &c.eb, &cd, &c.rep) {
            Ok(ib) => {
                if cd.sigma_min_g1 < ib.lower - 1e-10 || cd.sigma_min_g1 > ib.upper + 1e-10 {
                    violations.push(format!(
                        "instance {}: sigma_min {:.12e} outside [{:.12e}, {:.12e}]",
                        c.index, cd.sigma_min_g1, ib.lower, ib.upper
                    ));
                }
                if ib.per_index_max_dev > ib.correction + 1e-10 {
                    violations.push(format!(
                        "instance {}: per-index deviation {:.12e} above correction {:.12e}",
                        c.index, ib.per_index_max_dev, ib.correction
                    ));
                }
            }
            Err(e) => violations.push(format!("instance {}: {e}", c.index)),
        }
    }
    assert!(checked >= 100, "subset too small: {checked}");
    conclude(
        9,
        "sigma_min(G1_check) lies in the improved enclosure and the per-index refinement holds on separated instances",
        violations,
    );
}

// ---------------------------------------------------------------- 10-12

#[test]
fn criterion_10_sin_theta_certificates() {
    let mut violations = Vec::new();
    for i in 0..500u64 {
        let seed = 50_000 + i;
        let m = 5 + ((seed * 3) % 20) as usize;
        let n = 5 + ((seed * 11) % 20) as usize;
        let r = 1 + (seed % 4).min(m.min(n) as u64 - 2) as usize;
        let profile = if i % 2 == 0 {
            GapProfile::IntervalSeparated { width: 0.4 }
        } else {
            GapProfile::Interleaved { min_gap: 0.2 }
        };
        let base = InstanceSpec { m, n, r, gap_profile: profile, pert_scale: 0.0, seed };
        let clean = gen_instance(&base).unwrap();
        let inst = gen_instance(&InstanceSpec { pert_scale: 0.02 * clean.delta, ..base }).unwrap();
        let g_tilde = &inst.g + &inst.e;
        let ft = svd(&g_tilde).unwrap();
        let u1t = ft.u.block(0, m, 0, r);
        let v1t = ft.v.block(0, n, 0, r);
        let g1t = &(&u1t.adjoint() * &g_tilde) * &v1t;
        let inp = match SinThetaInput::from_g(inst.g.clone(), u1t.clone(), v1t, g1t) {
            Ok(inp) => inp,
            Err(e) => {
                violations.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        for kind in NormKind::ALL {
            match sin_theta_certificate(&inp, kind) {
                Ok(cert) => {
                    if !cert.satisfied {
                        violations.push(format!(
                            "seed {seed} {}: {:.6e} > {:.6e}",
                            kind.name(),
                            cert.measured,
                            cert.bound_value
                        ));
                    }
                    if kind == NormKind::Frobenius && cert.c != 1.0 {
                        violations.push(format!("seed {seed}: Frobenius certificate must have c = 1"));
                    }
                }
                Err(e) => violations.push(format!("seed {seed} {}: {e}", kind.name())),
            }
        }
        // sin(theta) values are the singular values of U2^H U1~, where U2
        // completes the decomposition of G used by the certificate.
        let sines = svd(&(&inp.u2.adjoint() * &inp.u1_t)).unwrap().sigma;
        let cert = sin_theta_certificate(&inp, NormKind::Spectral).unwrap();
        for (a, b) in sines.values().iter().zip(&cert.sines_u) {
            if (a - b).abs() > 1e-10 {
                violations.push(format!("seed {seed}: sine identity dev {:.3e}", (a - b).abs()));
            }
        }
    }
    conclude(10, "sin-theta certificates hold in all three norms on 500 instances", violations);
}

#[test]
fn criterion_11_interlacing() {
    let mut violations = Vec::new();
    let mut rng = rng_from_seed(60_000);
    for trial in 0..500 {
        for (m, n) in [(5usize, 4usize), (7, 7)] {
            let b = random_matrix(&mut rng, m, n);
            for r in 1..m.min(n) {
                match interlace_check(&b, r) {
                    Ok(rep) => {
                        if !rep.all_hold() {
                            violations.push(format!("trial {trial} {m}x{n} r={r}: {rep:?}"));
                        }
                    }
                    Err(e) => violations.push(format!("trial {trial}: {e}")),
                }
            }
        }
    }
    conclude(11, "all four interlacing inequalities hold on 500 random 5x4 and 7x7 matrices", violations);
}

#[test]
fn criterion_12_operator_and_phi_bounds() {
    let mut violations = Vec::new();
    // 25 contexts x 20 random pairs = 500 pairs, checked under each pairing.
    for ctx_i in 0..25u64 {
        let seed = 70_000 + ctx_i;
        let m = 5 + ((seed * 3) % 10) as usize;
        let n = 5 + ((seed * 7) % 10) as usize;
        let r = 1 + (seed % 3).min(m.min(n) as u64 - 2) as usize;
        let profile = if ctx_i % 2 == 0 {
            GapProfile::IntervalSeparated { width: 0.5 }
        } else {
            GapProfile::Interleaved { min_gap: 0.2 }
        };
        let base = InstanceSpec { m, n, r, gap_profile: profile, pert_scale: 0.0, seed };
        let clean = gen_instance(&base).unwrap();
        let inst = gen_instance(&InstanceSpec { pert_scale: 0.03 * clean.delta, ..base }).unwrap();
        let ctx = split_context(&inst.g, &inst.u, &inst.v, inst.r).unwrap();
        let eb = project_perturbation(&ctx, &inst.e).unwrap();
        let reports: Vec<GapReport> = PairingNorm::ALL
            .iter()
            .map(|&p| gap_quantities(&ctx, &eb, p).unwrap())
            .collect();

        let mut rng = rng_from_seed(seed ^ 0xdead);
        for pair_i in 0..20 {
            let gamma = random_matrix(&mut rng, m - ctx.r, ctx.r);
            let omega = random_matrix(&mut rng, n - ctx.r, ctx.r);
            let gamma_b = random_matrix(&mut rng, m - ctx.r, ctx.r);
            let omega_b = random_matrix(&mut rng, n - ctx.r, ctx.r);
            let (t1, t2) = t_map(&ctx, &eb, &gamma, &omega);
            let (p1, p2) = phi_map(&eb, &gamma, &omega);
            let (q1, q2) = phi_map(&eb, &gamma_b, &omega_b);
            for rep in &reports {
                if rep.delta_under <= 0.0 {
                    continue;
                }
                let arg = pair_norm(&gamma, &omega, rep.pairing).unwrap();
                let lhs = pair_norm(&t1, &t2, rep.pairing).unwrap();
                if lhs < rep.delta_under / rep.c * arg - 1e-9 {
                    violations.push(format!(
                        "ctx {ctx_i} pair {pair_i} {:?}: T lower bound violated",
                        rep.pairing
                    ));
                }
                let n_phi = pair_norm(&p1, &p2, rep.pairing).unwrap();
                if n_phi > rep.epsilon * arg * arg * (1.0 + 1e-12) + 1e-14 {
                    violations.push(format!(
                        "ctx {ctx_i} pair {pair_i} {:?}: phi quadratic bound violated",
                        rep.pairing
                    ));
                }
                let arg_b = pair_norm(&gamma_b, &omega_b, rep.pairing).unwrap();
                let ndiff = pair_norm(&(&p1 - &q1), &(&p2 - &q2), rep.pairing).unwrap();
                let narg = pair_norm(&(&gamma - &gamma_b), &(&omega - &omega_b), rep.pairing).unwrap();
                let cap = 2.0 * rep.epsilon * arg.max(arg_b) * narg;
                if ndiff > cap * (1.0 + 1e-12) + 1e-14 {
                    violations.push(format!(
                        "ctx {ctx_i} pair {pair_i} {:?}: phi Lipschitz bound violated",
                        rep.pairing
                    ));
                }
            }
        }
    }
    conclude(12, "operator lower bounds and phi bounds hold on 500 random pairs per pairing", violations);
}
