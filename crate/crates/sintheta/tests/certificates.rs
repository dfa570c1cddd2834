//! Seeded sin-theta properties: two-route angle agreement, the sine identity
//! against U2^H U1~, and the certificates in all three norms.

use core_linalg::{svd, Matrix, NormKind};
use oracle::{gen_instance, random_unitary, rng_from_seed, GapProfile, InstanceSpec};
use sintheta::{canonical_angle_sines, canonical_angles, sin_theta_certificate, SinThetaInput, SubspacePair};

fn perturbed_instance(seed: u64) -> (Matrix, Matrix) {
    let m = 5 + (seed % 10) as usize;
    let n = 5 + ((seed / 10) % 10) as usize;
    let r = 1 + (seed % 4).min(m.min(n) as u64 - 2) as usize;
    let base = InstanceSpec {
        m,
        n,
        r,
        gap_profile: if seed % 2 == 0 {
            GapProfile::IntervalSeparated { width: 0.5 }
        } else {
            GapProfile::Interleaved { min_gap: 0.2 }
        },
        pert_scale: 0.0,
        seed,
    };
    let clean = gen_instance(&base).unwrap();
    let inst = gen_instance(&InstanceSpec { pert_scale: 0.02 * clean.delta, ..base }).unwrap();
    (inst.g.clone(), &inst.g + &inst.e)
}

#[test]
fn cos_and_sin_routes_agree() {
    for seed in 0..60u64 {
        let mut rng = rng_from_seed(seed + 11);
        let m = 4 + (seed % 8) as usize;
        let r = 1 + (seed % 3) as usize;
        let qa = random_unitary(&mut rng, m);
        let qb = random_unitary(&mut rng, m);
        let p = SubspacePair::new(qa.block(0, m, 0, r), qb.block(0, m, 0, r)).unwrap();
        let angles = canonical_angles(&p).unwrap();
        let sines = canonical_angle_sines(&p).unwrap();
        for (a, s) in angles.iter().zip(&sines) {
            // Quadrature identity holds at every angle; the raw sines agree
            // once the angle is away from the arccos noise floor.
            assert!((a.cos().powi(2) + s * s - 1.0).abs() <= 1e-10, "seed {seed}");
            if *a > 1e-6 {
                assert!((a.sin() - s).abs() <= 1e-10, "seed {seed}: {} vs {s}", a.sin());
            }
        }
    }
}

#[test]
fn sines_equal_singular_values_of_u2h_u1t() {
    for seed in 0..60u64 {
        let (g, g_tilde) = perturbed_instance(seed);
        let (m, n) = g.dims();
        let r = 1 + (seed % 3).min(m.min(n) as u64 - 2) as usize;
        let f = svd(&g).unwrap();
        let ft = svd(&g_tilde).unwrap();
        let u1 = f.u.block(0, m, 0, r);
        let u2 = f.u.block(0, m, r, m);
        let u1t = ft.u.block(0, m, 0, r);
        let p = SubspacePair::new(u1, u1t.clone()).unwrap();
        let angles = canonical_angles(&p).unwrap();
        let mut sines_from_angles: Vec<f64> = angles.iter().map(|a| a.sin()).collect();
        sines_from_angles.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let sv = svd(&(&u2.adjoint() * &u1t)).unwrap().sigma;
        for (i, s) in sv.values().iter().enumerate() {
            let expected = sines_from_angles.get(i).copied().unwrap_or(0.0);
            assert!((s - expected).abs() <= 1e-10, "seed {seed}: {s} vs {expected}");
        }
    }
}

#[test]
fn certificates_hold_in_all_three_norms() {
    for seed in 0..100u64 {
        let (g, g_tilde) = perturbed_instance(seed);
        let (m, n) = g.dims();
        let r = 1 + (seed % 3).min(m.min(n) as u64 - 2) as usize;
        let ft = svd(&g_tilde).unwrap();
        let u1t = ft.u.block(0, m, 0, r);
        let v1t = ft.v.block(0, n, 0, r);
        let g1t = &(&u1t.adjoint() * &g_tilde) * &v1t;
        let inp = SinThetaInput::from_g(g, u1t, v1t, g1t).unwrap();
        for kind in NormKind::ALL {
            let cert = sin_theta_certificate(&inp, kind).unwrap();
            assert!(cert.satisfied, "seed {seed} {kind:?}: {cert:?}");
            if kind == NormKind::Frobenius {
                assert_eq!(cert.c, 1.0);
            }
        }
    }
}
