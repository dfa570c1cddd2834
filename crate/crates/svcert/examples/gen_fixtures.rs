//! Regenerates the matrix fixtures under data/. Run from anywhere in the
//! workspace:
//!
//!     cargo run -p svcert --example gen_fixtures
//!
//! demo_*: a small well-separated 6x5 instance for trying out `svcert bound`.
//! exhibit_*: a 40x40 split-in-the-middle instance whose off-diagonal
//! perturbation blocks are scaled unitaries. Its spectral-norm data defeats
//! the rank-inflated condition that a Frobenius-based analysis forces, while
//! the direct spectral condition holds with a wide margin.

use std::path::Path;

use core_linalg::Matrix;
use oracle::{random_matrix, random_unitary, rng_from_seed};
use svcert::matfile::matrix_to_string;

fn write(path: &Path, m: &Matrix) {
    std::fs::write(path, matrix_to_string(m)).unwrap_or_else(|e| panic!("write {path:?}: {e}"));
    println!("wrote {} ({}x{})", path.display(), m.rows(), m.cols());
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let data = root.join("data");
    std::fs::create_dir_all(&data).expect("create data/");

    // Demo: G = leading_diag(6, 5; 3.0, 2.7, 2.4, 0.8, 0.5), split r = 2.
    // sigma_min(G1) = 2.7 > sigma_max(G2) = 2.4, gap delta = 0.3.
    let g_demo = Matrix::leading_diag(6, 5, &[3.0, 2.7, 2.4, 0.8, 0.5]);
    let mut rng = rng_from_seed(20240);
    let dir = random_matrix(&mut rng, 6, 5);
    let e_demo = dir.scaled_re(5e-3 / dir.frobenius());
    write(&data.join("demo_g.txt"), &g_demo);
    write(&data.join("demo_e.txt"), &e_demo);

    // Exhibit: m = n = 40, r = 20. G1 values in [2, 3], G2 in [0, 1], so
    // delta = 1 exactly. E has zero diagonal blocks and off-diagonal blocks
    // that are unitaries scaled to spectral norm 0.1 = 0.1 delta_under.
    let k = 20usize;
    let mut values = Vec::with_capacity(2 * k);
    for i in 0..k {
        values.push(3.0 - i as f64 / (k - 1) as f64); // [2, 3]
    }
    for i in 0..k {
        values.push(1.0 - i as f64 / (k - 1) as f64); // [0, 1]
    }
    let g_exhibit = Matrix::diag(&values);
    let mut rng = rng_from_seed(20241);
    let e12 = random_unitary(&mut rng, k).scaled_re(0.1);
    let e21 = random_unitary(&mut rng, k).scaled_re(0.1);
    let mut e_exhibit = Matrix::zeros(2 * k, 2 * k);
    e_exhibit.set_block(0, k, &e12);
    e_exhibit.set_block(k, 0, &e21);
    write(&data.join("exhibit_g.txt"), &g_exhibit);
    write(&data.join("exhibit_e.txt"), &e_exhibit);
}
