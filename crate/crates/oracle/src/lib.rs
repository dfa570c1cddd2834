//! Independent brute-force oracles and seeded instance generators for the
//! acceptance and property suites. Deliberately naive; depends only on the
//! base linear algebra layer so no solver code is shared with the paths it
//! cross-checks.

pub mod error;
pub mod gen;
pub mod rng;
pub mod rotation;
pub mod vectorized;

pub use error::OracleError;
pub use gen::{
    cross_gap, draw_disjoint_eigenvalues, draw_singular_values, gen_coupled, gen_instance,
    CoupledInstance, CoupledSpec, GapProfile, GeneratedInstance, InstanceSpec, GAP_ANCHOR,
};
pub use rng::{
    complex_normal, random_hermitian, random_matrix, random_unitary, random_with_singular_values,
    rng_from_seed, standard_normal, SeededRng,
};
pub use rotation::{direct_rotation_oracle, RotationOracleResult};
pub use vectorized::{vectorized_coupled_solve, vectorized_sylvester_solve, VectorizedSolution};
