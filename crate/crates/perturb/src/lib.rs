//! Perturbation machinery for singular subspaces: given U^H G V =
//! blkdiag(G1, G2) and a perturbation E, solve for the rotation pair
//! (Gamma, Omega) that re-block-diagonalizes G + E, build the corrected
//! unitaries, and certify every norm bound the construction carries.

pub mod context;
pub mod corollaries;
pub mod corrected;
pub mod error;
pub mod gap;
pub mod rotations;

pub use context::{project_perturbation, split_context, BlockContext, PerturbationBlocks};
pub use corollaries::{
    corollary_suite, improved_sigma_bounds, ComparisonReport, CorollaryBound, ImprovedSigmaBounds,
};
pub use corrected::{basis_distance_closed_form, build_corrected, CorrectedDecomposition};
pub use error::{PerturbError, Result};
pub use gap::{constant_c, gap_quantities, GapReport, SeparationMode};
pub use rotations::{
    contraction_factor, phi_map, rotation_bound, solve_rotations, solve_rotations_forced, t_map,
    RotationPair,
};
