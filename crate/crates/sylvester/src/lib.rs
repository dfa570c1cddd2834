//! Solvers and bound certificates for the Hermitian Sylvester equation
//! XA - BX = S and for the coupled pair XA - BY = S, YA^H - B^H X = T that
//! drives singular subspace perturbation. Everything is a pure function of
//! its inputs.

pub mod bounds;
pub mod coupled;
pub mod error;
pub mod herm;
pub mod witness;

pub use bounds::{coupled_bounds, BoundCertificate, Regime};
pub use coupled::{pad_to_square, solve_coupled, CoupledSolver, CoupledSylvesterProblem, SolutionPair};
pub use error::{Result, SylvesterError};
pub use herm::{
    gap_tol, herm_bounds, solve_herm_sylvester, HermBoundCertificate, HermSylvesterProblem,
    HermSylvesterSolver,
};
pub use witness::{equality_witness, WitnessResult};
