//! Reference scattering solver: the full stationary lattice equations on a
//! finite window, solved directly with a fully pivoted dense LU.

mod compare;
mod system;

pub use compare::{compare, ComparisonPoint, ComparisonReport};
pub use system::{
    assemble, assemble_in, solve_in, solve_scattering, LinearScatteringSystem, OracleSolution,
    Window, RESIDUAL_BOUND, SINGULAR_CONDITION,
};
