//! Transmission, reflection and scattering phase of a tight-binding chain
//! carrying side-coupled defects with complex (gain/loss) on-site energies.
//!
//! [`model`] builds the lattices, [`analytic`] evaluates their closed-form
//! amplitudes and resonance conditions, [`oracle`] solves the same lattice
//! equations directly as an independent reference, and [`sweep`] runs
//! frequency scans with phase unwrapping and jump detection. [`presets`]
//! holds the standard figure parameter sets.

pub mod analytic;
pub mod error;
pub mod model;
pub mod oracle;
pub mod presets;
pub mod sweep;

pub use analytic::{EffectivePotential, ResonanceSet, SampleFlag, ScatteringSolution};
pub use error::{Error, Result};
pub use model::{
    build_model_a, build_model_b, build_model_c, check_pt_symmetry, wavenumber, ModelA, ModelB,
    ModelC, ModelParams, PtSymmetryReport, ScatteringModel, Variant,
};
pub use num_complex::Complex64;
pub use oracle::OracleSolution;
pub use presets::{preset, Preset};
pub use sweep::{SweepResult, SweepSpec};
