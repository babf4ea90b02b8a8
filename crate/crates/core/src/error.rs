use num_complex::Complex64;
use thiserror::Error;

use crate::model::Variant;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("omega = {omega} lies outside the open band (-{band_edge}, {band_edge})")]
    OutOfBand { omega: f64, band_edge: f64 },

    #[error("effective potential has a pole at omega = {omega}")]
    Pole { omega: f64 },

    #[error("expected a variant-{expected} model, got variant {found}")]
    VariantMismatch { expected: Variant, found: Variant },

    #[error("unsupported analysis: {0}")]
    Unsupported(String),

    #[error(
        "scattering system is singular at omega = {omega} (condition estimate {condition:.3e}{})",
        nearest_level.map(|l| format!(", nearest defect level {l}")).unwrap_or_default()
    )]
    SingularSystem {
        omega: f64,
        condition: f64,
        nearest_level: Option<Complex64>,
    },

    #[error("linear solve rejected: residual {residual:.3e} exceeds bound {bound:.3e}")]
    Residual { residual: f64, bound: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}
