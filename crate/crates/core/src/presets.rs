//! Named parameter sets for the standard figure sweeps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{build_model_a, build_model_b, build_model_c, ScatteringModel};
use crate::sweep::{Axis, AxisValues};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub model: ScatteringModel,
    /// Secondary axis the figure compares several curves along.
    pub vary: Option<AxisValues>,
}

pub const PRESET_NAMES: [&str; 11] = [
    "fig2a", "fig2c", "fig2e", "fig3", "fig4", "fig4c", "fig5a", "fig5b", "fig5c", "fig5d", "fig6",
];

fn axis(axis: Axis, values: &[f64]) -> Option<AxisValues> {
    Some(AxisValues {
        axis,
        values: values.to_vec(),
    })
}

/// Looks up a preset by name. Fig. 5 sets carry no inter-defect coupling.
pub fn preset(name: &str) -> Result<Preset> {
    let (model, vary) = match name {
        // single Hermitian defect on site 0
        "fig2a" => (build_model_b(0.5, 0.4, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0)?, None),
        "fig2c" => (
            build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.0, 0.0, 0.0)?,
            axis(Axis::JPerp, &[0.0, 0.2]),
        ),
        "fig2e" => (build_model_a(0.5, 0.3, 0.5, 0.0)?, None),
        "fig3" => (
            build_model_a(0.5, 0.3, 0.5, 0.0)?,
            axis(Axis::Gamma, &[0.0, 0.1, 0.2]),
        ),
        "fig4" => (
            build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.0, 0.0, 0.0)?,
            axis(Axis::Gamma, &[0.0, 0.05, 0.1]),
        ),
        "fig4c" => (
            build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.02)?,
            axis(Axis::JPerp, &[0.02, 0.1]),
        ),
        "fig5a" => (
            build_model_b(0.5, 0.4, 0.4, 0.4, 0.4, 0.05, -0.15, 0.0)?,
            None,
        ),
        "fig5b" => (
            build_model_b(0.5, 0.4, 0.4, 0.4, -0.5, 0.05, -0.05, 0.0)?,
            None,
        ),
        "fig5c" => (
            build_model_b(0.5, 0.4, 0.6, 0.4, 0.4, 0.05, -0.05, 0.0)?,
            None,
        ),
        "fig5d" => (
            build_model_b(0.5, 0.4, 0.6, 0.4, -0.5, 0.05, -0.15, 0.0)?,
            None,
        ),
        "fig6" => (
            build_model_c(0.5, 0.3, 0.2, 0.0)?,
            axis(Axis::Gamma, &[0.0, 0.1]),
        ),
        other => {
            return Err(Error::InvalidModel(format!(
                "unknown preset {other:?} (expected one of {})",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    let name = PRESET_NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .expect("matched above");
    Ok(Preset { name, model, vary })
}
