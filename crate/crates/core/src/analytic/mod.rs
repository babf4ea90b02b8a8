//! Closed-form scattering for the three model topologies.
//!
//! Every function here works with unit incoming amplitude, so `T = |t|^2` and
//! `R = |r|^2`. Chain amplitudes follow `A_n = e^{ikn} + r e^{-ikn}` to the
//! left of the scatterer and `A_n = t e^{ikn}` to the right.

mod fano;
mod model_a;
mod model_b;
mod model_c;
mod resonance;

use num_complex::Complex64;
use serde::Serialize;

pub use fano::{fano_double, fano_single, FanoParameters};
pub use model_a::{amplitudes_a, effective_potential_a};
pub use model_b::{amplitudes_b, effective_potential_b, pt_reflection_b, pt_transmission_b};
pub use model_c::{amplitudes_c, effective_potential_c};
pub use resonance::{resonances, resonances_a, resonances_b, ResonanceRoot, ResonanceSet};

use crate::error::{Error, Result};
use crate::model::{ScatteringModel, Variant};

/// Magnitude below which a denominator counts as an exact pole.
pub const POLE_EPS: f64 = 1e-300;

/// Magnitude below which a variant-B denominator is treated as vanishing and
/// the sample is evaluated through its limit.
pub const LIMIT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectivePotential {
    pub value: Complex64,
    pub is_real_certified: bool,
}

/// Why a sample was evaluated through a limit instead of the direct formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleFlag {
    /// The effective potential diverges here.
    Pole,
    /// Numerator and denominator of the effective potential vanish together.
    Removable,
}

impl SampleFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleFlag::Pole => "pole",
            SampleFlag::Removable => "removable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringSolution {
    pub omega: f64,
    pub k: f64,
    pub t: Complex64,
    pub r: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub transmission: f64,
    pub reflection: f64,
    /// `arg t`, in `(-pi, pi]`.
    pub phase: f64,
    pub flag: Option<SampleFlag>,
}

impl ScatteringSolution {
    pub(crate) fn new(
        omega: f64,
        k: f64,
        t: Complex64,
        r: Complex64,
        b: (Complex64, Complex64),
        flag: Option<SampleFlag>,
    ) -> Self {
        Self {
            omega,
            k,
            t,
            r,
            b1: b.0,
            b2: b.1,
            transmission: t.norm_sqr(),
            reflection: r.norm_sqr(),
            phase: t.arg(),
            flag,
        }
    }

    /// `R + T`; equals one when the scattering conserves flux.
    pub fn total(&self) -> f64 {
        self.transmission + self.reflection
    }
}

/// Closed-form amplitudes for any variant that has them. Poles of the
/// effective potential in variants A and C are reported as errors.
pub fn amplitudes(model: &ScatteringModel, omega: f64) -> Result<ScatteringSolution> {
    match model.variant() {
        Variant::A => amplitudes_a(model, omega),
        Variant::B => amplitudes_b(model, omega),
        Variant::C => amplitudes_c(model, omega),
        Variant::Generic => Err(Error::Unsupported(
            "generic defect graphs have no closed form".into(),
        )),
    }
}

/// Like [`amplitudes`], but a pole of the effective potential yields the
/// continuous limit of the amplitudes, flagged [`SampleFlag::Pole`].
pub fn evaluate(model: &ScatteringModel, omega: f64) -> Result<ScatteringSolution> {
    match amplitudes(model, omega) {
        Err(Error::Pole { .. }) => match model.variant() {
            Variant::A => model_a::pole_limit(model, omega),
            Variant::C => model_c::pole_limit(model, omega),
            _ => unreachable!("variant B resolves its poles internally"),
        },
        other => other,
    }
}

pub(crate) fn unit_phase(k: f64) -> Complex64 {
    Complex64::from_polar(1.0, k)
}
