use num_complex::Complex64;

use super::{unit_phase, EffectivePotential, SampleFlag, ScatteringSolution, POLE_EPS};
use crate::error::{Error, Result};
use crate::model::{check_pt_symmetry, ScatteringModel};

/// `F_d = 2 J_par^2 (w - E_d) / ((w - E_d)^2 + gamma^2)`, the potential the
/// two defects impose jointly on chain sites 0 and 1.
pub fn effective_potential_a(model: &ScatteringModel, omega: f64) -> Result<EffectivePotential> {
    let p = model.as_a()?;
    if p.j_par == 0.0 {
        return Ok(EffectivePotential {
            value: Complex64::new(0.0, 0.0),
            is_real_certified: true,
        });
    }
    let x = omega - p.e_d;
    let den = x * x + p.gamma * p.gamma;
    if den < POLE_EPS {
        return Err(Error::Pole { omega });
    }
    Ok(EffectivePotential {
        value: Complex64::new(2.0 * p.j_par * p.j_par * x / den, 0.0),
        is_real_certified: check_pt_symmetry(model).is_pt_symmetric,
    })
}

pub fn amplitudes_a(model: &ScatteringModel, omega: f64) -> Result<ScatteringSolution> {
    let p = model.as_a()?;
    let k = model.lead().wavenumber(omega)?;
    let f = effective_potential_a(model, omega)?.value.re;
    let j = p.hopping;
    let (s, e) = (k.sin(), unit_phase(k));
    let i = Complex64::i();

    let den = f * (1.0 + e) + i * j * s;
    let t = i * s * (f + j) / den;
    let r = -f * (1.0 + e + i * e * s) / den;

    let a_sum = 1.0 + r + t * e;
    let b1 = p.j_par * a_sum / Complex64::new(omega - p.e_d, -p.gamma);
    let b2 = p.j_par * a_sum / Complex64::new(omega - p.e_d, p.gamma);
    Ok(ScatteringSolution::new(omega, k, t, r, (b1, b2), None))
}

/// Hermitian model at `omega = E_d`: `F_d` diverges, the antisymmetric defect
/// mode decouples and only the symmetric amplitude is reported.
pub(super) fn pole_limit(model: &ScatteringModel, omega: f64) -> Result<ScatteringSolution> {
    let p = model.as_a()?;
    let k = model.lead().wavenumber(omega)?;
    let (s, e) = (k.sin(), unit_phase(k));
    let i = Complex64::i();
    let t = i * s / (1.0 + e);
    let r = -(1.0 + e + i * e * s) / (1.0 + e);
    // J_par (B1 + B2) = F_d (A0 + A1) -> i J sin k
    let b = i * p.hopping * s / (2.0 * p.j_par);
    Ok(ScatteringSolution::new(
        omega,
        k,
        t,
        r,
        (b, b),
        Some(SampleFlag::Pole),
    ))
}
