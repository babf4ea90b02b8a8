use num_complex::Complex64;

use super::{unit_phase, EffectivePotential, SampleFlag, ScatteringSolution, POLE_EPS};
use crate::error::{Error, Result};
use crate::model::ScatteringModel;

/// `G_d = J_perp^2 / (w - (E_d + i gamma))`, seen by site 0. Site 1 sees the
/// conjugate-level counterpart.
pub fn effective_potential_c(model: &ScatteringModel, omega: f64) -> Result<EffectivePotential> {
    let p = model.as_c()?;
    if p.j_perp == 0.0 {
        return Ok(EffectivePotential {
            value: Complex64::new(0.0, 0.0),
            is_real_certified: true,
        });
    }
    let den = Complex64::new(omega - p.e_d, -p.gamma);
    if den.norm() < POLE_EPS {
        return Err(Error::Pole { omega });
    }
    Ok(EffectivePotential {
        value: p.j_perp * p.j_perp / den,
        is_real_certified: p.gamma == 0.0,
    })
}

pub fn amplitudes_c(model: &ScatteringModel, omega: f64) -> Result<ScatteringSolution> {
    let p = model.as_c()?;
    let k = model.lead().wavenumber(omega)?;
    let g = effective_potential_c(model, omega)?.value;
    let g_mirror = if p.j_perp == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        p.j_perp * p.j_perp / Complex64::new(omega - p.e_d, p.gamma)
    };
    let j = p.hopping;
    let (ep, em) = (unit_phase(k), unit_phase(-k));
    let i = Complex64::i();

    let den = (g - j * em) * (g_mirror - j * em) - j * j;
    let t = em * (-2.0 * i * j * j * k.sin()) / den;
    let r = (j * j - (g - j * ep) * (g_mirror - j * em)) / den;

    let (b1, b2) = if p.j_perp == 0.0 {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        let a0 = 1.0 + r;
        let a1 = t * ep;
        (
            p.j_perp * a0 / Complex64::new(omega - p.e_d, -p.gamma),
            p.j_perp * a1 / Complex64::new(omega - p.e_d, p.gamma),
        )
    };
    Ok(ScatteringSolution::new(omega, k, t, r, (b1, b2), None))
}

/// Hermitian model at `w = E_d`: both defect levels resonate, pinning
/// `A_0 = A_1 = 0`, so the wave is fully reflected with `r = -1`.
pub(super) fn pole_limit(model: &ScatteringModel, omega: f64) -> Result<ScatteringSolution> {
    let p = model.as_c()?;
    let k = model.lead().wavenumber(omega)?;
    let b1 = 2.0 * Complex64::i() * p.hopping * k.sin() / p.j_perp;
    let zero = Complex64::new(0.0, 0.0);
    Ok(ScatteringSolution::new(
        omega,
        k,
        zero,
        Complex64::new(-1.0, 0.0),
        (b1, zero),
        Some(SampleFlag::Pole),
    ))
}
