use serde::Serialize;

use crate::error::Result;
use crate::model::wavenumber;

/// Fano lineshape parameters: reduced detuning `alpha_k` and asymmetry `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FanoParameters {
    pub alpha_k: f64,
    pub q: f64,
}

impl FanoParameters {
    /// `(alpha_k + q)^2 / (alpha_k^2 + 1)`.
    pub fn transmission(&self) -> f64 {
        if self.alpha_k.is_infinite() {
            return 1.0;
        }
        (self.alpha_k + self.q).powi(2) / (self.alpha_k * self.alpha_k + 1.0)
    }
}

/// Single Hermitian defect at `e_d1` hanging off site 0 with coupling `j1`.
pub fn fano_single(hopping: f64, j1: f64, e_d1: f64, omega: f64) -> Result<(f64, FanoParameters)> {
    let k = wavenumber(hopping, omega)?;
    let lead = 2.0 * hopping * k.sin();
    let x = omega - e_d1;
    if j1 == 0.0 {
        let alpha_k = if x == 0.0 {
            f64::INFINITY
        } else {
            f64::INFINITY.copysign(lead * x)
        };
        return Ok((1.0, FanoParameters { alpha_k, q: 0.0 }));
    }
    let width = j1 * j1 / lead;
    let t = x * x / (x * x + width * width);
    Ok((
        t,
        FanoParameters {
            alpha_k: lead * x / (j1 * j1),
            q: 0.0,
        },
    ))
}

/// Two Hermitian defects at `e_d`, coupled to site 0 by `j_par` and to each
/// other by `j_perp`. Antiresonance sits at `e_d + j_perp`.
pub fn fano_double(hopping: f64, j_par: f64, e_d: f64, j_perp: f64, omega: f64) -> Result<f64> {
    let k = wavenumber(hopping, omega)?;
    if j_par == 0.0 {
        return Ok(1.0);
    }
    let x = omega - e_d - j_perp;
    let width = j_par * j_par / (hopping * k.sin());
    Ok(x * x / (x * x + width * width))
}
