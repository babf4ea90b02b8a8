use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{check_pt_symmetry, ScatteringModel, Variant};

/// A perfect-reflection or perfect-transmission frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceRoot {
    pub omega: f64,
    pub in_band: bool,
    /// Both branches of the quadratic coincide.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResonanceSet {
    pub perfect_reflection: Vec<ResonanceRoot>,
    pub perfect_transmission: Vec<ResonanceRoot>,
    pub critical_gamma: Option<f64>,
    pub discriminant: f64,
}

/// Relative size below which a discriminant counts as zero.
const DEGENERACY_EPS: f64 = 1e-14;

fn root(model: &ScatteringModel, omega: f64, degenerate: bool) -> ResonanceRoot {
    ResonanceRoot {
        omega,
        in_band: model.lead().in_band(omega),
        degenerate,
    }
}

/// Roots of `F_d + J = 0` and `F_d = 0` for variant A.
///
/// Real reflection roots exist while `|gamma| <= J_par^2 / |J|`. In the
/// Hermitian case the `w = E_d` branch is a pole of `F_d` rather than a root
/// and is dropped, as is the perfect transmission there.
pub fn resonances_a(model: &ScatteringModel) -> Result<ResonanceSet> {
    let p = model.as_a()?;
    let j = p.hopping;
    let coupling = p.j_par * p.j_par;
    let disc = coupling * coupling - j * j * p.gamma * p.gamma;
    let critical_gamma = Some(coupling / j.abs());

    let mut reflection = Vec::new();
    if p.j_par != 0.0 && disc >= -DEGENERACY_EPS * coupling * coupling {
        if disc.abs() <= DEGENERACY_EPS * coupling * coupling {
            reflection.push(root(model, p.e_d - coupling / j, true));
        } else {
            let sq = disc.sqrt();
            for x in [(-coupling - sq) / j, (-coupling + sq) / j] {
                if p.gamma == 0.0 && x == 0.0 {
                    continue;
                }
                reflection.push(root(model, p.e_d + x, false));
            }
        }
    }
    reflection.sort_by(|a, b| a.omega.total_cmp(&b.omega));

    let transmission = if p.gamma != 0.0 || p.j_par == 0.0 {
        vec![root(model, p.e_d, false)]
    } else {
        Vec::new()
    };
    Ok(ResonanceSet {
        perfect_reflection: reflection,
        perfect_transmission: transmission,
        critical_gamma,
        discriminant: disc,
    })
}

/// Zeros and unit points of the reduced PT transmission for variant B.
///
/// Reflection roots `E_d ± sqrt(J_perp^2 - gamma^2)`, transmission at
/// `E_d - J_perp`. With `gamma = 0` the point `E_d - J_perp` is a removable
/// singularity of the lineshape and is neither.
pub fn resonances_b(model: &ScatteringModel) -> Result<ResonanceSet> {
    let p = model.as_b()?;
    let report = check_pt_symmetry(model);
    if !report.is_pt_symmetric {
        return Err(Error::Unsupported(format!(
            "closed-form resonances need PT-symmetric parameters (violated: {})",
            report.violated_conditions.join(", ")
        )));
    }
    let (gamma, j_perp, e_d) = (p.gamma1, p.j_perp, p.e_d1);
    let disc = j_perp * j_perp - gamma * gamma;
    let scale = (j_perp * j_perp).max(gamma * gamma);

    let mut reflection = Vec::new();
    if p.j1 != 0.0 && disc >= -DEGENERACY_EPS * scale {
        if disc.abs() <= DEGENERACY_EPS * scale {
            reflection.push(root(model, e_d, true));
        } else {
            let sq = disc.sqrt();
            for omega in [e_d - sq, e_d + sq] {
                if gamma == 0.0
                    && (omega - (e_d - j_perp)).abs() <= f64::EPSILON * e_d.abs().max(1.0)
                {
                    continue;
                }
                reflection.push(root(model, omega, false));
            }
        }
    }

    let transmission = if gamma != 0.0 || p.j1 == 0.0 {
        vec![root(model, e_d - j_perp, false)]
    } else {
        Vec::new()
    };
    Ok(ResonanceSet {
        perfect_reflection: reflection,
        perfect_transmission: transmission,
        critical_gamma: None,
        discriminant: disc,
    })
}

pub fn resonances(model: &ScatteringModel) -> Result<ResonanceSet> {
    match model.variant() {
        Variant::A => resonances_a(model),
        Variant::B => resonances_b(model),
        v => Err(Error::Unsupported(format!(
            "no closed-form resonance conditions for variant {v}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{amplitudes, evaluate};
    use crate::model::{build_model_a, build_model_b, build_model_c};

    fn omegas(v: &[ResonanceRoot]) -> Vec<f64> {
        v.iter().map(|r| r.omega).collect()
    }

    #[test]
    fn model_a_fig3() {
        let set = resonances_a(&build_model_a(0.5, 0.3, 0.5, 0.1).unwrap()).unwrap();
        assert!((set.critical_gamma.unwrap() - 0.18).abs() < 1e-15);
        let w = omegas(&set.perfect_reflection);
        assert_eq!(w.len(), 2);
        assert!((w[0] - 0.170_333_8).abs() < 1e-7);
        assert!((w[1] - 0.469_666_2).abs() < 1e-7);
        assert_eq!(omegas(&set.perfect_transmission), vec![0.5]);
        assert!(set
            .perfect_reflection
            .iter()
            .all(|r| r.in_band && !r.degenerate));

        let set = resonances_a(&build_model_a(0.5, 0.3, 0.5, 0.2).unwrap()).unwrap();
        assert!(set.discriminant < 0.0);
        assert!(set.perfect_reflection.is_empty());
        assert_eq!(omegas(&set.perfect_transmission), vec![0.5]);
    }

    #[test]
    fn model_a_hermitian_single_root() {
        let set = resonances_a(&build_model_a(0.5, 0.3, 0.5, 0.0).unwrap()).unwrap();
        let w = omegas(&set.perfect_reflection);
        assert_eq!(w.len(), 1);
        assert!((w[0] - 0.14).abs() < 1e-15);
        assert!(set.perfect_transmission.is_empty());
    }

    #[test]
    fn model_a_critical_gain_is_degenerate() {
        let set = resonances_a(&build_model_a(0.5, 0.3, 0.5, 0.18).unwrap()).unwrap();
        assert_eq!(set.perfect_reflection.len(), 1);
        assert!(set.perfect_reflection[0].degenerate);
        assert!((set.perfect_reflection[0].omega - 0.32).abs() < 1e-12);
    }

    #[test]
    fn model_b_fig4() {
        let m = build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.1).unwrap();
        let set = resonances_b(&m).unwrap();
        let w = omegas(&set.perfect_reflection);
        assert!((w[0] - 0.413_397_5).abs() < 1e-7);
        assert!((w[1] - 0.586_602_5).abs() < 1e-7);
        assert!((set.perfect_transmission[0].omega - 0.4).abs() < 1e-15);

        let m = build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.02).unwrap();
        assert!(resonances_b(&m).unwrap().perfect_reflection.is_empty());

        let m = build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.0).unwrap();
        let set = resonances_b(&m).unwrap();
        assert!(set.perfect_reflection.is_empty());
        assert_eq!(omegas(&set.perfect_transmission), vec![0.5]);
    }

    #[test]
    fn model_b_hermitian_keeps_only_the_true_zero() {
        let m = build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.0, 0.0, 0.2).unwrap();
        let set = resonances_b(&m).unwrap();
        assert_eq!(omegas(&set.perfect_reflection), vec![0.7]);
        assert!(set.perfect_transmission.is_empty());
    }

    #[test]
    fn non_pt_is_unsupported() {
        let m = build_model_b(0.5, 0.4, 0.6, 0.4, -0.5, 0.05, -0.15, 0.0).unwrap();
        assert!(matches!(resonances_b(&m), Err(Error::Unsupported(_))));
        assert!(resonances(&build_model_c(0.5, 0.3, 0.2, 0.1).unwrap()).is_err());
    }

    #[test]
    fn out_of_band_roots_are_flagged() {
        let set = resonances_a(&build_model_a(0.5, 0.9, 0.5, 0.1).unwrap()).unwrap();
        assert!(set.perfect_reflection.iter().any(|r| !r.in_band));
    }

    #[test]
    fn roots_certify() {
        let models = [
            build_model_a(0.5, 0.3, 0.5, 0.1).unwrap(),
            build_model_a(0.5, 0.3, 0.5, 0.0).unwrap(),
            build_model_a(0.7, 0.45, -0.2, 0.13).unwrap(),
            build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.1).unwrap(),
            build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.0, 0.0, 0.2).unwrap(),
            build_model_b(0.6, 0.3, 0.3, -0.1, -0.1, 0.11, -0.11, 0.3).unwrap(),
        ];
        for m in &models {
            let set = resonances(m).unwrap();
            for r in set.perfect_reflection.iter().filter(|r| r.in_band) {
                let t = evaluate(m, r.omega).unwrap().transmission;
                assert!(t <= 1e-20, "{:?}: T = {t} at {}", m.variant(), r.omega);
            }
            for r in set.perfect_transmission.iter().filter(|r| r.in_band) {
                let t = amplitudes(m, r.omega).unwrap().transmission;
                assert!((t - 1.0).abs() <= 1e-12);
            }
        }
    }
}
