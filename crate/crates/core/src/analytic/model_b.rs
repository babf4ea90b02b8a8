use num_complex::Complex64;

use super::{EffectivePotential, SampleFlag, ScatteringSolution, LIMIT_EPS, POLE_EPS};
use crate::error::{Error, Result};
use crate::model::{check_pt_symmetry, ModelB, ScatteringModel};

/// Numerator and denominator of the variant-B effective potential.
struct Parts {
    num: Complex64,
    den: Complex64,
    /// `w - (E_d1 + i gamma1)`, `w - (E_d2 + i gamma2)`
    detune: (Complex64, Complex64),
}

fn parts(p: &ModelB, omega: f64) -> Parts {
    let x1 = Complex64::new(omega - p.e_d1, -p.gamma1);
    let x2 = Complex64::new(omega - p.e_d2, -p.gamma2);
    let num = x1 * p.j2 * p.j2 + x2 * p.j1 * p.j1 + 2.0 * p.j1 * p.j2 * p.j_perp;
    let den = x1 * x2 - p.j_perp * p.j_perp;
    Parts {
        num,
        den,
        detune: (x1, x2),
    }
}

/// General complex effective potential of two defects hanging off site 0.
///
/// Real for PT-symmetric parameters, where it reduces to
/// `2 J_par^2 (w - E_d + J_perp) / ((w - E_d)^2 + gamma^2 - J_perp^2)`.
pub fn effective_potential_b(model: &ScatteringModel, omega: f64) -> Result<EffectivePotential> {
    let p = model.as_b()?;
    let Parts { num, den, .. } = parts(p, omega);
    if den.norm() < POLE_EPS {
        return Err(Error::Pole { omega });
    }
    Ok(EffectivePotential {
        value: num / den,
        is_real_certified: check_pt_symmetry(model).is_pt_symmetric,
    })
}

/// Amplitudes from the effective single-site scatterer. Since only site 0 is
/// touched, `A_0 = 1 + r = t`.
///
/// Poles of the effective potential inside the band give `t = 0`, `r = -1`
/// and are flagged. Where numerator and denominator vanish together (the
/// Hermitian `w = E_d - J_perp` point) the ratio of derivatives is used.
pub fn amplitudes_b(model: &ScatteringModel, omega: f64) -> Result<ScatteringSolution> {
    let p = model.as_b()?;
    let k = model.lead().wavenumber(omega)?;
    let i = Complex64::i();
    let lead = 2.0 * i * p.hopping * k.sin();

    if p.j1 == 0.0 && p.j2 == 0.0 {
        let zero = Complex64::new(0.0, 0.0);
        return Ok(ScatteringSolution::new(
            omega,
            k,
            Complex64::new(1.0, 0.0),
            zero,
            (zero, zero),
            None,
        ));
    }

    let Parts {
        num,
        den,
        detune: (x1, x2),
    } = parts(p, omega);
    if den.norm() < LIMIT_EPS && num.norm() < LIMIT_EPS {
        let d_num = p.j1 * p.j1 + p.j2 * p.j2;
        let d_den = x1 + x2;
        if d_den.norm() >= LIMIT_EPS {
            let f = d_num / d_den;
            let t = lead / (f + lead);
            let r = -f / (f + lead);
            let b = (t * p.j1 / d_den, t * p.j2 / d_den);
            return Ok(ScatteringSolution::new(
                omega,
                k,
                t,
                r,
                b,
                Some(SampleFlag::Removable),
            ));
        }
        // Double zero of den against a simple zero of num: still a pole.
        let zero = Complex64::new(0.0, 0.0);
        let b = (lead * p.j1 / d_num, lead * p.j2 / d_num);
        return Ok(ScatteringSolution::new(
            omega,
            k,
            zero,
            Complex64::new(-1.0, 0.0),
            b,
            Some(SampleFlag::Pole),
        ));
    }

    // t = lead / (F + lead) with F = num / den, multiplied through by den so
    // that a vanishing den stays finite.
    let scale = num + lead * den;
    let t = lead * den / scale;
    let r = -num / scale;
    let b1 = lead * (x2 * p.j1 + p.j_perp * p.j2) / scale;
    let b2 = lead * (x1 * p.j2 + p.j_perp * p.j1) / scale;
    let flag = (den.norm() < LIMIT_EPS).then_some(SampleFlag::Pole);
    Ok(ScatteringSolution::new(omega, k, t, r, (b1, b2), flag))
}

fn pt_terms(model: &ScatteringModel, omega: f64) -> Result<(f64, f64)> {
    let p = model.as_b()?;
    let report = check_pt_symmetry(model);
    if !report.is_pt_symmetric {
        return Err(Error::Unsupported(format!(
            "reduced transmission requires PT-symmetric parameters (violated: {})",
            report.violated_conditions.join(", ")
        )));
    }
    let k = model.lead().wavenumber(omega)?;
    let x = omega - p.e_d1;
    let level = x * x + p.gamma1 * p.gamma1 - p.j_perp * p.j_perp;
    let width = p.j1 * p.j1 / (p.hopping * k.sin()) * (x + p.j_perp);
    Ok((level * level, width * width))
}

/// Reduced PT-symmetric transmission,
/// `T = D^2 / (D^2 + [J_par^2 (w - E_d + J_perp) / (J sin k)]^2)` with
/// `D = (w - E_d)^2 + gamma^2 - J_perp^2`.
pub fn pt_transmission_b(model: &ScatteringModel, omega: f64) -> Result<f64> {
    let (level, width) = pt_terms(model, omega)?;
    Ok(level / (level + width))
}

/// Reduced PT-symmetric reflection, the complement of [`pt_transmission_b`].
pub fn pt_reflection_b(model: &ScatteringModel, omega: f64) -> Result<f64> {
    let (level, width) = pt_terms(model, omega)?;
    Ok(width / (level + width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::fano_double;
    use crate::model::build_model_b;

    fn fig4(gamma: f64, j_perp: f64) -> ScatteringModel {
        build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, gamma, -gamma, j_perp).unwrap()
    }

    #[test]
    fn potential_examples() {
        let m = fig4(0.05, 0.0);
        assert_eq!(effective_potential_b(&m, 0.5).unwrap().value.norm(), 0.0);
        let f = effective_potential_b(&m, 0.3).unwrap();
        // 2 * 0.16 * (-0.2) / (0.04 + 0.0025)
        assert!((f.value.re + 1.505_882_352_941_176_4).abs() < 1e-14);
        assert!(f.value.im.abs() <= 1e-14);
        assert!(f.is_real_certified);

        let fig5a = build_model_b(0.5, 0.4, 0.4, 0.4, 0.4, 0.05, -0.15, 0.0).unwrap();
        let f = effective_potential_b(&fig5a, 0.4).unwrap();
        assert!(!f.is_real_certified);
        assert!(f.value.im.abs() > 1e-3, "{}", f.value);
    }

    #[test]
    fn pt_reduced_potential_matches_general_form() {
        let m = fig4(0.07, 0.13);
        for omega in [-0.9, -0.3, 0.1, 0.41, 0.77] {
            let f = effective_potential_b(&m, omega).unwrap().value;
            let x = omega - 0.5;
            let reduced = 2.0 * 0.16 * (x + 0.13) / (x * x + 0.0049 - 0.0169);
            assert!((f.re - reduced).abs() < 1e-12 * reduced.abs().max(1.0));
            assert!(f.im.abs() <= 1e-14);
        }
    }

    #[test]
    fn exact_pole_is_an_error_for_the_potential() {
        // (w - E)^2 = J_perp^2 with gamma = 0: w = 0.6 is representable enough
        let m = fig4(0.0, 0.125);
        assert!(matches!(
            effective_potential_b(&m, 0.625),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn transmission_examples() {
        let sol = amplitudes_b(&fig4(0.05, 0.0), 0.5).unwrap();
        assert!((sol.transmission - 1.0).abs() < 1e-15);

        let m = fig4(0.05, 0.1);
        let root = 0.5 + 0.0075f64.sqrt();
        let sol = amplitudes_b(&m, root).unwrap();
        assert!(sol.transmission < 1e-20);
        assert!((sol.reflection - 1.0).abs() < 1e-12);

        // sin k = sqrt(0.91), F = -1.5058824
        let sol = amplitudes_b(&fig4(0.05, 0.0), 0.3).unwrap();
        assert!(
            (sol.transmission - 0.286_372).abs() < 5e-7,
            "{}",
            sol.transmission
        );
        assert!((sol.reflection - 0.713_628).abs() < 5e-7);
    }

    #[test]
    fn boundary_relation_holds() {
        let m = build_model_b(0.5, 0.4, 0.6, 0.4, -0.5, 0.05, -0.15, 0.07).unwrap();
        for omega in [-0.8, -0.1, 0.33, 0.9] {
            let s = amplitudes_b(&m, omega).unwrap();
            assert!((1.0 + s.r - s.t).norm() < 1e-14);
        }
    }

    #[test]
    fn pole_inside_band_is_flagged_with_limit() {
        let m = fig4(0.0, 0.125);
        let s = amplitudes_b(&m, 0.625).unwrap();
        assert_eq!(s.flag, Some(SampleFlag::Pole));
        assert_eq!(s.transmission, 0.0);
        assert!((s.reflection - 1.0).abs() < 1e-15);
    }

    #[test]
    fn removable_point_takes_the_continuous_limit() {
        let m = fig4(0.0, 0.2);
        let s = amplitudes_b(&m, 0.3).unwrap();
        assert_eq!(s.flag, Some(SampleFlag::Removable));
        let expected = fano_double(0.5, 0.4, 0.5, 0.2, 0.3).unwrap();
        assert!(
            (s.transmission - expected).abs() < 1e-12,
            "{} vs {expected}",
            s.transmission
        );
        let near = amplitudes_b(&m, 0.3 + 1e-5).unwrap();
        assert!(near.flag.is_none());
        assert!((near.t - s.t).norm() < 1e-4);
    }

    #[test]
    fn hermitian_degenerate_point_is_a_pole() {
        // J_perp = 0, gamma = 0: F = 2 J_par^2 / (w - E_d), no cancellation
        let m = fig4(0.0, 0.0);
        let s = amplitudes_b(&m, 0.5).unwrap();
        assert_eq!(s.flag, Some(SampleFlag::Pole));
        assert_eq!(s.transmission, 0.0);
        let near = amplitudes_b(&m, 0.5 + 1e-7).unwrap();
        assert!((near.b1 - s.b1).norm() < 1e-5, "{} vs {}", near.b1, s.b1);
    }

    #[test]
    fn reduced_forms_require_pt() {
        let m = build_model_b(0.5, 0.4, 0.4, 0.4, 0.4, 0.05, -0.15, 0.0).unwrap();
        assert!(matches!(
            pt_transmission_b(&m, 0.1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn decoupled_defects_transmit() {
        let m = build_model_b(0.5, 0.0, 0.0, 0.1, 0.1, 0.0, 0.0, 0.0).unwrap();
        let s = amplitudes_b(&m, 0.1).unwrap();
        assert_eq!(s.transmission, 1.0);
    }
}
