use std::f64::consts::PI;

use proptest::prelude::*;
use ptfano::analytic::{
    amplitudes, evaluate, fano_double, fano_single, pt_transmission_b, resonances,
};
use ptfano::{build_model_a, build_model_b, build_model_c, check_pt_symmetry, ScatteringModel};

/// A band-interior frequency as a fraction of the band edge.
fn interior() -> impl Strategy<Value = f64> {
    -0.999f64..0.999
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pt_variant_a_conserves_flux(
        hopping in 0.2f64..1.5,
        j_par in 0.0f64..1.0,
        e_frac in -0.99f64..0.99,
        gamma in 0.0f64..1.0,
        w in interior(),
    ) {
        let m = build_model_a(hopping, j_par, e_frac * 2.0 * hopping, gamma).unwrap();
        let s = evaluate(&m, w * 2.0 * hopping).unwrap();
        prop_assert!((s.total() - 1.0).abs() <= 1e-10, "R+T = {}", s.total());
    }

    #[test]
    fn pt_variant_b_conserves_flux(
        hopping in 0.2f64..1.5,
        j_par in 0.0f64..1.0,
        e_frac in -0.99f64..0.99,
        gamma in 0.0f64..1.0,
        j_perp in 0.0f64..1.0,
        w in interior(),
    ) {
        let e_d = e_frac * 2.0 * hopping;
        let m = build_model_b(hopping, j_par, j_par, e_d, e_d, gamma, -gamma, j_perp).unwrap();
        let s = evaluate(&m, w * 2.0 * hopping).unwrap();
        prop_assert!((s.total() - 1.0).abs() <= 1e-10, "R+T = {}", s.total());
    }

    #[test]
    fn reduced_pt_transmission_matches_general_form(
        j_par in 0.05f64..1.0,
        e_d in -0.9f64..0.9,
        gamma in 0.001f64..0.5,
        j_perp in 0.0f64..0.5,
        w in interior(),
    ) {
        let m = build_model_b(0.5, j_par, j_par, e_d, e_d, gamma, -gamma, j_perp).unwrap();
        let general = amplitudes(&m, w).unwrap();
        prop_assume!(general.flag.is_none());
        let reduced = pt_transmission_b(&m, w).unwrap();
        prop_assert!((general.transmission - reduced).abs() <= 1e-10);
    }

    #[test]
    fn pt_transmission_depends_on_gamma_squared_only(
        j_par in 0.0f64..1.0,
        e_d in -0.9f64..0.9,
        gamma in 0.0f64..1.0,
        j_perp in 0.0f64..1.0,
        w in interior(),
    ) {
        let plus = build_model_b(0.5, j_par, j_par, e_d, e_d, gamma, -gamma, j_perp).unwrap();
        let minus = build_model_b(0.5, j_par, j_par, e_d, e_d, -gamma, gamma, j_perp).unwrap();
        let (a, b) = (pt_transmission_b(&plus, w).unwrap(), pt_transmission_b(&minus, w).unwrap());
        prop_assert!((a - b).abs() <= 1e-14, "{a} vs {b}");
    }

    #[test]
    fn hermitian_variant_b_reduces_to_fano_double(
        j_par in 0.05f64..1.0,
        e_d in -0.9f64..0.9,
        j_perp in 0.0f64..0.5,
        w in interior(),
    ) {
        prop_assume!((w - (e_d - j_perp)).abs() > 1e-6);
        let m = build_model_b(0.5, j_par, j_par, e_d, e_d, 0.0, 0.0, j_perp).unwrap();
        let s = amplitudes(&m, w).unwrap();
        let expected = fano_double(0.5, j_par, e_d, j_perp, w).unwrap();
        prop_assert!((s.transmission - expected).abs() <= 1e-12, "{} vs {expected}", s.transmission);
    }

    #[test]
    fn fano_identity_holds(j1 in 0.0f64..1.0, e in -0.9f64..0.9, w in interior()) {
        let (t, fp) = fano_single(0.5, j1, e, w).unwrap();
        prop_assert!((t - fp.transmission()).abs() <= 1e-12);
    }

    #[test]
    fn boundary_relation_for_every_variant(
        p in prop::array::uniform8(-0.8f64..0.8),
        w in interior(),
    ) {
        let m = build_model_b(0.5, p[0], p[1], p[2], p[3], p[4], p[5], p[6]).unwrap();
        let s = evaluate(&m, w).unwrap();
        prop_assert!((1.0 + s.r - s.t).norm() <= 1e-12 * (1.0 + s.t.norm()));
    }

    #[test]
    fn model_c_hermitian_conserves(j_perp in 0.0f64..1.0, e_d in -0.9f64..0.9, w in interior()) {
        let m = build_model_c(0.5, j_perp, e_d, 0.0).unwrap();
        let s = evaluate(&m, w).unwrap();
        prop_assert!((s.total() - 1.0).abs() <= 1e-10);
    }
}

fn certify(model: &ScatteringModel) {
    let set = resonances(model).unwrap();
    for root in set.perfect_reflection.iter().filter(|r| r.in_band) {
        let t = evaluate(model, root.omega).unwrap().transmission;
        assert!(t <= 1e-20, "T({}) = {t}", root.omega);
    }
    for root in set.perfect_transmission.iter().filter(|r| r.in_band) {
        let t = evaluate(model, root.omega).unwrap().transmission;
        assert!((t - 1.0).abs() <= 1e-12, "T({}) = {t}", root.omega);
    }
}

#[test]
fn resonance_roots_are_certified() {
    for gamma in [0.0, 0.05, 0.1, 0.17, 0.2] {
        certify(&build_model_a(0.5, 0.3, 0.5, gamma).unwrap());
    }
    for (gamma, j_perp) in [
        (0.0, 0.0),
        (0.0, 0.2),
        (0.05, 0.0),
        (0.05, 0.02),
        (0.05, 0.1),
        (0.1, 0.3),
    ] {
        certify(&build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, gamma, -gamma, j_perp).unwrap());
    }
}

#[test]
fn phase_turns_by_pi_across_simple_roots() {
    let models = [
        build_model_a(0.5, 0.3, 0.5, 0.0).unwrap(),
        build_model_a(0.5, 0.3, 0.5, 0.1).unwrap(),
        build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.1).unwrap(),
        build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.0, 0.0, 0.2).unwrap(),
    ];
    for m in &models {
        for root in resonances(m)
            .unwrap()
            .perfect_reflection
            .iter()
            .filter(|r| !r.degenerate)
        {
            let lo = evaluate(m, root.omega - 1e-7).unwrap().phase;
            let hi = evaluate(m, root.omega + 1e-7).unwrap().phase;
            let turn = (hi - lo).rem_euclid(2.0 * PI);
            assert!(
                (turn - PI).abs() < 1e-4,
                "{:?} at {}: {turn}",
                m.variant(),
                root.omega
            );
        }
    }
}

#[test]
fn pt_check_is_pure() {
    let m = build_model_b(0.5, 0.4, 0.6, 0.4, -0.5, 0.05, -0.15, 0.0).unwrap();
    let first = check_pt_symmetry(&m);
    for _ in 0..3 {
        assert_eq!(check_pt_symmetry(&m), first);
    }
    assert_eq!(first.violated_conditions.len(), 3);
}
