use num_complex::Complex64;
use proptest::prelude::*;
use ptfano::analytic::resonances;
use ptfano::model::{Attachment, ChainLead, DefectBlock, DefectSite, InternalCoupling};
use ptfano::oracle::{solve_in, solve_scattering, Window};
use ptfano::{build_model_a, build_model_b, build_model_c, Error, ScatteringModel};

fn bulk_residual(j: f64, omega: f64, left: Complex64, here: Complex64, right: Complex64) -> f64 {
    (omega * here - j * (left + right)).norm()
}

/// Random defect graph: up to three defects hung off sites -2..=2, with
/// non-zero loss on every site so that no bound state sits in the band.
fn generic_model() -> impl Strategy<Value = ScatteringModel> {
    (
        prop::collection::vec((-0.8f64..0.8, 0.01f64..0.3), 1..=3),
        prop::collection::vec((0usize..3, -2i64..=2, -0.8f64..0.8), 1..=4),
        -0.5f64..0.5,
    )
        .prop_map(|(sites, links, internal)| {
            let n = sites.len();
            let sites = sites
                .into_iter()
                .enumerate()
                .map(|(i, (e, g))| DefectSite {
                    label: format!("d{i}"),
                    onsite: Complex64::new(e, -g),
                })
                .collect();
            let attachments = links
                .into_iter()
                .map(|(d, site, c)| Attachment {
                    defect: d % n,
                    site,
                    coupling: c,
                })
                .collect();
            let internal = if n > 1 {
                vec![InternalCoupling {
                    a: 0,
                    b: 1,
                    value: internal,
                }]
            } else {
                Vec::new()
            };
            ScatteringModel::generic(
                ChainLead::new(0.5).unwrap(),
                DefectBlock {
                    sites,
                    internal,
                    attachments,
                },
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn uncoupled_defects_leave_the_chain_free(
        hopping in 0.2f64..1.5,
        onsite in prop::array::uniform4(-1.0f64..1.0),
        w in -0.999f64..0.999,
    ) {
        let omega = w * 2.0 * hopping;
        // Gain/loss keeps the detached defect rows invertible.
        let m = build_model_b(hopping, 0.0, 0.0, onsite[0], onsite[1], 0.1 + onsite[2].abs(), -0.1 - onsite[3].abs(), 0.0).unwrap();
        let s = solve_scattering(&m, omega).unwrap();
        prop_assert!((s.t - 1.0).norm() <= 1e-12, "t = {}", s.t);
        prop_assert!(s.r.norm() <= 1e-12, "r = {}", s.r);
    }

    #[test]
    fn widening_the_window_changes_nothing(model in generic_model(), w in -0.99f64..0.99) {
        let base = Window::around(&model);
        let a = solve_in(&model, w, base);
        let b = solve_in(&model, w, base.widened(5));
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert!((a.t - b.t).norm() < 1e-12);
                prop_assert!((a.r - b.r).norm() < 1e-12);
            }
            (Err(Error::SingularSystem { .. }), Err(Error::SingularSystem { .. })) => {}
            (a, b) => prop_assert!(false, "inconsistent outcomes: {a:?} / {b:?}"),
        }
    }

    #[test]
    fn lead_matching_is_exact(model in generic_model(), w in -0.99f64..0.99) {
        prop_assume!(solve_scattering(&model, w).is_ok());
        let s = solve_scattering(&model, w).unwrap();
        let win = Window::around(&model);
        let j = model.lead().hopping();
        let wave = |n: i64| Complex64::from_polar(1.0, s.k * n as f64);
        let left = |n: i64| wave(n) + s.r * wave(-n);
        let right = |n: i64| s.t * wave(n);

        let (l, r) = (win.first - 1, win.last + 1);
        let res_l = bulk_residual(j, w, left(l - 1), left(l), s.amplitude(win.first).unwrap());
        let res_r = bulk_residual(j, w, s.amplitude(win.last).unwrap(), right(r), right(r + 1));
        prop_assert!(res_l <= 1e-12, "left residual {res_l}");
        prop_assert!(res_r <= 1e-12, "right residual {res_r}");
    }
}

/// Golden-section minimisation of |t| from the direct solver on `[lo, hi]`.
fn min_abs_t(model: &ScatteringModel, lo: f64, hi: f64) -> f64 {
    let abs_t = |w: f64| {
        solve_scattering(model, w)
            .map(|s| s.t.norm())
            .unwrap_or(f64::INFINITY)
    };
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut best = abs_t(lo).min(abs_t(hi));
    for _ in 0..80 {
        let (fc, fd) = (abs_t(c), abs_t(d));
        best = best.min(fc).min(fd);
        if fc < fd {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    best
}

#[test]
fn direct_solver_finds_every_reflection_root() {
    let models = [
        build_model_a(0.5, 0.3, 0.5, 0.0).unwrap(),
        build_model_a(0.5, 0.3, 0.5, 0.1).unwrap(),
        build_model_a(0.5, 0.3, 0.5, 0.17).unwrap(),
        build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.0, 0.0, 0.0).unwrap(),
        build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.0, 0.0, 0.2).unwrap(),
        build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.1).unwrap(),
    ];
    let mut checked = 0;
    for m in &models {
        for root in resonances(m)
            .unwrap()
            .perfect_reflection
            .iter()
            .filter(|r| r.in_band)
        {
            let best = min_abs_t(m, root.omega - 1e-6, root.omega + 1e-6);
            assert!(
                best <= 1e-8,
                "{:?} root {}: min |t| = {best:e}",
                m.variant(),
                root.omega
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 9);
}

#[test]
fn direct_solver_matches_closed_form_examples() {
    let b = build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.0).unwrap();
    let s = solve_scattering(&b, 0.5).unwrap();
    assert!((s.t - 1.0).norm() <= 1e-12 && s.r.norm() <= 1e-12);

    let a = build_model_a(0.5, 0.3, 0.5, 0.1).unwrap();
    let root = 0.5 - (0.09 - 0.0056f64.sqrt()) / 0.5;
    assert!((root - 0.469_666_2).abs() < 1e-7);
    assert!(solve_scattering(&a, root).unwrap().t.norm() <= 1e-10);

    let c = build_model_c(0.5, 0.3, 0.2, 0.1).unwrap();
    let s = solve_scattering(&c, 0.2).unwrap();
    assert!((s.transmission - 2.025_316_455_696_205).abs() <= 1e-9);
}

#[test]
fn bound_state_in_continuum_is_reported() {
    let a = build_model_a(0.5, 0.3, 0.5, 0.0).unwrap();
    match solve_scattering(&a, 0.5) {
        Err(Error::SingularSystem {
            nearest_level: Some(level),
            ..
        }) => assert!((level - 0.5).norm() < 1e-12),
        other => panic!("expected a singular system, got {other:?}"),
    }
}
