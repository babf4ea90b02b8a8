//! Benchmark fixtures shared by the criterion targets.

use ptfano::{build_model_a, build_model_b, build_model_c, ScatteringModel};

/// The figure parameter sets used across the benchmarks.
pub fn fixtures() -> Vec<(&'static str, ScatteringModel)> {
    vec![
        (
            "model_a",
            build_model_a(0.5, 0.3, 0.5, 0.1).expect("valid model"),
        ),
        (
            "model_b_pt",
            build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.1).expect("valid model"),
        ),
        (
            "model_b_fig5d",
            build_model_b(0.5, 0.4, 0.6, 0.4, -0.5, 0.05, -0.15, 0.0).expect("valid model"),
        ),
        (
            "model_c",
            build_model_c(0.5, 0.3, 0.2, 0.1).expect("valid model"),
        ),
    ]
}
