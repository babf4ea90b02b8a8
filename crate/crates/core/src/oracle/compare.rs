use serde::Serialize;

use super::system::solve_scattering;
use crate::analytic::amplitudes;
use crate::model::ScatteringModel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonPoint {
    pub omega: f64,
    pub t_deviation: f64,
    pub r_deviation: f64,
    /// Set when the point is excluded from the maxima.
    pub excluded: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub points: Vec<ComparisonPoint>,
    pub max_t_deviation: f64,
    pub max_r_deviation: f64,
    /// Frequency of the largest deviation in either amplitude.
    pub worst_omega: Option<f64>,
}

impl ComparisonReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_t_deviation.max(self.max_r_deviation)
    }

    pub fn compared(&self) -> usize {
        self.points.iter().filter(|p| p.excluded.is_none()).count()
    }
}

/// Closed-form amplitudes against the direct solve, point by point. Flagged
/// pole or removable samples and points where either side fails are listed
/// but left out of the maxima.
pub fn compare(model: &ScatteringModel, omega_grid: &[f64]) -> ComparisonReport {
    let mut report = ComparisonReport {
        points: Vec::with_capacity(omega_grid.len()),
        max_t_deviation: 0.0,
        max_r_deviation: 0.0,
        worst_omega: None,
    };
    let mut worst = -1.0;
    for &omega in omega_grid {
        let analytic = amplitudes(model, omega);
        let oracle = solve_scattering(model, omega);
        let point = match (analytic, oracle) {
            (Ok(a), Ok(o)) => {
                let (dt, dr) = ((a.t - o.t).norm(), (a.r - o.r).norm());
                let excluded = a.flag.map(|f| f.as_str().to_owned());
                if excluded.is_none() {
                    report.max_t_deviation = report.max_t_deviation.max(dt);
                    report.max_r_deviation = report.max_r_deviation.max(dr);
                    if dt.max(dr) > worst {
                        worst = dt.max(dr);
                        report.worst_omega = Some(omega);
                    }
                }
                ComparisonPoint {
                    omega,
                    t_deviation: dt,
                    r_deviation: dr,
                    excluded,
                }
            }
            (Err(e), _) | (_, Err(e)) => ComparisonPoint {
                omega,
                t_deviation: f64::NAN,
                r_deviation: f64::NAN,
                excluded: Some(e.to_string()),
            },
        };
        report.points.push(point);
    }
    report
}
