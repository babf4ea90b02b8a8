//! Frequency scans over the band, scattering-phase unwrapping, detection of
//! ±π phase jumps at transmission zeros, and flux-conservation audits.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{self, SampleFlag};
use crate::error::{Error, Result};
use crate::model::{ModelParams, ScatteringModel, Variant};
use crate::oracle;

pub const DEFAULT_STEPS: usize = 2001;

/// Relative distance kept from the band edges by default grids.
pub const EDGE_MARGIN: f64 = 1e-6;

/// A step counts as a jump candidate when the phase moves more than this.
pub const JUMP_PHASE_THRESHOLD: f64 = PI / 2.0;

/// ...and |t| dips below this fraction of its maximum inside the step.
pub const JUMP_DIP_FRACTION: f64 = 1e-3;

/// Model parameter that can be stepped as a secondary sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "J_perp")]
    JPerp,
    #[serde(rename = "J_par")]
    JPar,
    #[serde(rename = "J1")]
    J1,
    #[serde(rename = "J2")]
    J2,
    #[serde(rename = "E_d1")]
    Ed1,
    #[serde(rename = "E_d2")]
    Ed2,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Gamma => "gamma",
            Axis::JPerp => "J_perp",
            Axis::JPar => "J_par",
            Axis::J1 => "J1",
            Axis::J2 => "J2",
            Axis::Ed1 => "E_d1",
            Axis::Ed2 => "E_d2",
        }
    }

    /// Rebuilds `model` with this parameter set to `value`. On variant B,
    /// `gamma` sets the balanced pair `gamma1 = -gamma2 = value`.
    pub fn apply(&self, model: &ScatteringModel, value: f64) -> Result<ScatteringModel> {
        let unsupported = || {
            Err(Error::InvalidSweep(format!(
                "axis {self} does not apply to variant {}",
                model.variant()
            )))
        };
        match *model.params() {
            ModelParams::A(mut p) => {
                match self {
                    Axis::Gamma => p.gamma = value,
                    Axis::JPar => p.j_par = value,
                    _ => return unsupported(),
                }
                p.build()
            }
            ModelParams::B(mut p) => {
                match self {
                    Axis::Gamma => (p.gamma1, p.gamma2) = (value, -value),
                    Axis::JPerp => p.j_perp = value,
                    Axis::JPar => (p.j1, p.j2) = (value, value),
                    Axis::J1 => p.j1 = value,
                    Axis::J2 => p.j2 = value,
                    Axis::Ed1 => p.e_d1 = value,
                    Axis::Ed2 => p.e_d2 = value,
                }
                p.build()
            }
            ModelParams::C(mut p) => {
                match self {
                    Axis::Gamma => p.gamma = value,
                    Axis::JPerp => p.j_perp = value,
                    _ => return unsupported(),
                }
                p.build()
            }
            ModelParams::Generic => unsupported(),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gamma" => Axis::Gamma,
            "J_perp" | "J-perp" | "j_perp" => Axis::JPerp,
            "J_par" | "J-par" | "j_par" => Axis::JPar,
            "J1" | "j1" => Axis::J1,
            "J2" | "j2" => Axis::J2,
            "E_d1" | "Ed1" | "e_d1" => Axis::Ed1,
            "E_d2" | "Ed2" | "e_d2" => Axis::Ed2,
            other => return Err(Error::InvalidSweep(format!("unknown sweep axis {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisValues {
    pub axis: Axis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: ScatteringModel,
    pub omega_min: f64,
    pub omega_max: f64,
    pub steps: usize,
    pub use_oracle: bool,
    pub vary: Option<AxisValues>,
}

impl SweepSpec {
    /// Full band minus a relative margin of [`EDGE_MARGIN`], [`DEFAULT_STEPS`] points.
    pub fn new(model: ScatteringModel) -> Self {
        let edge = model.lead().band_edge() * (1.0 - EDGE_MARGIN);
        Self {
            model,
            omega_min: -edge,
            omega_max: edge,
            steps: DEFAULT_STEPS,
            use_oracle: false,
            vary: None,
        }
    }

    pub fn range(mut self, omega_min: f64, omega_max: f64) -> Self {
        self.omega_min = omega_min;
        self.omega_max = omega_max;
        self
    }

    pub fn steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_oracle(mut self, use_oracle: bool) -> Self {
        self.use_oracle = use_oracle;
        self
    }

    pub fn vary(mut self, axis: Axis, values: Vec<f64>) -> Self {
        self.vary = Some(AxisValues { axis, values });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        let lead = self.model.lead();
        if !(lead.in_band(self.omega_min) && lead.in_band(self.omega_max)) {
            return Err(Error::InvalidSweep(format!(
                "range [{}, {}] must lie strictly inside the band (-{2}, {2})",
                self.omega_min,
                self.omega_max,
                lead.band_edge()
            )));
        }
        if self.omega_min >= self.omega_max {
            return Err(Error::InvalidSweep(
                "omega_min must be below omega_max".into(),
            ));
        }
        if let Some(v) = &self.vary {
            if v.values.is_empty() {
                return Err(Error::InvalidSweep(format!(
                    "axis {} has no values",
                    v.axis
                )));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        linear_grid(self.omega_min, self.omega_max, self.steps)
    }
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let span = max - min;
            let last = (steps - 1) as f64;
            (0..steps)
                .map(|i| {
                    if i + 1 == steps {
                        max
                    } else {
                        min + span * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowFlag {
    Pole,
    Removable,
    /// The reference solver found the lattice equations singular.
    Singular,
    /// Neither route produced a value.
    Failed,
}

impl RowFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowFlag::Pole => "pole",
            RowFlag::Removable => "removable",
            RowFlag::Singular => "singular",
            RowFlag::Failed => "failed",
        }
    }
}

impl From<SampleFlag> for RowFlag {
    fn from(f: SampleFlag) -> Self {
        match f {
            SampleFlag::Pole => RowFlag::Pole,
            SampleFlag::Removable => RowFlag::Removable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub omega: f64,
    pub k: f64,
    #[serde(rename = "T")]
    pub transmission: f64,
    #[serde(rename = "R")]
    pub reflection: f64,
    pub sum: f64,
    pub phase_wrapped: f64,
    pub phase_unwrapped: f64,
    pub flags: Vec<RowFlag>,
    /// `max(|dt|, |dr|)` between closed form and reference solver.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_deviation: Option<f64>,
    #[serde(skip)]
    pub t: Complex64,
}

impl SweepRow {
    pub fn is_flagged(&self) -> bool {
        !self.flags.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.t.re.is_finite() && self.t.im.is_finite()
    }

    pub fn flag_label(&self) -> String {
        self.flags
            .iter()
            .map(RowFlag::as_str)
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseJump {
    /// Grid bracket containing the jump.
    pub omega_lo: f64,
    pub omega_hi: f64,
    /// +1 for a +π jump, -1 for -π.
    pub sign: i8,
    /// Smallest |t| inside the bracket.
    pub min_abs_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Analytic,
    Oracle,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    /// Secondary-axis setting this series was computed for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<(Axis, f64)>,
    pub source: Source,
    pub rows: Vec<SweepRow>,
    pub jumps: Vec<PhaseJump>,
}

impl SweepResult {
    pub fn max_transmission(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !r.is_flagged())
            .map(|r| r.transmission)
            .fold(f64::NAN, f64::max)
    }

    pub fn max_reflection(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !r.is_flagged())
            .map(|r| r.reflection)
            .fold(f64::NAN, f64::max)
    }

    pub fn min_transmission(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !r.is_flagged())
            .map(|r| r.transmission)
            .fold(f64::NAN, f64::min)
    }

    /// Largest `|R + T - 1|` over unflagged rows.
    pub fn max_conservation_deviation(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !r.is_flagged())
            .map(|r| (r.sum - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn failed_row(omega: f64, k: f64, flag: RowFlag) -> SweepRow {
    SweepRow {
        omega,
        k,
        transmission: f64::NAN,
        reflection: f64::NAN,
        sum: f64::NAN,
        phase_wrapped: f64::NAN,
        phase_unwrapped: f64::NAN,
        flags: vec![flag],
        oracle_deviation: None,
        t: Complex64::new(f64::NAN, f64::NAN),
    }
}

fn row_from(omega: f64, k: f64, t: Complex64, r: Complex64, flags: Vec<RowFlag>) -> SweepRow {
    let (tt, rr) = (t.norm_sqr(), r.norm_sqr());
    SweepRow {
        omega,
        k,
        transmission: tt,
        reflection: rr,
        sum: tt + rr,
        phase_wrapped: t.arg(),
        phase_unwrapped: f64::NAN,
        flags,
        oracle_deviation: None,
        t,
    }
}

fn evaluate_row(model: &ScatteringModel, omega: f64, use_oracle: bool) -> SweepRow {
    let k = model.lead().wavenumber(omega).unwrap_or(f64::NAN);
    if model.variant() == Variant::Generic {
        return match oracle::solve_scattering(model, omega) {
            Ok(o) => row_from(omega, k, o.t, o.r, Vec::new()),
            Err(Error::SingularSystem { .. }) => failed_row(omega, k, RowFlag::Singular),
            Err(_) => failed_row(omega, k, RowFlag::Failed),
        };
    }
    let Ok(sol) = analytic::evaluate(model, omega) else {
        return failed_row(omega, k, RowFlag::Failed);
    };
    let mut row = row_from(
        omega,
        k,
        sol.t,
        sol.r,
        sol.flag.map(RowFlag::from).into_iter().collect(),
    );
    if use_oracle {
        match oracle::solve_scattering(model, omega) {
            Ok(o) => row.oracle_deviation = Some((o.t - sol.t).norm().max((o.r - sol.r).norm())),
            Err(_) => row.flags.push(RowFlag::Singular),
        }
    }
    row
}

/// Wraps an angle difference into `(-π, π]`.
pub fn wrap_phase(d: f64) -> f64 {
    let w = (d + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

/// Minimal-increment continuation of `phase_wrapped` into `phase_unwrapped`.
/// Rows without a finite amplitude keep NaN and are stepped over.
pub fn unwrap_rows(rows: &mut [SweepRow]) {
    let mut prev: Option<(f64, f64)> = None;
    for row in rows.iter_mut() {
        if !row.is_finite() {
            continue;
        }
        let unwrapped = match prev {
            None => row.phase_wrapped,
            Some((w, u)) => u + wrap_phase(row.phase_wrapped - w),
        };
        row.phase_unwrapped = unwrapped;
        prev = Some((row.phase_wrapped, unwrapped));
    }
}

/// Distance from the origin to the segment joining `a` and `b`.
fn segment_min_norm(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let s = (-(a * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * s).norm()
}

/// Smallest |q| on `[x1, x2]`, where `q` is the quadratic through the three
/// samples `(x0, y0)`, `(x1, y1)`, `(x2, y2)` (`x0` may lie on either side).
fn quadratic_min_norm(samples: [(f64, Complex64); 3], lo: f64, hi: f64) -> f64 {
    let [(x0, y0), (x1, y1), (x2, y2)] = samples;
    let q = |x: f64| {
        y0 * ((x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2)))
            + y1 * ((x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2)))
            + y2 * ((x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1)))
    };
    const N: usize = 128;
    let at = |i: usize| lo + (hi - lo) * i as f64 / N as f64;
    let best = (0..=N)
        .min_by(|&a, &b| q(at(a)).norm().total_cmp(&q(at(b)).norm()))
        .unwrap_or(0);
    // golden-section refinement around the best sample
    let (mut a, mut b) = (at(best.saturating_sub(1)), at((best + 1).min(N)));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..60 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if q(c).norm() < q(d).norm() {
            b = d;
        } else {
            a = c;
        }
    }
    q(at(best)).norm().min(q((a + b) / 2.0).norm())
}

/// Finds ±π jumps of the scattering phase.
///
/// A step between consecutive rows is a jump when the phase changes by more
/// than π/2 and |t| passes below `1e-3 · max|t|` inside it. Within a step the
/// dip is estimated from the complex amplitudes themselves: the straight line
/// between the two samples and the quadratics through them and either
/// neighbour, which is how a transmission zero shows up between grid points.
/// Rows where |t| vanishes outright carry no phase and are bridged.
pub fn detect_phase_jumps(rows: &[SweepRow]) -> Vec<PhaseJump> {
    let max_t = rows
        .iter()
        .filter(|r| r.is_finite())
        .map(|r| r.t.norm())
        .fold(0.0, f64::max);
    if max_t == 0.0 {
        return Vec::new();
    }
    let has_phase = |r: &SweepRow| r.is_finite() && r.t.norm() > 1e-12 * max_t;

    let mut jumps = Vec::new();
    let mut prev: Option<usize> = None;
    for (i, row) in rows.iter().enumerate() {
        if !has_phase(row) {
            continue;
        }
        if let Some(p) = prev {
            let a = &rows[p];
            let delta = wrap_phase(row.phase_wrapped - a.phase_wrapped);
            if delta.abs() > JUMP_PHASE_THRESHOLD {
                let dip = if i > p + 1 {
                    rows[p + 1..i]
                        .iter()
                        .map(|r| r.t.norm())
                        .filter(|n| n.is_finite())
                        .fold(0.0, f64::min)
                } else {
                    let mut dip = segment_min_norm(a.t, row.t);
                    let outer = [p.checked_sub(1), Some(i + 1)];
                    for n in outer
                        .into_iter()
                        .flatten()
                        .filter(|&n| n < rows.len() && has_phase(&rows[n]))
                    {
                        let fit = [
                            (rows[n].omega, rows[n].t),
                            (a.omega, a.t),
                            (row.omega, row.t),
                        ];
                        dip = dip.min(quadratic_min_norm(fit, a.omega, row.omega));
                    }
                    dip
                };
                if dip < JUMP_DIP_FRACTION * max_t {
                    jumps.push(PhaseJump {
                        omega_lo: a.omega,
                        omega_hi: row.omega,
                        sign: if delta > 0.0 { 1 } else { -1 },
                        min_abs_t: dip,
                    });
                }
            }
        }
        prev = Some(i);
    }
    jumps
}

fn source_for(model: &ScatteringModel, use_oracle: bool) -> Source {
    match (model.variant(), use_oracle) {
        (Variant::Generic, _) => Source::Oracle,
        (_, true) => Source::Both,
        (_, false) => Source::Analytic,
    }
}

/// Sweeps `spec.model` over the grid. Per-point failures become row flags.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    Ok(sweep_model(&spec.model, &spec.grid(), spec.use_oracle))
}

/// One [`SweepResult`] per value of the secondary axis, or a single one
/// when no axis is set.
pub fn run_axis_sweep(spec: &SweepSpec) -> Result<Vec<SweepResult>> {
    spec.validate()?;
    let grid = spec.grid();
    match &spec.vary {
        None => Ok(vec![sweep_model(&spec.model, &grid, spec.use_oracle)]),
        Some(v) => v
            .values
            .iter()
            .map(|&value| {
                let model = v.axis.apply(&spec.model, value)?;
                let mut res = sweep_model(&model, &grid, spec.use_oracle);
                res.axis = Some((v.axis, value));
                Ok(res)
            })
            .collect(),
    }
}

fn sweep_model(model: &ScatteringModel, grid: &[f64], use_oracle: bool) -> SweepResult {
    let mut rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&w| evaluate_row(model, w, use_oracle))
        .collect();
    unwrap_rows(&mut rows);
    let jumps = detect_phase_jumps(&rows);
    SweepResult {
        axis: None,
        source: source_for(model, use_oracle),
        rows,
        jumps,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationReport {
    pub max_deviation: f64,
    pub at_omega: f64,
    /// Same statistic from the reference solver, when requested.
    pub oracle_max_deviation: Option<f64>,
    pub oracle_at_omega: Option<f64>,
    /// Grid points left out (flagged or failed).
    pub excluded: usize,
}

fn max_by_deviation(samples: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    let (dev, at) = samples.fold((-1.0, f64::NAN), |(best, at), (omega, total)| {
        let dev = (total - 1.0).abs();
        if dev > best {
            (dev, omega)
        } else {
            (best, at)
        }
    });
    (dev.max(0.0), at)
}

/// Largest `|R + T - 1|` over `omega_grid` and where it occurs.
pub fn conservation_audit(
    model: &ScatteringModel,
    omega_grid: &[f64],
    with_oracle: bool,
) -> ConservationReport {
    let oracle_totals = || -> Vec<(f64, f64)> {
        omega_grid
            .par_iter()
            .filter_map(|&w| {
                oracle::solve_scattering(model, w)
                    .ok()
                    .map(|o| (w, o.total()))
            })
            .collect()
    };
    let primary: Vec<(f64, f64)> = if model.variant() == Variant::Generic {
        oracle_totals()
    } else {
        omega_grid
            .par_iter()
            .filter_map(|&w| {
                analytic::amplitudes(model, w)
                    .ok()
                    .filter(|s| s.flag.is_none())
                    .map(|s| (w, s.total()))
            })
            .collect()
    };
    let excluded = omega_grid.len() - primary.len();
    let (max_deviation, at_omega) = max_by_deviation(primary.into_iter());
    let (oracle_max_deviation, oracle_at_omega) = if with_oracle {
        let (d, w) = max_by_deviation(oracle_totals().into_iter());
        (Some(d), Some(w))
    } else {
        (None, None)
    };
    ConservationReport {
        max_deviation,
        at_omega,
        oracle_max_deviation,
        oracle_at_omega,
        excluded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_model_a, build_model_b, build_model_c};

    fn fig3(gamma: f64) -> SweepResult {
        run_sweep(&SweepSpec::new(
            build_model_a(0.5, 0.3, 0.5, gamma).unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn grid_is_sorted_and_inside_band() {
        let spec = SweepSpec::new(build_model_a(0.5, 0.3, 0.5, 0.1).unwrap());
        let g = spec.grid();
        assert_eq!(g.len(), 2001);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g[0] > -1.0 && g[2000] < 1.0);
    }

    #[test]
    fn invalid_specs_rejected() {
        let m = build_model_a(0.5, 0.3, 0.5, 0.1).unwrap();
        assert!(run_sweep(&SweepSpec::new(m.clone()).steps(1)).is_err());
        assert!(run_sweep(&SweepSpec::new(m.clone()).range(-1.0, 0.5)).is_err());
        assert!(run_sweep(&SweepSpec::new(m.clone()).range(0.5, 0.2)).is_err());
        assert!(run_axis_sweep(&SweepSpec::new(m).vary(Axis::J1, vec![0.1])).is_err());
    }

    #[test]
    fn fig3_jump_counts() {
        let counts: Vec<usize> = [0.0, 0.1, 0.2]
            .iter()
            .map(|&g| fig3(g).jumps.len())
            .collect();
        assert_eq!(counts, vec![1, 2, 0]);
        let j = fig3(0.1).jumps;
        assert_eq!(j[0].sign, -j[1].sign);
        assert!(j[0].omega_lo <= 0.170_333_8 && 0.170_333_8 <= j[0].omega_hi);
        assert!(j[1].omega_lo <= 0.469_666_2 && 0.469_666_2 <= j[1].omega_hi);
    }

    #[test]
    fn fig2b_single_jump_at_defect_level() {
        let m = build_model_b(0.5, 0.4, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0).unwrap();
        let res = run_sweep(&SweepSpec::new(m)).unwrap();
        assert_eq!(res.jumps.len(), 1);
        assert!(res.jumps[0].omega_lo <= 0.5 && 0.5 <= res.jumps[0].omega_hi);
    }

    #[test]
    fn fig4c_jumps_follow_zeros() {
        let spec =
            SweepSpec::new(build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.0).unwrap())
                .vary(Axis::JPerp, vec![0.02, 0.1]);
        let res = run_axis_sweep(&spec).unwrap();
        assert_eq!(res[0].axis, Some((Axis::JPerp, 0.02)));
        assert!(res[0].jumps.is_empty());
        assert!(res[0].min_transmission() > 1e-6);
        assert_eq!(res[1].jumps.len(), 2);
    }

    #[test]
    fn unwrapped_phase_differs_by_whole_turns() {
        let res = fig3(0.1);
        for r in &res.rows {
            let turns = (r.phase_unwrapped - r.phase_wrapped) / (2.0 * PI);
            assert!((turns - turns.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn refinement_keeps_jumps() {
        for gamma in [0.0, 0.1, 0.2] {
            let m = build_model_a(0.5, 0.3, 0.5, gamma).unwrap();
            let coarse = run_sweep(&SweepSpec::new(m.clone()).steps(1001)).unwrap();
            let fine = run_sweep(&SweepSpec::new(m).steps(2001)).unwrap();
            assert_eq!(coarse.jumps.len(), fine.jumps.len());
            let step = 2.0 * (1.0 - EDGE_MARGIN) / 1000.0;
            for (c, f) in coarse.jumps.iter().zip(&fine.jumps) {
                assert!((c.omega_lo - f.omega_lo).abs() < step);
                assert_eq!(c.sign, f.sign);
            }
        }
    }

    #[test]
    fn pole_rows_are_flagged() {
        let m = build_model_a(0.5, 0.3, 0.5, 0.0).unwrap();
        let res = run_sweep(&SweepSpec::new(m).range(0.4, 0.6).steps(3).with_oracle(true)).unwrap();
        assert_eq!(res.rows[1].flags, vec![RowFlag::Pole, RowFlag::Singular]);
        assert!(res.rows[0].oracle_deviation.unwrap() < 1e-12);
        assert_eq!(res.source, Source::Both);
    }

    #[test]
    fn conservation() {
        let grid = linear_grid(-0.999, 0.999, 1001);
        for gamma in [0.0, 0.05, 0.18, 0.5, 0.95] {
            let a = conservation_audit(&build_model_a(0.5, 0.3, 0.5, gamma).unwrap(), &grid, false);
            assert!(
                a.max_deviation <= 1e-10,
                "A gamma={gamma}: {}",
                a.max_deviation
            );
        }
        let b = build_model_b(0.5, 0.4, 0.4, 0.5, 0.5, 0.05, -0.05, 0.1).unwrap();
        let rep = conservation_audit(&b, &grid, true);
        assert!(rep.max_deviation <= 1e-10);
        assert!(rep.oracle_max_deviation.unwrap() <= 1e-10);

        let c = conservation_audit(&build_model_c(0.5, 0.3, 0.2, 0.1).unwrap(), &grid, false);
        assert!(c.max_deviation > 0.5);
        assert!((c.at_omega - 0.2).abs() < 0.1, "{}", c.at_omega);
    }

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(PI), PI);
        assert_eq!(wrap_phase(-PI), PI);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_phase(0.1) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn segment_distance() {
        let d = segment_min_norm(Complex64::new(1.0, 0.1), Complex64::new(-1.0, 0.1));
        assert!((d - 0.1).abs() < 1e-15);
        let d = segment_min_norm(Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
        assert_eq!(d, 1.0);
    }

    #[test]
    fn quadratic_fit_finds_a_curved_zero() {
        // t(w) = w + 2i w^2 vanishes at 0; the chord from -1 to 1 stays at distance 2
        let t = |w: f64| Complex64::new(w, 2.0 * w * w);
        let chord = segment_min_norm(t(-1.0), t(1.0));
        assert!((chord - 2.0).abs() < 1e-15, "{chord}");
        let fit = [(2.0, t(2.0)), (-1.0, t(-1.0)), (1.0, t(1.0))];
        assert!(quadratic_min_norm(fit, -1.0, 1.0) < 1e-12);
    }
}
