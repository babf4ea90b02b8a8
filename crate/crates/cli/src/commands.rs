use ptfano::analytic::{evaluate, resonances};
use ptfano::oracle::{compare, solve_scattering};
use ptfano::sweep::{conservation_audit, run_axis_sweep, AxisValues, SweepResult, SweepSpec};
use ptfano::{check_pt_symmetry, Complex64, ScatteringModel, Variant};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cli::Format;
use crate::config::{Grid, Output, ResolvedModel};
use crate::error::{CliError, Result};
use crate::output::{num, open_sink, opt_num, write_json, write_text, Table};

pub const DEFAULT_VERIFY_TOL: f64 = 1e-9;
pub const DEFAULT_CONSERVATION_TOL: f64 = 1e-10;

/// Whether a checking command stayed within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn meta(command: &str, model: &ResolvedModel) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!(env!("CARGO_BIN_NAME")));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert(
        "preset".into(),
        json!(model.preset.as_ref().map(|p| p.name)),
    );
    m.insert("model".into(), json!(model.model.params()));
    m.insert(
        "pt_symmetric".into(),
        json!(check_pt_symmetry(&model.model).is_pt_symmetric),
    );
    m
}

fn sweep_spec(model: &ScatteringModel, grid: Grid) -> Result<SweepSpec> {
    let mut spec = SweepSpec::new(model.clone());
    let (lo, hi) = (
        grid.omega_min.unwrap_or(spec.omega_min),
        grid.omega_max.unwrap_or(spec.omega_max),
    );
    spec = spec.range(lo, hi);
    if let Some(steps) = grid.steps {
        spec = spec.steps(steps);
    }
    spec.validate().map_err(usage)?;
    Ok(spec)
}

fn grid_meta(spec: &SweepSpec) -> Value {
    json!({ "omega_min": spec.omega_min, "omega_max": spec.omega_max, "steps": spec.steps })
}

pub fn sweep(
    model: &ResolvedModel,
    grid: Grid,
    vary: Option<AxisValues>,
    oracle: bool,
    out: &Output,
) -> Result<Verdict> {
    let mut spec = sweep_spec(&model.model, grid)?.with_oracle(oracle);
    if let Some(v) = &vary {
        spec = spec.vary(v.axis, v.values.clone());
    }
    let results = run_axis_sweep(&spec).map_err(usage)?;
    let sink = open_sink(out.path.as_deref())?;

    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut header: Vec<&str> = Vec::new();
            if let Some(v) = &vary {
                header.push(v.axis.name());
            }
            header.extend([
                "omega",
                "k",
                "T",
                "R",
                "sum",
                "phase_wrapped",
                "phase_unwrapped",
                "flags",
            ]);
            if oracle {
                header.push("oracle_deviation");
            }
            let mut table = Table::new(sink, &header)?;
            for res in &results {
                for row in &res.rows {
                    let mut fields = Vec::with_capacity(header.len());
                    if let Some((_, value)) = res.axis {
                        fields.push(num(value));
                    }
                    fields.extend([
                        num(row.omega),
                        num(row.k),
                        num(row.transmission),
                        num(row.reflection),
                        num(row.sum),
                        num(row.phase_wrapped),
                        num(row.phase_unwrapped),
                        row.flag_label(),
                    ]);
                    if oracle {
                        fields.push(opt_num(row.oracle_deviation));
                    }
                    table.row(&fields)?;
                }
            }
            table.finish()?;
        }
        Format::Json => {
            let mut m = meta("sweep", model);
            m.insert("grid".into(), grid_meta(&spec));
            m.insert("oracle".into(), json!(oracle));
            m.insert("vary".into(), json!(vary));
            let doc = if vary.is_some() {
                let series: Vec<Value> = results.iter().map(series_json).collect();
                json!({ "meta": m, "series": series })
            } else {
                let res = &results[0];
                json!({ "meta": m, "rows": res.rows, "jumps": res.jumps })
            };
            write_json(sink, &doc)?;
        }
    }
    Ok(Verdict::Pass)
}

fn series_json(res: &SweepResult) -> Value {
    let (axis, value) = res
        .axis
        .map(|(a, v)| (Some(a.name()), Some(v)))
        .unwrap_or((None, None));
    json!({ "axis": axis, "value": value, "source": res.source, "rows": res.rows, "jumps": res.jumps })
}

#[derive(Serialize)]
struct RootRow {
    kind: &'static str,
    omega: f64,
    in_band: bool,
    degenerate: bool,
}

pub fn resonance_roots(model: &ResolvedModel, out: &Output) -> Result<Verdict> {
    if !matches!(model.model.variant(), Variant::A | Variant::B) {
        return Err(usage(
            "resonance conditions are available for models a and b only",
        ));
    }
    let set = resonances(&model.model).map_err(usage)?;
    let roots: Vec<RootRow> = set
        .perfect_reflection
        .iter()
        .map(|r| ("perfect_reflection", r))
        .chain(
            set.perfect_transmission
                .iter()
                .map(|r| ("perfect_transmission", r)),
        )
        .map(|(kind, r)| RootRow {
            kind,
            omega: r.omega,
            in_band: r.in_band,
            degenerate: r.degenerate,
        })
        .collect();
    let sink = open_sink(out.path.as_deref())?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut table = Table::new(sink, &["kind", "omega", "in_band", "degenerate"])?;
            for r in &roots {
                table.row(&[
                    r.kind.to_owned(),
                    num(r.omega),
                    r.in_band.to_string(),
                    r.degenerate.to_string(),
                ])?;
            }
            table.finish()?;
        }
        Format::Json => {
            let doc = json!({
                "meta": meta("resonances", model),
                "roots": roots,
                "critical_gamma": set.critical_gamma,
                "discriminant": set.discriminant,
            });
            write_json(sink, &doc)?;
        }
    }
    Ok(Verdict::Pass)
}

pub fn verify(
    model: &ResolvedModel,
    grid: Grid,
    tol: Option<f64>,
    out: &Output,
) -> Result<Verdict> {
    let spec = sweep_spec(&model.model, grid)?;
    if model.model.variant() == Variant::Generic {
        return Err(usage("verify needs a model with closed forms"));
    }
    let tol = tol.unwrap_or(DEFAULT_VERIFY_TOL);
    let report = compare(&model.model, &spec.grid());
    let passed =
        report.compared() > 0 && report.max_t_deviation <= tol && report.max_r_deviation <= tol;
    let verdict = if passed { Verdict::Pass } else { Verdict::Fail };
    let sink = open_sink(out.path.as_deref())?;
    match out.format {
        None => {
            let excluded = report.points.len() - report.compared();
            write_text(
                sink,
                &[
                    format!(
                        "points compared: {} ({excluded} excluded)",
                        report.compared()
                    ),
                    format!("max |t_analytic - t_oracle| = {:e}", report.max_t_deviation),
                    format!("max |r_analytic - r_oracle| = {:e}", report.max_r_deviation),
                    format!(
                        "worst omega: {}",
                        report
                            .worst_omega
                            .map(|w| w.to_string())
                            .unwrap_or_else(|| "-".into())
                    ),
                    format!(
                        "tolerance {tol:e}: {}",
                        if passed { "PASS" } else { "FAIL" }
                    ),
                ],
            )?;
        }
        Some(Format::Csv) => {
            let mut table = Table::new(sink, &["omega", "t_deviation", "r_deviation", "excluded"])?;
            for p in &report.points {
                table.row(&[
                    num(p.omega),
                    num(p.t_deviation),
                    num(p.r_deviation),
                    p.excluded.clone().unwrap_or_default(),
                ])?;
            }
            table.finish()?;
        }
        Some(Format::Json) => {
            let mut m = meta("verify", model);
            m.insert("grid".into(), grid_meta(&spec));
            m.insert("tol".into(), json!(tol));
            let doc = json!({
                "meta": m,
                "passed": passed,
                "compared": report.compared(),
                "max_t_deviation": report.max_t_deviation,
                "max_r_deviation": report.max_r_deviation,
                "worst_omega": report.worst_omega,
                "rows": report.points,
            });
            write_json(sink, &doc)?;
        }
    }
    Ok(verdict)
}

pub fn conservation(
    model: &ResolvedModel,
    grid: Grid,
    oracle: bool,
    tol: Option<f64>,
    out: &Output,
) -> Result<Verdict> {
    let spec = sweep_spec(&model.model, grid)?;
    let tol = tol.unwrap_or(DEFAULT_CONSERVATION_TOL);
    let report = conservation_audit(&model.model, &spec.grid(), oracle);
    let passed =
        report.max_deviation <= tol && report.oracle_max_deviation.is_none_or(|d| d <= tol);
    let verdict = if passed { Verdict::Pass } else { Verdict::Fail };
    let sink = open_sink(out.path.as_deref())?;
    match out.format {
        None => {
            let mut lines = vec![format!(
                "max |R + T - 1| = {:e} at omega = {} ({} points excluded)",
                report.max_deviation, report.at_omega, report.excluded
            )];
            if let (Some(d), Some(w)) = (report.oracle_max_deviation, report.oracle_at_omega) {
                lines.push(format!(
                    "direct solve: max |R + T - 1| = {d:e} at omega = {w}"
                ));
            }
            lines.push(format!(
                "tolerance {tol:e}: {}",
                if passed { "PASS" } else { "FAIL" }
            ));
            write_text(sink, &lines)?;
        }
        Some(Format::Csv) => {
            let mut table = Table::new(sink, &["source", "max_deviation", "at_omega", "excluded"])?;
            table.row(&[
                "analytic".to_owned(),
                num(report.max_deviation),
                num(report.at_omega),
                report.excluded.to_string(),
            ])?;
            if let (Some(d), Some(w)) = (report.oracle_max_deviation, report.oracle_at_omega) {
                table.row(&["oracle".to_owned(), num(d), num(w), String::new()])?;
            }
            table.finish()?;
        }
        Some(Format::Json) => {
            let mut m = meta("conservation", model);
            m.insert("grid".into(), grid_meta(&spec));
            m.insert("oracle".into(), json!(oracle));
            m.insert("tol".into(), json!(tol));
            write_json(
                sink,
                &json!({ "meta": m, "passed": passed, "report": report }),
            )?;
        }
    }
    Ok(verdict)
}

#[derive(Serialize)]
struct AmplitudeRow {
    omega: f64,
    k: f64,
    source: &'static str,
    t: [f64; 2],
    r: [f64; 2],
    b1: [f64; 2],
    b2: [f64; 2],
    #[serde(rename = "T")]
    transmission: f64,
    #[serde(rename = "R")]
    reflection: f64,
    sum: f64,
    phase: f64,
    flags: String,
}

fn parts(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn amplitudes(
    model: &ResolvedModel,
    omegas: &[f64],
    oracle: bool,
    out: &Output,
) -> Result<Verdict> {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let mut rows = Vec::new();
    for &omega in omegas {
        let s = evaluate(&model.model, omega).map_err(usage)?;
        rows.push(AmplitudeRow {
            omega,
            k: s.k,
            source: "analytic",
            t: parts(s.t),
            r: parts(s.r),
            b1: parts(s.b1),
            b2: parts(s.b2),
            transmission: s.transmission,
            reflection: s.reflection,
            sum: s.total(),
            phase: s.phase,
            flags: s.flag.map(|f| f.as_str().to_owned()).unwrap_or_default(),
        });
        if oracle {
            let row = match solve_scattering(&model.model, omega) {
                Ok(o) => AmplitudeRow {
                    omega,
                    k: o.k,
                    source: "oracle",
                    t: parts(o.t),
                    r: parts(o.r),
                    b1: parts(o.defects.first().copied().unwrap_or(nan)),
                    b2: parts(o.defects.get(1).copied().unwrap_or(nan)),
                    transmission: o.transmission,
                    reflection: o.reflection,
                    sum: o.total(),
                    phase: o.phase,
                    flags: String::new(),
                },
                Err(_) => AmplitudeRow {
                    omega,
                    k: s.k,
                    source: "oracle",
                    t: parts(nan),
                    r: parts(nan),
                    b1: parts(nan),
                    b2: parts(nan),
                    transmission: f64::NAN,
                    reflection: f64::NAN,
                    sum: f64::NAN,
                    phase: f64::NAN,
                    flags: "singular".into(),
                },
            };
            rows.push(row);
        }
    }

    let sink = open_sink(out.path.as_deref())?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = [
                "omega", "k", "source", "t_re", "t_im", "r_re", "r_im", "b1_re", "b1_im", "b2_re",
                "b2_im", "T", "R", "sum", "phase", "flags",
            ];
            let mut table = Table::new(sink, &header)?;
            for r in &rows {
                let mut fields = vec![num(r.omega), num(r.k), r.source.to_owned()];
                for z in [r.t, r.r, r.b1, r.b2] {
                    fields.extend([num(z[0]), num(z[1])]);
                }
                fields.extend([
                    num(r.transmission),
                    num(r.reflection),
                    num(r.sum),
                    num(r.phase),
                    r.flags.clone(),
                ]);
                table.row(&fields)?;
            }
            table.finish()?;
        }
        Format::Json => {
            let mut m = meta("amplitudes", model);
            m.insert("oracle".into(), json!(oracle));
            write_json(sink, &json!({ "meta": m, "rows": rows }))?;
        }
    }
    Ok(Verdict::Pass)
}
