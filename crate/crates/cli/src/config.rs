//! Merging flags, an optional JSON config file and presets into a model.

use std::fs;
use std::path::{Path, PathBuf};

use ptfano::model::{ModelA, ModelB, ModelC};
use ptfano::sweep::{Axis, AxisValues};
use ptfano::{preset, ModelParams, Preset, ScatteringModel};
use serde::Deserialize;

use crate::cli::{AxisArgs, Format, GridArgs, ModelArgs, ModelKind, OutputArgs};
use crate::error::{CliError, Result};

/// Contents of `--config`. Keys are the long flag names.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: Option<ModelKind>,
    pub preset: Option<String>,
    #[serde(rename = "J")]
    pub j: Option<f64>,
    #[serde(rename = "J-par")]
    pub j_par: Option<f64>,
    #[serde(rename = "Ed")]
    pub ed: Option<f64>,
    pub gamma: Option<f64>,
    #[serde(rename = "J-perp")]
    pub j_perp: Option<f64>,
    #[serde(rename = "J1")]
    pub j1: Option<f64>,
    #[serde(rename = "J2")]
    pub j2: Option<f64>,
    #[serde(rename = "Ed1")]
    pub ed1: Option<f64>,
    #[serde(rename = "Ed2")]
    pub ed2: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub steps: Option<usize>,
    #[serde(rename = "omega-min")]
    pub omega_min: Option<f64>,
    #[serde(rename = "omega-max")]
    pub omega_max: Option<f64>,
    pub omega: Option<Vec<f64>>,
    pub vary: Option<String>,
    pub values: Option<Vec<f64>>,
    pub oracle: Option<bool>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let err = |message: String| CliError::Config {
            path: path.to_owned(),
            message,
        };
        let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| err(e.to_string()))
    }
}

/// Model flags after folding in the config file.
#[derive(Debug, Clone, Default)]
struct Params {
    model: Option<ModelKind>,
    preset: Option<String>,
    j: Option<f64>,
    j_par: Option<f64>,
    ed: Option<f64>,
    gamma: Option<f64>,
    j_perp: Option<f64>,
    j1: Option<f64>,
    j2: Option<f64>,
    ed1: Option<f64>,
    ed2: Option<f64>,
    gamma1: Option<f64>,
    gamma2: Option<f64>,
}

impl Params {
    fn merge(flags: &ModelArgs, cfg: &ConfigFile) -> Self {
        Self {
            model: flags.model.or(cfg.model),
            preset: flags.preset.clone().or_else(|| cfg.preset.clone()),
            j: flags.j.or(cfg.j),
            j_par: flags.j_par.or(cfg.j_par),
            ed: flags.ed.or(cfg.ed),
            gamma: flags.gamma.or(cfg.gamma),
            j_perp: flags.j_perp.or(cfg.j_perp),
            j1: flags.j1.or(cfg.j1),
            j2: flags.j2.or(cfg.j2),
            ed1: flags.ed1.or(cfg.ed1),
            ed2: flags.ed2.or(cfg.ed2),
            gamma1: flags.gamma1.or(cfg.gamma1),
            gamma2: flags.gamma2.or(cfg.gamma2),
        }
    }

    /// Flags that were given, by name.
    fn given(&self) -> Vec<(&'static str, f64)> {
        [
            ("--J", self.j),
            ("--J-par", self.j_par),
            ("--Ed", self.ed),
            ("--gamma", self.gamma),
            ("--J-perp", self.j_perp),
            ("--J1", self.j1),
            ("--J2", self.j2),
            ("--Ed1", self.ed1),
            ("--Ed2", self.ed2),
            ("--gamma1", self.gamma1),
            ("--gamma2", self.gamma2),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name, v)))
        .collect()
    }
}

fn reject(given: &[(&str, f64)], kind: ModelKind, allowed: &[&str]) -> Result<()> {
    match given.iter().find(|(name, _)| !allowed.contains(name)) {
        Some((name, _)) => Err(CliError::Usage(format!(
            "{name} does not apply to model {}",
            kind_name(kind)
        ))),
        None => Ok(()),
    }
}

fn exclusive(pair: (&str, Option<f64>), split: [(&str, Option<f64>); 2]) -> Result<()> {
    if pair.1.is_some() {
        if let Some((name, _)) = split.iter().find(|(_, v)| v.is_some()) {
            return Err(CliError::Usage(format!(
                "{} and {name} cannot be combined",
                pair.0
            )));
        }
    }
    Ok(())
}

fn need(value: Option<f64>, flag: &str, kind: ModelKind) -> Result<f64> {
    value.ok_or_else(|| CliError::Usage(format!("model {} needs {flag}", kind_name(kind))))
}

pub fn kind_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::A => "a",
        ModelKind::B => "b",
        ModelKind::C => "c",
    }
}

fn kind_of(params: &ModelParams) -> Option<ModelKind> {
    match params {
        ModelParams::A(_) => Some(ModelKind::A),
        ModelParams::B(_) => Some(ModelKind::B),
        ModelParams::C(_) => Some(ModelKind::C),
        ModelParams::Generic => None,
    }
}

/// The model to run, plus the preset it started from.
#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub model: ScatteringModel,
    pub preset: Option<Preset>,
    /// Parameters overridden on top of the preset, by flag name.
    pub overrides: Vec<&'static str>,
}

pub fn resolve_model(flags: &ModelArgs, cfg: &ConfigFile) -> Result<ResolvedModel> {
    let p = Params::merge(flags, cfg);
    let base = match &p.preset {
        Some(name) => Some(preset(name).map_err(|e| CliError::Usage(e.to_string()))?),
        None => None,
    };
    let base_kind = base.as_ref().and_then(|b| kind_of(b.model.params()));
    let kind = match (p.model, base_kind) {
        (Some(k), Some(b)) if k != b => {
            return Err(CliError::Usage(format!(
                "--model {} conflicts with preset {} (model {})",
                kind_name(k),
                p.preset.as_deref().unwrap_or_default(),
                kind_name(b)
            )))
        }
        (Some(k), _) | (None, Some(k)) => k,
        (None, None) => {
            return Err(CliError::Usage(
                "either --model or --preset is required".into(),
            ))
        }
    };
    let given = p.given();
    let base_params = base.as_ref().map(|b| *b.model.params());

    let model = match kind {
        ModelKind::A => {
            reject(&given, kind, &["--J", "--J-par", "--Ed", "--gamma"])?;
            let b = match base_params {
                Some(ModelParams::A(a)) => Some(a),
                _ => None,
            };
            ModelA {
                hopping: need(p.j.or(b.map(|b| b.hopping)), "--J", kind)?,
                j_par: need(p.j_par.or(b.map(|b| b.j_par)), "--J-par", kind)?,
                e_d: need(p.ed.or(b.map(|b| b.e_d)), "--Ed", kind)?,
                gamma: p.gamma.or(b.map(|b| b.gamma)).unwrap_or(0.0),
            }
            .build()?
        }
        ModelKind::B => {
            exclusive(("--J-par", p.j_par), [("--J1", p.j1), ("--J2", p.j2)])?;
            exclusive(("--Ed", p.ed), [("--Ed1", p.ed1), ("--Ed2", p.ed2)])?;
            exclusive(
                ("--gamma", p.gamma),
                [("--gamma1", p.gamma1), ("--gamma2", p.gamma2)],
            )?;
            let b = match base_params {
                Some(ModelParams::B(b)) => Some(b),
                _ => None,
            };
            let j1 = p.j_par.or(p.j1).or(b.map(|b| b.j1));
            let j2 = p.j_par.or(p.j2).or(b.map(|b| b.j2));
            let e1 = p.ed.or(p.ed1).or(b.map(|b| b.e_d1));
            let e2 = p.ed.or(p.ed2).or(b.map(|b| b.e_d2));
            let g1 = p.gamma.or(p.gamma1).or(b.map(|b| b.gamma1)).unwrap_or(0.0);
            let g2 = p
                .gamma
                .map(|g| -g)
                .or(p.gamma2)
                .or(b.map(|b| b.gamma2))
                .unwrap_or(0.0);
            ModelB {
                hopping: need(p.j.or(b.map(|b| b.hopping)), "--J", kind)?,
                j1: need(j1, "--J-par or --J1", kind)?,
                j2: need(j2, "--J-par or --J2", kind)?,
                e_d1: need(e1, "--Ed or --Ed1", kind)?,
                e_d2: need(e2, "--Ed or --Ed2", kind)?,
                gamma1: g1,
                gamma2: g2,
                j_perp: p.j_perp.or(b.map(|b| b.j_perp)).unwrap_or(0.0),
            }
            .build()?
        }
        ModelKind::C => {
            reject(&given, kind, &["--J", "--J-perp", "--Ed", "--gamma"])?;
            let b = match base_params {
                Some(ModelParams::C(c)) => Some(c),
                _ => None,
            };
            ModelC {
                hopping: need(p.j.or(b.map(|b| b.hopping)), "--J", kind)?,
                j_perp: need(p.j_perp.or(b.map(|b| b.j_perp)), "--J-perp", kind)?,
                e_d: need(p.ed.or(b.map(|b| b.e_d)), "--Ed", kind)?,
                gamma: p.gamma.or(b.map(|b| b.gamma)).unwrap_or(0.0),
            }
            .build()?
        }
    };
    Ok(ResolvedModel {
        model,
        preset: base,
        overrides: given.iter().map(|(n, _)| *n).collect(),
    })
}

/// Flags that set the parameter a sweep axis steps.
fn axis_flags(axis: Axis) -> &'static [&'static str] {
    match axis {
        Axis::Gamma => &["--gamma", "--gamma1", "--gamma2"],
        Axis::JPerp => &["--J-perp"],
        Axis::JPar => &["--J-par", "--J1", "--J2"],
        Axis::J1 => &["--J-par", "--J1"],
        Axis::J2 => &["--J-par", "--J2"],
        Axis::Ed1 => &["--Ed", "--Ed1"],
        Axis::Ed2 => &["--Ed", "--Ed2"],
    }
}

/// Secondary axis: explicit `--vary/--values`, else the preset's own axis
/// unless its parameter was overridden.
pub fn resolve_axis(
    flags: &AxisArgs,
    cfg: &ConfigFile,
    model: &ResolvedModel,
) -> Result<Option<AxisValues>> {
    let vary = flags.vary.clone().or_else(|| cfg.vary.clone());
    let values = flags.values.clone().or_else(|| cfg.values.clone());
    match (vary, values) {
        (Some(name), Some(values)) => {
            let axis: Axis = name
                .parse()
                .map_err(|e: ptfano::Error| CliError::Usage(e.to_string()))?;
            if values.is_empty() {
                return Err(CliError::Usage("--values needs at least one value".into()));
            }
            axis.apply(&model.model, values[0])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Some(AxisValues { axis, values }))
        }
        (Some(_), None) => Err(CliError::Usage("--vary needs --values".into())),
        (None, Some(_)) => Err(CliError::Usage("--values needs --vary".into())),
        (None, None) => Ok(model
            .preset
            .as_ref()
            .and_then(|p| p.vary.clone())
            .filter(|v| {
                !axis_flags(v.axis)
                    .iter()
                    .any(|f| model.overrides.contains(f))
            })),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub steps: Option<usize>,
}

pub fn resolve_grid(flags: &GridArgs, cfg: &ConfigFile) -> Grid {
    Grid {
        omega_min: flags.omega_min.or(cfg.omega_min),
        omega_max: flags.omega_max.or(cfg.omega_max),
        steps: flags.steps.or(cfg.steps),
    }
}

pub struct Output {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

pub fn resolve_output(flags: &OutputArgs, cfg: &ConfigFile) -> Output {
    Output {
        format: flags.format.or(cfg.format),
        path: flags.output.clone().or_else(|| cfg.output.clone()),
    }
}
