//! Lattice scattering models: an infinite tight-binding chain with a block of
//! side-coupled defect sites attached to it.
//!
//! Three closed-form topologies are provided through builders:
//!
//! * variant A: two defects, each coupled to chain sites 0 and 1;
//! * variant B: two defects coupled to site 0 only, with an optional link
//!   between the defects;
//! * variant C: one defect on site 0, the other on site 1, no link.
//!
//! Arbitrary defect graphs can be assembled with [`ScatteringModel::generic`];
//! those are only solvable through the numerical oracle.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute tolerance used when comparing user-supplied parameters for the
/// PT-symmetry predicate.
pub const PT_TOLERANCE: f64 = 1e-12;

/// Wavenumber of a propagating chain mode, `omega = 2 J cos k`, with
/// `k` in `(0, pi)`.
///
/// The band edges are excluded since `sin k` vanishes there.
pub fn wavenumber(hopping: f64, omega: f64) -> Result<f64> {
    if hopping == 0.0 || !hopping.is_finite() {
        return Err(Error::InvalidModel(format!(
            "chain hopping must be finite and nonzero, got {hopping}"
        )));
    }
    let edge = 2.0 * hopping.abs();
    if !omega.is_finite() || omega.abs() >= edge {
        return Err(Error::OutOfBand {
            omega,
            band_edge: edge,
        });
    }
    Ok((omega / (2.0 * hopping)).acos())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainLead {
    hopping: f64,
}

impl ChainLead {
    pub fn new(hopping: f64) -> Result<Self> {
        if hopping == 0.0 || !hopping.is_finite() {
            return Err(Error::InvalidModel(format!(
                "chain hopping must be finite and nonzero, got {hopping}"
            )));
        }
        Ok(Self { hopping })
    }

    pub fn hopping(&self) -> f64 {
        self.hopping
    }

    /// Upper edge `2|J|` of the propagating band.
    pub fn band_edge(&self) -> f64 {
        2.0 * self.hopping.abs()
    }

    pub fn in_band(&self, omega: f64) -> bool {
        omega.is_finite() && omega.abs() < self.band_edge()
    }

    pub fn wavenumber(&self, omega: f64) -> Result<f64> {
        wavenumber(self.hopping, omega)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefectSite {
    pub label: String,
    pub onsite: Complex64,
}

/// Hermitian link between two defect sites, indices into [`DefectBlock::sites`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InternalCoupling {
    pub a: usize,
    pub b: usize,
    pub value: f64,
}

/// Hermitian link between a defect site and chain site `site`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Attachment {
    pub defect: usize,
    pub site: i64,
    pub coupling: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct DefectBlock {
    pub sites: Vec<DefectSite>,
    pub internal: Vec<InternalCoupling>,
    pub attachments: Vec<Attachment>,
}

impl DefectBlock {
    fn validate(&self) -> Result<()> {
        let n = self.sites.len();
        for s in &self.sites {
            if !(s.onsite.re.is_finite() && s.onsite.im.is_finite()) {
                return Err(Error::InvalidModel(format!(
                    "non-finite on-site energy on {}",
                    s.label
                )));
            }
        }
        for c in &self.internal {
            if c.a >= n || c.b >= n {
                return Err(Error::InvalidModel(format!(
                    "internal coupling references missing defect ({}, {})",
                    c.a, c.b
                )));
            }
            if c.a == c.b {
                return Err(Error::InvalidModel(
                    "internal coupling must join two distinct defects".into(),
                ));
            }
            if !c.value.is_finite() {
                return Err(Error::InvalidModel("non-finite internal coupling".into()));
            }
        }
        for a in &self.attachments {
            if a.defect >= n {
                return Err(Error::InvalidModel(format!(
                    "attachment references missing defect {}",
                    a.defect
                )));
            }
            if !a.coupling.is_finite() {
                return Err(Error::InvalidModel("non-finite attachment coupling".into()));
            }
        }
        Ok(())
    }

    /// Smallest and largest chain index touched by an attachment.
    pub fn attachment_span(&self) -> Option<(i64, i64)> {
        let min = self.attachments.iter().map(|a| a.site).min()?;
        let max = self.attachments.iter().map(|a| a.site).max()?;
        Some((min, max))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    A,
    B,
    C,
    Generic,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A => "A",
            Variant::B => "B",
            Variant::C => "C",
            Variant::Generic => "generic",
        })
    }
}

/// Two defects at `E_d ± i gamma`, both coupled to chain sites 0 and 1 by `j_par`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelA {
    pub hopping: f64,
    pub j_par: f64,
    pub e_d: f64,
    pub gamma: f64,
}

/// Two defects coupled to chain site 0 by `j1`, `j2`, linked to each other by
/// `j_perp`. Gains are stored as given: `d2` sits at `e_d2 + i gamma2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelB {
    pub hopping: f64,
    pub j1: f64,
    pub j2: f64,
    pub e_d1: f64,
    pub e_d2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub j_perp: f64,
}

/// Defect `E_d + i gamma` on site 0 and `E_d - i gamma` on site 1, both with coupling `j_perp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelC {
    pub hopping: f64,
    pub j_perp: f64,
    pub e_d: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant")]
pub enum ModelParams {
    A(ModelA),
    B(ModelB),
    C(ModelC),
    Generic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatteringModel {
    lead: ChainLead,
    defects: DefectBlock,
    params: ModelParams,
}

fn check_finite(values: &[(&str, f64)]) -> Result<()> {
    for (name, v) in values {
        if !v.is_finite() {
            return Err(Error::InvalidModel(format!(
                "{name} must be finite, got {v}"
            )));
        }
    }
    Ok(())
}

fn site(label: &str, re: f64, im: f64) -> DefectSite {
    DefectSite {
        label: label.to_owned(),
        onsite: Complex64::new(re, im),
    }
}

impl ModelA {
    pub fn build(self) -> Result<ScatteringModel> {
        let lead = ChainLead::new(self.hopping)?;
        check_finite(&[
            ("J_par", self.j_par),
            ("E_d", self.e_d),
            ("gamma", self.gamma),
        ])?;
        let defects = DefectBlock {
            sites: vec![
                site("d1", self.e_d, self.gamma),
                site("d2", self.e_d, -self.gamma),
            ],
            internal: Vec::new(),
            attachments: [(0, 0), (0, 1), (1, 0), (1, 1)]
                .into_iter()
                .map(|(defect, site)| Attachment {
                    defect,
                    site,
                    coupling: self.j_par,
                })
                .collect(),
        };
        Ok(ScatteringModel {
            lead,
            defects,
            params: ModelParams::A(self),
        })
    }
}

impl ModelB {
    pub fn build(self) -> Result<ScatteringModel> {
        let lead = ChainLead::new(self.hopping)?;
        check_finite(&[
            ("J1", self.j1),
            ("J2", self.j2),
            ("E_d1", self.e_d1),
            ("E_d2", self.e_d2),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("J_perp", self.j_perp),
        ])?;
        let defects = DefectBlock {
            sites: vec![
                site("d1", self.e_d1, self.gamma1),
                site("d2", self.e_d2, self.gamma2),
            ],
            internal: vec![InternalCoupling {
                a: 0,
                b: 1,
                value: self.j_perp,
            }],
            attachments: vec![
                Attachment {
                    defect: 0,
                    site: 0,
                    coupling: self.j1,
                },
                Attachment {
                    defect: 1,
                    site: 0,
                    coupling: self.j2,
                },
            ],
        };
        Ok(ScatteringModel {
            lead,
            defects,
            params: ModelParams::B(self),
        })
    }
}

impl ModelC {
    pub fn build(self) -> Result<ScatteringModel> {
        let lead = ChainLead::new(self.hopping)?;
        check_finite(&[
            ("J_perp", self.j_perp),
            ("E_d", self.e_d),
            ("gamma", self.gamma),
        ])?;
        let defects = DefectBlock {
            sites: vec![
                site("d1", self.e_d, self.gamma),
                site("d2", self.e_d, -self.gamma),
            ],
            internal: Vec::new(),
            attachments: vec![
                Attachment {
                    defect: 0,
                    site: 0,
                    coupling: self.j_perp,
                },
                Attachment {
                    defect: 1,
                    site: 1,
                    coupling: self.j_perp,
                },
            ],
        };
        Ok(ScatteringModel {
            lead,
            defects,
            params: ModelParams::C(self),
        })
    }
}

pub fn build_model_a(hopping: f64, j_par: f64, e_d: f64, gamma: f64) -> Result<ScatteringModel> {
    ModelA {
        hopping,
        j_par,
        e_d,
        gamma,
    }
    .build()
}

#[allow(clippy::too_many_arguments)]
pub fn build_model_b(
    hopping: f64,
    j1: f64,
    j2: f64,
    e_d1: f64,
    e_d2: f64,
    gamma1: f64,
    gamma2: f64,
    j_perp: f64,
) -> Result<ScatteringModel> {
    ModelB {
        hopping,
        j1,
        j2,
        e_d1,
        e_d2,
        gamma1,
        gamma2,
        j_perp,
    }
    .build()
}

pub fn build_model_c(hopping: f64, j_perp: f64, e_d: f64, gamma: f64) -> Result<ScatteringModel> {
    ModelC {
        hopping,
        j_perp,
        e_d,
        gamma,
    }
    .build()
}

impl ScatteringModel {
    /// Arbitrary defect graph. Only the numerical oracle can solve these.
    pub fn generic(lead: ChainLead, defects: DefectBlock) -> Result<Self> {
        defects.validate()?;
        Ok(Self {
            lead,
            defects,
            params: ModelParams::Generic,
        })
    }

    pub fn lead(&self) -> &ChainLead {
        &self.lead
    }

    pub fn defects(&self) -> &DefectBlock {
        &self.defects
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        match self.params {
            ModelParams::A(_) => Variant::A,
            ModelParams::B(_) => Variant::B,
            ModelParams::C(_) => Variant::C,
            ModelParams::Generic => Variant::Generic,
        }
    }

    pub fn as_a(&self) -> Result<&ModelA> {
        match &self.params {
            ModelParams::A(p) => Ok(p),
            _ => Err(Error::VariantMismatch {
                expected: Variant::A,
                found: self.variant(),
            }),
        }
    }

    pub fn as_b(&self) -> Result<&ModelB> {
        match &self.params {
            ModelParams::B(p) => Ok(p),
            _ => Err(Error::VariantMismatch {
                expected: Variant::B,
                found: self.variant(),
            }),
        }
    }

    pub fn as_c(&self) -> Result<&ModelC> {
        match &self.params {
            ModelParams::C(p) => Ok(p),
            _ => Err(Error::VariantMismatch {
                expected: Variant::C,
                found: self.variant(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PtSymmetryReport {
    pub is_pt_symmetric: bool,
    pub violated_conditions: Vec<String>,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PT_TOLERANCE
}

/// Evaluates the PT-symmetry conditions appropriate to the model's topology.
///
/// Variants A and C are checked on the defect block itself: the two on-site
/// energies must be complex conjugates and the couplings equal. Variant B
/// needs `J1 = J2`, `E_d1 = E_d2` and `gamma1 = -gamma2`. No parity operator
/// is assumed for generic graphs, which report `undetermined`.
pub fn check_pt_symmetry(model: &ScatteringModel) -> PtSymmetryReport {
    let mut violated = Vec::new();
    match model.params {
        ModelParams::A(_) | ModelParams::C(_) => {
            let sites = &model.defects.sites;
            let (e1, e2) = (sites[0].onsite, sites[1].onsite);
            if !(close(e1.re, e2.re) && close(e1.im, -e2.im)) {
                violated.push("conjugate-onsite".to_owned());
            }
            let first = model.defects.attachments[0].coupling;
            if !model
                .defects
                .attachments
                .iter()
                .all(|a| close(a.coupling, first))
            {
                violated.push("coupling-balance".to_owned());
            }
        }
        ModelParams::B(p) => {
            if !close(p.j1, p.j2) {
                violated.push("coupling-balance".to_owned());
            }
            if !close(p.e_d1, p.e_d2) {
                violated.push("energy-balance".to_owned());
            }
            if !close(p.gamma1, -p.gamma2) {
                violated.push("gamma-balance".to_owned());
            }
        }
        ModelParams::Generic => violated.push("undetermined".to_owned()),
    }
    PtSymmetryReport {
        is_pt_symmetric: violated.is_empty(),
        violated_conditions: violated,
    }
}
