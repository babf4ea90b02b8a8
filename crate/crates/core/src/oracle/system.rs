//! Stationary lattice equations on a finite window, closed by plane-wave
//! boundary conditions on both leads.
//!
//! Nothing in here may depend on `crate::analytic`; this solver is the
//! reference the closed forms are checked against.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ScatteringModel;

/// Condition estimate above which a system is reported as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Relative residual bound for accepting a solve.
pub const RESIDUAL_BOUND: f64 = 1e-10;

/// Inclusive range of chain sites carried as explicit unknowns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub first: i64,
    pub last: i64,
}

impl Window {
    /// One free site beyond the outermost attachments on each side.
    pub fn around(model: &ScatteringModel) -> Self {
        let (lo, hi) = model.defects().attachment_span().unwrap_or((0, 0));
        Self {
            first: lo - 1,
            last: hi + 1,
        }
    }

    pub fn widened(self, by: i64) -> Self {
        Self {
            first: self.first - by,
            last: self.last + by,
        }
    }

    pub fn len(&self) -> usize {
        (self.last - self.first + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.last < self.first
    }
}

/// Unknown layout: `r`, `t`, then `A_first ..= A_last`, then one amplitude
/// per defect site.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearScatteringSystem {
    pub omega: f64,
    pub k: f64,
    pub window: Window,
    pub defect_count: usize,
    pub matrix: DMatrix<Complex64>,
    pub rhs: DVector<Complex64>,
}

impl LinearScatteringSystem {
    pub const R: usize = 0;
    pub const T: usize = 1;

    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    pub fn chain_index(&self, site: i64) -> usize {
        2 + (site - self.window.first) as usize
    }

    pub fn defect_index(&self, defect: usize) -> usize {
        2 + self.window.len() + defect
    }
}

pub fn assemble(model: &ScatteringModel, omega: f64) -> Result<LinearScatteringSystem> {
    assemble_in(model, omega, Window::around(model))
}

pub fn assemble_in(
    model: &ScatteringModel,
    omega: f64,
    window: Window,
) -> Result<LinearScatteringSystem> {
    let k = model.lead().wavenumber(omega)?;
    let j = model.lead().hopping();
    let defects = model.defects();
    if window.is_empty() {
        return Err(Error::InvalidModel("empty solve window".into()));
    }
    if let Some((lo, hi)) = defects.attachment_span() {
        if lo < window.first || hi > window.last {
            return Err(Error::InvalidModel(format!(
                "window [{}, {}] does not cover attachments [{lo}, {hi}]",
                window.first, window.last
            )));
        }
    }

    let n = 2 + window.len() + defects.sites.len();
    let mut sys = LinearScatteringSystem {
        omega,
        k,
        window,
        defect_count: defects.sites.len(),
        matrix: DMatrix::zeros(n, n),
        rhs: DVector::zeros(n),
    };
    let wave = |site: i64| Complex64::from_polar(1.0, k * site as f64);
    let chain = |site: i64| 2 + (site - window.first) as usize;
    let (r, t) = (LinearScatteringSystem::R, LinearScatteringSystem::T);

    // Lead rows: the bulk equation one site outside the window, with the
    // plane-wave forms substituted on the lead side.
    let left = window.first - 1;
    sys.matrix[(0, r)] = omega * wave(-left) - j * wave(-(left - 1));
    sys.matrix[(0, chain(window.first))] = Complex64::new(-j, 0.0);
    sys.rhs[0] = j * wave(left - 1) - omega * wave(left);

    let right = window.last + 1;
    sys.matrix[(1, t)] = omega * wave(right) - j * wave(right + 1);
    sys.matrix[(1, chain(window.last))] = Complex64::new(-j, 0.0);

    for site in window.first..=window.last {
        let row = chain(site);
        sys.matrix[(row, row)] = Complex64::new(omega, 0.0);
        for nb in [site - 1, site + 1] {
            if nb < window.first {
                sys.matrix[(row, r)] -= j * wave(-nb);
                sys.rhs[row] += j * wave(nb);
            } else if nb > window.last {
                sys.matrix[(row, t)] -= j * wave(nb);
            } else {
                sys.matrix[(row, chain(nb))] -= j;
            }
        }
    }

    for (idx, d) in defects.sites.iter().enumerate() {
        let row = sys.defect_index(idx);
        sys.matrix[(row, row)] = omega - d.onsite;
    }
    for a in &defects.attachments {
        let (chain, defect) = (sys.chain_index(a.site), sys.defect_index(a.defect));
        sys.matrix[(chain, defect)] -= a.coupling;
        sys.matrix[(defect, chain)] -= a.coupling;
    }
    for c in &defects.internal {
        let (a, b) = (sys.defect_index(c.a), sys.defect_index(c.b));
        sys.matrix[(a, b)] -= c.value;
        sys.matrix[(b, a)] -= c.value;
    }
    Ok(sys)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSolution {
    pub omega: f64,
    pub k: f64,
    pub t: Complex64,
    pub r: Complex64,
    /// `(site, A_site)` over the solve window.
    pub chain: Vec<(i64, Complex64)>,
    pub defects: Vec<Complex64>,
    pub transmission: f64,
    pub reflection: f64,
    pub phase: f64,
    pub residual_norm: f64,
    pub condition_estimate: f64,
}

impl OracleSolution {
    pub fn total(&self) -> f64 {
        self.transmission + self.reflection
    }

    pub fn amplitude(&self, site: i64) -> Option<Complex64> {
        self.chain.iter().find(|(s, _)| *s == site).map(|(_, a)| *a)
    }
}

pub fn solve_scattering(model: &ScatteringModel, omega: f64) -> Result<OracleSolution> {
    solve_in(model, omega, Window::around(model))
}

pub fn solve_in(model: &ScatteringModel, omega: f64, window: Window) -> Result<OracleSolution> {
    let sys = assemble_in(model, omega, window)?;
    solve_system(model, &sys)
}

fn solve_system(model: &ScatteringModel, sys: &LinearScatteringSystem) -> Result<OracleSolution> {
    let sv = sys.matrix.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if condition.is_nan() || condition > SINGULAR_CONDITION {
        return Err(Error::SingularSystem {
            omega: sys.omega,
            condition,
            nearest_level: nearest_level(model, sys.omega),
        });
    }

    let x = sys
        .matrix
        .clone()
        .full_piv_lu()
        .solve(&sys.rhs)
        .ok_or(Error::SingularSystem {
            omega: sys.omega,
            condition,
            nearest_level: nearest_level(model, sys.omega),
        })?;
    let residual = (&sys.matrix * &x - &sys.rhs).norm();
    let bound = RESIDUAL_BOUND * sys.matrix.norm() * x.norm();
    if residual > bound {
        return Err(Error::Residual { residual, bound });
    }

    let (t, r) = (x[LinearScatteringSystem::T], x[LinearScatteringSystem::R]);
    let chain = (sys.window.first..=sys.window.last)
        .map(|s| (s, x[sys.chain_index(s)]))
        .collect();
    let defects = (0..sys.defect_count)
        .map(|d| x[sys.defect_index(d)])
        .collect();
    Ok(OracleSolution {
        omega: sys.omega,
        k: sys.k,
        t,
        r,
        chain,
        defects,
        transmission: t.norm_sqr(),
        reflection: r.norm_sqr(),
        phase: t.arg(),
        residual_norm: residual,
        condition_estimate: condition,
    })
}

/// Eigenvalue of the isolated defect block closest to `omega`.
fn nearest_level(model: &ScatteringModel, omega: f64) -> Option<Complex64> {
    let defects = model.defects();
    let n = defects.sites.len();
    if n == 0 {
        return None;
    }
    let mut h = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            defects.sites[i].onsite
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    for c in &defects.internal {
        h[(c.a, c.b)] += c.value;
        h[(c.b, c.a)] += c.value;
    }
    let levels = nalgebra::linalg::Schur::new(h).eigenvalues()?;
    levels
        .iter()
        .copied()
        .min_by(|a, b| (a - omega).norm().total_cmp(&(b - omega).norm()))
}
