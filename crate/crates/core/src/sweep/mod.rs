//! Parameter sweeps over one or two axes, material presets, and CSV export.
//!
//! Grid points are evaluated in parallel; rows always come back in
//! row-major order over (axis1, axis2) so output is reproducible.

mod csv;
mod materials;

pub use self::csv::{format_sig, write_dispersion_csv, write_sweep_csv, DISPERSION_HEADER, SWEEP_HEADER};
pub use materials::{builtin_materials, material, run_material_suite, MaterialPreset, MaterialSweep, SuiteTemplate};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{FieldUnit, SystemParams};
use crate::sync::nonreciprocal_pair;

/// A sweepable field of [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    HExA,
    HExB,
    HAnA,
    HAnB,
    H,
    GAb,
    GAc,
    GBc,
    KappaA,
    KappaB,
    KappaC,
    OmegaC,
    DeltaF,
}

impl SweepParam {
    pub const ALL: [SweepParam; 13] = [
        SweepParam::HExA,
        SweepParam::HExB,
        SweepParam::HAnA,
        SweepParam::HAnB,
        SweepParam::H,
        SweepParam::GAb,
        SweepParam::GAc,
        SweepParam::GBc,
        SweepParam::KappaA,
        SweepParam::KappaB,
        SweepParam::KappaC,
        SweepParam::OmegaC,
        SweepParam::DeltaF,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::HExA => "h_ex_a",
            SweepParam::HExB => "h_ex_b",
            SweepParam::HAnA => "h_an_a",
            SweepParam::HAnB => "h_an_b",
            SweepParam::H => "h",
            SweepParam::GAb => "g_ab",
            SweepParam::GAc => "g_ac",
            SweepParam::GBc => "g_bc",
            SweepParam::KappaA => "kappa_a",
            SweepParam::KappaB => "kappa_b",
            SweepParam::KappaC => "kappa_c",
            SweepParam::OmegaC => "omega_c",
            SweepParam::DeltaF => "delta_f",
        }
    }

    /// Write `value` into `p`. Only `h` honours `h_unit`; everything else is
    /// in H_ex units.
    pub fn apply(self, p: &mut SystemParams, value: f64, h_unit: FieldUnit) {
        let slot = match self {
            SweepParam::HExA => &mut p.h_ex_a,
            SweepParam::HExB => &mut p.h_ex_b,
            SweepParam::HAnA => &mut p.h_an_a,
            SweepParam::HAnB => &mut p.h_an_b,
            SweepParam::H => {
                p.h = match h_unit {
                    FieldUnit::Hsp => value * p.spin_flop_field(),
                    FieldUnit::Hex => value,
                };
                return;
            }
            SweepParam::GAb => &mut p.g_ab,
            SweepParam::GAc => &mut p.g_ac,
            SweepParam::GBc => &mut p.g_bc,
            SweepParam::KappaA => &mut p.kappa_a,
            SweepParam::KappaB => &mut p.kappa_b,
            SweepParam::KappaC => &mut p.kappa_c,
            SweepParam::OmegaC => &mut p.omega_c,
            SweepParam::DeltaF => &mut p.delta_f,
        };
        *slot = value;
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownParameter(s.to_string()))
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// One sweep axis: a parameter and a strictly ascending grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: SweepParam,
    pub grid: Vec<f64>,
}

impl Axis {
    pub fn new(param: SweepParam, grid: Vec<f64>) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::InvalidGrid("axis grid is empty"));
        }
        if grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid("axis grid has non-finite values"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("axis grid must be strictly ascending"));
        }
        Ok(Axis { param, grid })
    }

    pub fn linspace(param: SweepParam, lo: f64, hi: f64, n: usize) -> Result<Self> {
        Axis::new(param, linspace(lo, hi, n))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    /// Unit of `h` axis values.
    pub h_unit: FieldUnit,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        Axis::new(self.axis1.param, self.axis1.grid.clone())?;
        if let Some(a2) = &self.axis2 {
            Axis::new(a2.param, a2.grid.clone())?;
            if a2.param == self.axis1.param {
                return Err(Error::InvalidGrid("both axes sweep the same parameter"));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axis1.grid.len() * self.axis2.as_ref().map_or(1, |a| a.grid.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameters at grid cell (`v1`, `v2`). The `h` axis is applied last so
    /// an H_sp-relative field sees the other axis' anisotropy.
    pub fn point(&self, v1: f64, v2: Option<f64>) -> SystemParams {
        let mut p = self.base;
        let mut assignments = vec![(self.axis1.param, v1)];
        if let (Some(a2), Some(v2)) = (&self.axis2, v2) {
            assignments.push((a2.param, v2));
        }
        assignments.sort_by_key(|(param, _)| *param == SweepParam::H);
        for (param, v) in assignments {
            param.apply(&mut p, v, self.h_unit);
        }
        p
    }
}

/// One grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis1: (SweepParam, f64),
    pub axis2: Option<(SweepParam, f64)>,
    pub s12: Option<f64>,
    pub s21: Option<f64>,
    /// dB.
    pub s_iso: Option<f64>,
    pub stable_bright: bool,
    pub stable_dark: bool,
    /// Smallest symplectic eigenvalue of the computed covariance matrices.
    pub min_symplectic: Option<f64>,
    /// First failure at this cell (instability included).
    pub error: Option<Error>,
}

fn evaluate(spec: &SweepSpec, v1: f64, v2: Option<f64>) -> SweepRow {
    let params = spec.point(v1, v2);
    let r = nonreciprocal_pair(&params);
    SweepRow {
        axis1: (spec.axis1.param, v1),
        axis2: spec.axis2.as_ref().zip(v2).map(|(a, v)| (a.param, v)),
        s12: r.s12,
        s21: r.s21,
        s_iso: r.s_iso,
        stable_bright: r.stable_bright,
        stable_dark: r.stable_dark,
        min_symplectic: r.min_symplectic_eigenvalue(),
        error: r.first_error().cloned(),
    }
}

/// Evaluate [`nonreciprocal_pair`] over the grid, row-major in
/// (axis1, axis2). Only an invalid spec is an error; per-cell failures are
/// recorded in the row.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let cells: Vec<(f64, Option<f64>)> = match &spec.axis2 {
        None => spec.axis1.grid.iter().map(|&v| (v, None)).collect(),
        Some(a2) => spec
            .axis1
            .grid
            .iter()
            .flat_map(|&v1| a2.grid.iter().map(move |&v2| (v1, Some(v2))))
            .collect(),
    };
    Ok(cells
        .into_par_iter()
        .map(|(v1, v2)| evaluate(spec, v1, v2))
        .collect())
}

/// Grid position and value of the largest present `ys` entry. Ties keep the
/// first occurrence.
pub fn argmax(xs: &[f64], ys: &[Option<f64>]) -> Option<(f64, f64)> {
    xs.iter()
        .zip(ys)
        .filter_map(|(&x, y)| y.map(|y| (x, y)))
        .fold(None, |best: Option<(f64, f64)>, (x, y)| match best {
            Some((_, by)) if by >= y => best,
            _ => Some((x, y)),
        })
}

/// Zero crossings of `ys` between consecutive present samples, located by
/// linear interpolation. Exact zeros are reported once.
pub fn sign_changes(xs: &[f64], ys: &[Option<f64>]) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for (&x, y) in xs.iter().zip(ys) {
        let Some(y) = *y else {
            prev = None;
            continue;
        };
        if y == 0.0 {
            out.push(x);
        } else if let Some((x0, y0)) = prev {
            if y0 != 0.0 && y0.signum() != y.signum() {
                out.push(x0 + (x - x0) * y0 / (y0 - y));
            }
        }
        prev = Some((x, y));
    }
    out
}
