//! Dispersion of the Bogoliubov-transformed three-mode Hamiltonian and the
//! β-branch/cavity anticrossing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_general, symmetric_eigen3, Matrix};
use crate::model::{derive, CavityMode, DerivedQuantities, SystemParams};

/// Default field window (units of H_sp) for the anticrossing search.
pub const DEFAULT_WINDOW: (f64, f64) = (0.0, 2.0);
/// Stopping tolerance of the golden-section gap minimization (units of H_sp).
pub const GAP_SEARCH_TOL: f64 = 1e-6;

const COARSE_POINTS: usize = 400;

/// How the 3x3 mode matrix is diagonalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DispersionMetric {
    /// Literal real-symmetric eigenvalues.
    #[default]
    Plain,
    /// Eigenvalues of η·M with η = diag(1, −1, −1), reported as |Re λ|.
    Bosonic,
}

impl DispersionMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            DispersionMetric::Plain => "plain",
            DispersionMetric::Bosonic => "bosonic",
        }
    }
}

impl std::str::FromStr for DispersionMetric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(DispersionMetric::Plain),
            "bosonic" => Ok(DispersionMetric::Bosonic),
            other => Err(format!("unknown metric `{other}` (expected plain or bosonic)")),
        }
    }
}

/// The real symmetric matrix
/// `[[ω_α, 0, g_αc], [0, ω_β, g_βc], [g_αc, g_βc, ω_±]]`.
pub fn dispersion_matrix(dq: &DerivedQuantities, mode: CavityMode) -> [[f64; 3]; 3] {
    [
        [dq.omega_alpha, 0.0, dq.g_alpha_c],
        [0.0, dq.omega_beta, dq.g_beta_c],
        [dq.g_alpha_c, dq.g_beta_c, dq.cavity_frequency(mode)],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    /// External field, units of H_sp.
    pub h: f64,
    /// (ω_α, ω_β, ω_±).
    pub bare: [f64; 3],
    /// Ascending dressed eigenfrequencies.
    pub dressed: [f64; 3],
}

pub fn dispersion_point(
    params: &SystemParams,
    h_over_hsp: f64,
    metric: DispersionMetric,
) -> Result<DispersionPoint> {
    let p = params.with_h_over_hsp(h_over_hsp);
    let dq = derive(&p)?;
    let m = dispersion_matrix(&dq, p.cavity_mode);
    let dressed = match metric {
        DispersionMetric::Plain => symmetric_eigen3(&m).values,
        DispersionMetric::Bosonic => {
            let eta = [1.0, -1.0, -1.0];
            let em = Matrix::from_fn(3, 3, |i, j| eta[i] * m[i][j]);
            let spectrum = eigenvalues_general(&em)?;
            let mut out = [0.0; 3];
            for (o, z) in out.iter_mut().zip(&spectrum.eigenvalues) {
                *o = z.re.abs();
            }
            out.sort_by(f64::total_cmp);
            out
        }
    };
    Ok(DispersionPoint {
        h: h_over_hsp,
        bare: [m[0][0], m[1][1], m[2][2]],
        dressed,
    })
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid("grid has non-finite values"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid must be strictly ascending"));
    }
    Ok(())
}

/// Plain dispersion over a field grid in units of H_sp.
pub fn dispersion_sweep(params: &SystemParams, h_grid: &[f64]) -> Result<Vec<DispersionPoint>> {
    dispersion_sweep_with(params, h_grid, DispersionMetric::Plain)
}

pub fn dispersion_sweep_with(
    params: &SystemParams,
    h_grid: &[f64],
    metric: DispersionMetric,
) -> Result<Vec<DispersionPoint>> {
    check_grid(h_grid)?;
    h_grid
        .iter()
        .map(|&h| dispersion_point(params, h, metric))
        .collect()
}

/// Location and size of the β/cavity anticrossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anticrossing {
    /// Bare resonance ω_β(h) = ω_±, units of H_sp.
    pub h_star: f64,
    /// Minimizer of the dressed β/cavity splitting, units of H_sp.
    pub h_min_gap: f64,
    /// Minimum dressed splitting (H_ex units).
    pub gap: f64,
    /// Dressed splitting at `h_star`.
    pub gap_at_resonance: f64,
    pub g_alpha_c: f64,
    pub g_beta_c: f64,
    /// ω_α − ω_± at `h_star`.
    pub alpha_detuning: f64,
}

impl Anticrossing {
    /// Level shift of the cavity caused by the off-resonant α branch,
    /// g_αc² / |ω_α − ω_±|. The splitting differs from 2·g_βc by no more.
    pub fn perturbative_bound(&self) -> f64 {
        self.g_alpha_c * self.g_alpha_c / self.alpha_detuning.abs()
    }
}

/// Splitting of the two dressed branches that are not α-dominated.
pub fn beta_cavity_gap(params: &SystemParams, h_over_hsp: f64) -> Result<f64> {
    let p = params.with_h_over_hsp(h_over_hsp);
    let dq = derive(&p)?;
    let e = symmetric_eigen3(&dispersion_matrix(&dq, p.cavity_mode));
    let alpha_branch = (0..3)
        .max_by(|&i, &j| e.vectors[i][0].abs().total_cmp(&e.vectors[j][0].abs()))
        .unwrap_or(2);
    let rest: Vec<f64> = (0..3)
        .filter(|&k| k != alpha_branch)
        .map(|k| e.values[k])
        .collect();
    Ok((rest[1] - rest[0]).abs())
}

fn beta_detuning(params: &SystemParams, h_over_hsp: f64) -> Result<f64> {
    let p = params.with_h_over_hsp(h_over_hsp);
    let dq = derive(&p)?;
    Ok(dq.omega_beta - dq.cavity_frequency(p.cavity_mode))
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + step * i as f64 })
}

fn golden_section(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Anticrossing for `mode` in the default window.
pub fn anticrossing(params: &SystemParams, mode: CavityMode) -> Result<Anticrossing> {
    anticrossing_in(params, mode, DEFAULT_WINDOW)
}

/// Anticrossing for `mode` with `h/H_sp` restricted to `window`.
///
/// `h_star` is the bare crossing ω_β = ω_±, found by bisection. The dressed
/// splitting is then scanned on a coarse grid around it and refined by
/// golden-section search.
pub fn anticrossing_in(
    params: &SystemParams,
    mode: CavityMode,
    window: (f64, f64),
) -> Result<Anticrossing> {
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::InvalidGrid("anticrossing window must satisfy lo < hi"));
    }
    let p = params.with_cavity_mode(mode);

    // Bracket the first sign change of ω_β − ω_±.
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for h in linspace(lo, hi, COARSE_POINTS) {
        let f = beta_detuning(&p, h)?;
        if f == 0.0 {
            bracket = Some((h, h));
            break;
        }
        if let Some((h0, f0)) = prev {
            if f0.signum() != f.signum() {
                bracket = Some((h0, h));
                break;
            }
        }
        prev = Some((h, f));
    }
    let (mut a, mut b) = bracket.ok_or(Error::NoCrossing { lo, hi })?;
    let fa = beta_detuning(&p, a)?;
    while b - a > 1e-15 * (1.0 + a.abs()) {
        let mid = 0.5 * (a + b);
        let fm = beta_detuning(&p, mid)?;
        if fm == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    let h_star = 0.5 * (a + b);

    let dq = derive(&p.with_h_over_hsp(h_star))?;
    let eps = 1e-6;
    let slope = (beta_detuning(&p, h_star + eps)? - beta_detuning(&p, h_star - eps)?) / (2.0 * eps);
    let reach = 10.0 * (dq.g_alpha_c.abs() + dq.g_beta_c.abs()) / slope.abs().max(f64::MIN_POSITIVE);
    let s_lo = (h_star - reach).max(lo);
    let s_hi = (h_star + reach).min(hi);

    let gap_at = |h: f64| beta_cavity_gap(&p, h);
    let mut best = (h_star, gap_at(h_star)?);
    let grid: Vec<f64> = linspace(s_lo, s_hi, COARSE_POINTS).collect();
    let mut best_idx = None;
    for (i, &h) in grid.iter().enumerate() {
        let g = gap_at(h)?;
        if g < best.1 {
            best = (h, g);
            best_idx = Some(i);
        }
    }
    let (g_lo, g_hi) = match best_idx {
        Some(i) => (grid[i.saturating_sub(1)], grid[(i + 1).min(grid.len() - 1)]),
        None => ((h_star - (s_hi - s_lo) / COARSE_POINTS as f64).max(s_lo), (h_star + (s_hi - s_lo) / COARSE_POINTS as f64).min(s_hi)),
    };
    let h_min_gap = golden_section(g_lo, g_hi, GAP_SEARCH_TOL, gap_at)?;

    Ok(Anticrossing {
        h_star,
        h_min_gap,
        gap: gap_at(h_min_gap)?,
        gap_at_resonance: gap_at(h_star)?,
        g_alpha_c: dq.g_alpha_c,
        g_beta_c: dq.g_beta_c,
        alpha_detuning: dq.omega_alpha - dq.cavity_frequency(mode),
    })
}
