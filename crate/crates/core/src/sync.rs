//! Synchronization degree of the two magnon modes, the bright/dark pair and
//! the isolation ratio.

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_general, solve_lyapunov, CovarianceMatrix, DEFAULT_STABILITY_MARGIN};
use crate::model::{build_drift_matrix, build_noise_matrix, CavityMode, SystemParams};

/// Slack allowed above the Heisenberg bound S ≤ 1.
pub const SYNC_BOUND_TOL: f64 = 1e-8;

/// `1 / (⟨X₋²⟩ + ⟨Y₋²⟩)` with X₋ = (X_a − X_b)/√2, Y₋ = (Y_a − Y_b)/√2.
pub fn sync_degree(v: &CovarianceMatrix) -> Result<f64> {
    let x_minus = 0.5 * (v.get(0, 0) + v.get(2, 2) - 2.0 * v.get(0, 2));
    let y_minus = 0.5 * (v.get(1, 1) + v.get(3, 3) - 2.0 * v.get(1, 3));
    let s = 1.0 / (x_minus + y_minus);
    if !(s > 0.0) || s > 1.0 + SYNC_BOUND_TOL {
        return Err(Error::UnphysicalCovariance { value: s });
    }
    Ok(s)
}

/// Isolation ratio in dB: 20·log₁₀ max(|s12/s21|, |s21/s12|).
pub fn sir(s12: f64, s21: f64) -> Result<f64> {
    for value in [s12, s21] {
        if !(value > 0.0) {
            return Err(Error::ZeroSyncDegree { value });
        }
    }
    let zeta = (s12 / s21).abs().max((s21 / s12).abs());
    Ok(20.0 * zeta.log10())
}

/// Steady state for a single cavity mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub covariance: CovarianceMatrix,
    pub sync_degree: f64,
    pub max_real_part: f64,
}

/// Full pipeline for one direction: drift/noise → stability → Lyapunov → S.
pub fn steady_state(params: &SystemParams) -> Result<SteadyState> {
    let a = build_drift_matrix(params)?;
    let d = build_noise_matrix(params)?;
    let max_real_part = eigenvalues_general(a.as_matrix())?.max_real_part;
    if max_real_part >= -DEFAULT_STABILITY_MARGIN {
        return Err(Error::UnstableSystem { max_real_part });
    }
    let covariance = solve_lyapunov(&a, &d)?;
    let sync_degree = sync_degree(&covariance)?;
    Ok(SteadyState {
        covariance,
        sync_degree,
        max_real_part,
    })
}

/// Outcome of one direction of [`nonreciprocal_pair`].
pub type DirectionOutcome = Result<SteadyState>;

/// S₁₂ (bright), S₂₁ (dark) and their isolation ratio.
///
/// A direction that is unstable or fails numerically reports `None` for its
/// S value and `false` for its flag; `s_iso` is then `None` as well.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncResult {
    pub s12: Option<f64>,
    pub s21: Option<f64>,
    /// dB.
    pub s_iso: Option<f64>,
    pub stable_bright: bool,
    pub stable_dark: bool,
    pub bright: DirectionOutcome,
    pub dark: DirectionOutcome,
}

impl SyncResult {
    /// Smallest symplectic eigenvalue over the available covariance matrices.
    pub fn min_symplectic_eigenvalue(&self) -> Option<f64> {
        [&self.bright, &self.dark]
            .into_iter()
            .filter_map(|o| o.as_ref().ok())
            .filter_map(|s| s.covariance.symplectic_eigenvalues().ok())
            .map(|nu| nu[0])
            .reduce(f64::min)
    }

    /// First error encountered, bright before dark.
    pub fn first_error(&self) -> Option<&Error> {
        self.bright
            .as_ref()
            .err()
            .or_else(|| self.dark.as_ref().err())
    }
}

/// Evaluate both cavity modes for the same magnon parameters.
pub fn nonreciprocal_pair(params: &SystemParams) -> SyncResult {
    let bright = steady_state(&params.with_cavity_mode(CavityMode::Bright));
    let dark = steady_state(&params.with_cavity_mode(CavityMode::Dark));
    let s12 = bright.as_ref().ok().map(|s| s.sync_degree);
    let s21 = dark.as_ref().ok().map(|s| s.sync_degree);
    let s_iso = match (s12, s21) {
        (Some(a), Some(b)) => sir(a, b).ok(),
        _ => None,
    };
    SyncResult {
        s12,
        s21,
        s_iso,
        stable_bright: s12.is_some(),
        stable_dark: s21.is_some(),
        bright,
        dark,
    }
}
