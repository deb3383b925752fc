//! Independent route to the steady covariance: integrate the second-moment
//! equation dV/dt = A V + V Aᵀ + D with classical RK4 until it stops moving.

use crate::error::{Error, Result};
use crate::linalg::{lyapunov_residual, CovarianceMatrix, Matrix, DIM};
use crate::model::{DriftMatrix, NoiseMatrix};

/// Default integration horizon (units of 1/H_ex).
pub const DEFAULT_T_MAX: f64 = 1e6;
/// Default convergence threshold relative to ‖D‖_F.
pub const DEFAULT_RELATIVE_RATE_TOL: f64 = 1e-12;
/// ‖V‖_F above this means the dynamics are unstable.
pub const DIVERGENCE_NORM: f64 = 1e12;
/// Multiple of eps·‖V‖_F/dt below which a fixed-step update no longer
/// changes V in floating point.
pub const ROUNDOFF_FLOOR_FACTOR: f64 = 64.0;

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationReport {
    pub v_final: CovarianceMatrix,
    pub t_final: f64,
    pub converged: bool,
    /// ‖dV/dt‖_F at `t_final`.
    pub final_rate_norm: f64,
    /// Threshold actually applied: `rate_tol`, raised to the round-off floor
    /// of the update when that is larger.
    pub threshold: f64,
    pub steps: u64,
}

/// 0.05 / max(1, max|A_ij|).
pub fn default_step(a: &DriftMatrix) -> f64 {
    0.05 / a.as_matrix().max_abs().max(1.0)
}

/// `rate_tol` for a given noise matrix: 1e-12·‖D‖_F.
pub fn default_rate_tol(d: &NoiseMatrix) -> f64 {
    DEFAULT_RELATIVE_RATE_TOL * d.to_matrix().frobenius_norm()
}

/// Fixed-step RK4 integration of the covariance moment equation.
///
/// Stops as soon as ‖A V + V Aᵀ + D‖_F drops below `rate_tol` or below
/// [`ROUNDOFF_FLOOR_FACTOR`]·eps·‖V‖_F/dt, whichever is larger. Errors with
/// [`Error::Diverged`] if ‖V‖_F passes [`DIVERGENCE_NORM`] and
/// [`Error::NotConverged`] if `t_max` is reached first.
pub fn integrate_covariance(
    a: &DriftMatrix,
    d: &NoiseMatrix,
    v0: &Matrix,
    dt: f64,
    t_max: f64,
    rate_tol: f64,
) -> Result<IntegrationReport> {
    integrate_moments(a.as_matrix(), &d.to_matrix(), v0, dt, t_max, rate_tol)
}

/// [`integrate_covariance`] on plain 6x6 matrices; `d` may be any
/// symmetric matrix, including zero.
pub fn integrate_moments(
    am: &Matrix,
    dm: &Matrix,
    v0: &Matrix,
    dt: f64,
    t_max: f64,
    rate_tol: f64,
) -> Result<IntegrationReport> {
    if !(dt > 0.0) {
        return Err(Error::InvalidIntegration("dt must be positive"));
    }
    if !(t_max > dt) {
        return Err(Error::InvalidIntegration("t_max must exceed dt"));
    }
    if [am, dm, v0].iter().any(|m| m.rows() != DIM || m.cols() != DIM) {
        return Err(Error::Shape {
            expected: "6x6",
            rows: am.rows(),
            cols: dm.rows(),
        });
    }
    if v0.asymmetry() > 1e-10 {
        return Err(Error::NotSymmetric {
            asymmetry: v0.asymmetry(),
        });
    }

    let rhs = |v: &Matrix| lyapunov_residual(am, v, dm);

    let mut v = v0.symmetrized();
    let mut t = 0.0;
    let mut steps = 0u64;
    let mut rate = rhs(&v);
    loop {
        let rate_norm = rate.frobenius_norm();
        let threshold = rate_tol.max(ROUNDOFF_FLOOR_FACTOR * f64::EPSILON * v.frobenius_norm() / dt);
        if rate_norm < threshold {
            return Ok(IntegrationReport {
                v_final: CovarianceMatrix::from_symmetric_unchecked(v),
                t_final: t,
                converged: true,
                final_rate_norm: rate_norm,
                threshold,
                steps,
            });
        }
        if t >= t_max {
            return Err(Error::NotConverged { t, rate_norm });
        }

        let k1 = rate;
        let mut tmp = v.clone();
        tmp.axpy(0.5 * dt, &k1);
        let k2 = rhs(&tmp);
        let mut tmp = v.clone();
        tmp.axpy(0.5 * dt, &k2);
        let k3 = rhs(&tmp);
        let mut tmp = v.clone();
        tmp.axpy(dt, &k3);
        let k4 = rhs(&tmp);

        v.axpy(dt / 6.0, &k1);
        v.axpy(dt / 3.0, &k2);
        v.axpy(dt / 3.0, &k3);
        v.axpy(dt / 6.0, &k4);
        v = v.symmetrized();
        t += dt;
        steps += 1;

        if !(v.frobenius_norm() <= DIVERGENCE_NORM) {
            return Err(Error::Diverged { t });
        }
        rate = rhs(&v);
    }
}

/// [`integrate_covariance`] from V = 0 with the default step, horizon and
/// tolerance.
pub fn integrate_to_steady_state(a: &DriftMatrix, d: &NoiseMatrix) -> Result<IntegrationReport> {
    integrate_covariance(
        a,
        d,
        &Matrix::zeros(DIM, DIM),
        default_step(a),
        DEFAULT_T_MAX,
        default_rate_tol(d),
    )
}
