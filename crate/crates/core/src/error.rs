use thiserror::Error;

/// Errors produced anywhere in the model / solver pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Bogoliubov transform diverges: g_ab = {g_ab} must stay below (omega_a + omega_b)/2 = {limit}")]
    BogoliubovDivergence { g_ab: f64, limit: f64 },

    #[error("geometry argument `{name}` must be positive, got {value}")]
    NonPositiveGeometry { name: &'static str, value: f64 },

    #[error("matrix has wrong shape: expected {expected}, got {rows}x{cols}")]
    Shape {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("eigenvalue iteration did not converge after {iterations} sweeps")]
    ConvergenceFailure { iterations: usize },

    #[error("drift matrix is unstable (max real eigenvalue part {max_real_part:e})")]
    UnstableSystem { max_real_part: f64 },

    #[error("vectorized Lyapunov system is numerically singular")]
    SingularSolve,

    #[error("unphysical covariance: synchronization degree {value} exceeds 1")]
    UnphysicalCovariance { value: f64 },

    #[error("synchronization degree must be positive, got {value}")]
    ZeroSyncDegree { value: f64 },

    #[error("covariance integration diverged at t = {t}")]
    Diverged { t: f64 },

    #[error("covariance integration did not converge by t = {t} (|dV/dt| = {rate_norm:e})")]
    NotConverged { t: f64, rate_norm: f64 },

    #[error("beta branch never meets the cavity frequency in h/H_sp window [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("unknown material `{0}`")]
    UnknownMaterial(String),

    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("invalid integration settings: {0}")]
    InvalidIntegration(&'static str),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. }
                | Error::UnstableSystem { .. }
                | Error::SingularSolve
                | Error::UnphysicalCovariance { .. }
                | Error::Diverged { .. }
                | Error::NotConverged { .. }
                | Error::NoCrossing { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
