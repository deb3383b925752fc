//! Steady-state quantum synchronization of the two magnon modes of a
//! two-sublattice antiferromagnet coupled to a two-post reentrant cavity.
//!
//! The linearized quantum Langevin dynamics of the three modes (magnons `a`,
//! `b` and cavity `c`) are written in quadratures as `u̇ = A u + n`. The
//! steady Gaussian state is the solution of `A V + V Aᵀ = −D`, from which the
//! synchronization degree of the magnons is read off. Running the pipeline
//! with the cavity in its bright (ω_c + Δ_F) and dark (ω_c − Δ_F) resonance
//! gives the nonreciprocal pair S₁₂/S₂₁ and the isolation ratio.
//!
//! ```
//! use afmsync::{nonreciprocal_pair, ParamSet};
//!
//! let params = ParamSet { h: 0.1, ..ParamSet::default() }.resolve().unwrap();
//! let r = nonreciprocal_pair(&params);
//! assert!(r.s12.unwrap() > r.s21.unwrap());
//! ```

pub mod bogoliubov;
pub mod error;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod sweep;
pub mod sync;

pub use bogoliubov::{anticrossing, dispersion_matrix, dispersion_sweep, Anticrossing, DispersionMetric, DispersionPoint};
pub use error::{Error, Result};
pub use linalg::{eigenvalues_general, eigenvalues_symmetric, is_stable, solve_lyapunov, CovarianceMatrix, Matrix, Spectrum};
pub use model::{
    build_drift_matrix, build_noise_matrix, coupling_from_geometry, derive, CavityMode, DerivedQuantities, DriftMatrix,
    FieldUnit, NoiseMatrix, ParamSet, SystemParams,
};
pub use oracle::{default_step, integrate_covariance, IntegrationReport};
pub use sweep::{builtin_materials, run_material_suite, run_sweep, Axis, MaterialPreset, SweepParam, SweepRow, SweepSpec};
pub use sync::{nonreciprocal_pair, sir, sync_degree, SyncResult};
