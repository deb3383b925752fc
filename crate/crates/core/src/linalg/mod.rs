//! Dense real linear algebra for small systems: general and symmetric
//! eigenvalues, LU solves and the steady-state Lyapunov solver.

mod covariance;
mod eigen;
mod lu;
mod lyapunov;
mod matrix;
mod symmetric;

pub use covariance::{symplectic_form, CovarianceMatrix, DIM};
pub use eigen::{eigenvalues_general, hessenberg_in_place, Spectrum, MAX_DIM};
pub use lu::Lu;
pub use lyapunov::{lyapunov_dense, lyapunov_residual, solve_lyapunov};
pub use matrix::Matrix;
pub use symmetric::{eigenvalues_symmetric, symmetric_eigen3, SymmetricEigen3};

use crate::error::Result;
use crate::model::DriftMatrix;

/// Default stability margin (H_ex units).
pub const DEFAULT_STABILITY_MARGIN: f64 = 1e-9;

/// True iff every eigenvalue of `a` has real part below `-margin`.
pub fn is_stable(a: &DriftMatrix, margin: f64) -> Result<bool> {
    Ok(eigenvalues_general(a.as_matrix())?.max_real_part < -margin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stability_of_plus_minus_identity() {
        let neg = DriftMatrix::from_matrix(Matrix::identity(6).scale(-1.0)).unwrap();
        let pos = DriftMatrix::from_matrix(Matrix::identity(6)).unwrap();
        assert!(is_stable(&neg, DEFAULT_STABILITY_MARGIN).unwrap());
        assert!(!is_stable(&pos, DEFAULT_STABILITY_MARGIN).unwrap());
        // margin larger than the decay rate
        assert!(!is_stable(&neg, 2.0).unwrap());
    }
}
