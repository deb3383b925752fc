use super::{eigenvalues_general, Matrix};
use crate::error::{Error, Result};

/// Quadrature count: (X_a, Y_a, X_b, Y_b, X_c, Y_c).
pub const DIM: usize = 6;

/// Symmetric 6x6 covariance matrix of the three-mode Gaussian state,
/// indexed in the quadrature order (X_a, Y_a, X_b, Y_b, X_c, Y_c).
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    v: Matrix,
}

impl CovarianceMatrix {
    /// Accepts a 6x6 matrix symmetric to 1e-10 and stores its symmetric part.
    pub fn new(v: Matrix) -> Result<Self> {
        if v.rows() != DIM || v.cols() != DIM {
            return Err(Error::Shape {
                expected: "6x6",
                rows: v.rows(),
                cols: v.cols(),
            });
        }
        let asymmetry = v.asymmetry();
        if asymmetry > 1e-10 {
            return Err(Error::NotSymmetric { asymmetry });
        }
        Ok(CovarianceMatrix { v: v.symmetrized() })
    }

    pub(crate) fn from_symmetric_unchecked(v: Matrix) -> Self {
        debug_assert_eq!(v.rows(), DIM);
        CovarianceMatrix { v }
    }

    /// Vacuum state, ½·I.
    pub fn vacuum() -> Self {
        CovarianceMatrix {
            v: Matrix::identity(DIM).scale(0.5),
        }
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.v
    }

    pub fn into_matrix(self) -> Matrix {
        self.v
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.v[(i, j)]
    }

    /// Ascending symplectic eigenvalues: the moduli of the eigenvalues of
    /// `iΩV`, one per mode.
    pub fn symplectic_eigenvalues(&self) -> Result<[f64; 3]> {
        let omega = symplectic_form();
        let spectrum = eigenvalues_general(&omega.matmul(&self.v))?;
        let mut moduli: Vec<f64> = spectrum.eigenvalues.iter().map(|z| z.norm()).collect();
        moduli.sort_by(f64::total_cmp);
        // Eigenvalues of ΩV come in ±iν pairs.
        Ok([
            0.5 * (moduli[0] + moduli[1]),
            0.5 * (moduli[2] + moduli[3]),
            0.5 * (moduli[4] + moduli[5]),
        ])
    }

    /// Smallest symplectic eigenvalue is at least `1/2 - tol` and the
    /// diagonal is positive.
    pub fn is_physical(&self, tol: f64) -> Result<bool> {
        let diag_ok = (0..DIM).all(|i| self.v[(i, i)] > 0.0);
        Ok(diag_ok && self.symplectic_eigenvalues()?[0] >= 0.5 - tol)
    }
}

/// Standard three-mode symplectic form ⊕ [[0, 1], [-1, 0]].
pub fn symplectic_form() -> Matrix {
    let mut omega = Matrix::zeros(DIM, DIM);
    for m in 0..3 {
        omega[(2 * m, 2 * m + 1)] = 1.0;
        omega[(2 * m + 1, 2 * m)] = -1.0;
    }
    omega
}
