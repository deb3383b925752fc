//! Continuous Lyapunov equation `A V + V Aᵀ = -D` by Kronecker vectorization.

use super::{eigenvalues_general, CovarianceMatrix, Lu, Matrix};
use crate::error::{Error, Result};
use crate::model::{DriftMatrix, NoiseMatrix};

/// `A V + V Aᵀ + D`
pub fn lyapunov_residual(a: &Matrix, v: &Matrix, d: &Matrix) -> Matrix {
    let mut r = a.matmul(v);
    r.axpy(1.0, &v.matmul(&a.transpose()));
    r.axpy(1.0, d);
    r
}

/// Solve `A V + V Aᵀ = -D` for arbitrary square `A` and `D`.
///
/// The `n² x n²` system `(A ⊗ I + I ⊗ A) vec(V) = -vec(D)` (row-major vec)
/// is solved by pivoted LU with one step of iterative refinement, and the
/// result is symmetrized when `D` is symmetric. No stability check is made.
pub fn lyapunov_dense(a: &Matrix, d: &Matrix) -> Result<Matrix> {
    if !a.is_square() || a.rows() != d.rows() || a.cols() != d.cols() {
        return Err(Error::Shape {
            expected: "square A and D of equal size",
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    let n = a.rows();
    let nn = n * n;
    let mut k = Matrix::zeros(nn, nn);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for m in 0..n {
                // (A V)_ij = sum_m A_im V_mj
                k[(row, m * n + j)] += a[(i, m)];
                // (V Aᵀ)_ij = sum_m V_im A_jm
                k[(row, i * n + m)] += a[(j, m)];
            }
        }
    }
    let rhs: Vec<f64> = d.as_slice().iter().map(|x| -x).collect();
    let lu = Lu::factor(&k)?;
    let mut x = lu.solve(&rhs);

    // One refinement step.
    let kx = k.mat_vec(&x);
    let r: Vec<f64> = rhs.iter().zip(&kx).map(|(b, kx)| b - kx).collect();
    let dx = lu.solve(&r);
    for (xi, di) in x.iter_mut().zip(dx) {
        *xi += di;
    }

    let v = Matrix::from_fn(n, n, |i, j| x[i * n + j]);
    if d.asymmetry() == 0.0 {
        Ok(v.symmetrized())
    } else {
        Ok(v)
    }
}

/// Steady-state covariance of the linearized dynamics.
///
/// Requires every eigenvalue of `A` to have a strictly negative real part;
/// otherwise [`Error::UnstableSystem`].
pub fn solve_lyapunov(a: &DriftMatrix, d: &NoiseMatrix) -> Result<CovarianceMatrix> {
    let spectrum = eigenvalues_general(a.as_matrix())?;
    if spectrum.max_real_part >= 0.0 {
        return Err(Error::UnstableSystem {
            max_real_part: spectrum.max_real_part,
        });
    }
    let v = lyapunov_dense(a.as_matrix(), &d.to_matrix())?;
    Ok(CovarianceMatrix::from_symmetric_unchecked(v))
}
