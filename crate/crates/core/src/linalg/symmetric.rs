//! Cyclic Jacobi diagonalization for small real symmetric matrices.

/// Eigen-decomposition of a symmetric 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen3 {
    /// Ascending.
    pub values: [f64; 3],
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: [[f64; 3]; 3],
}

const MAX_SWEEPS: usize = 64;

/// Jacobi rotations to machine precision. Only the upper triangle is read.
pub fn symmetric_eigen3(m: &[[f64; 3]; 3]) -> SymmetricEigen3 {
    let mut a = *m;
    for i in 0..3 {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

    for _ in 0..MAX_SWEEPS {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        if off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let scale = a[p][p].abs() + a[q][q].abs();
            if apq.abs() <= f64::EPSILON * 1e-3 * scale {
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            for row in v.iter_mut() {
                let vkp = row[p];
                let vkq = row[q];
                row[p] = c * vkp - s * vkq;
                row[q] = s * vkp + c * vkq;
            }
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.map(|k| a[k][k]);
    let vectors = order.map(|k| [v[0][k], v[1][k], v[2][k]]);
    SymmetricEigen3 { values, vectors }
}

/// Ascending eigenvalues of a symmetric 3x3 matrix.
pub fn eigenvalues_symmetric(m: &[[f64; 3]; 3]) -> [f64; 3] {
    symmetric_eigen3(m).values
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_is_sorted() {
        let m = [[0.9, 0.0, 0.0], [0.0, 1.1, 0.0], [0.0, 0.0, 0.3]];
        assert_eq!(eigenvalues_symmetric(&m), [0.3, 0.9, 1.1]);
    }

    #[test]
    fn resonant_pair_splits_by_twice_coupling() {
        let (w, g) = (0.9, 0.003);
        let m = [[5.0, 0.0, 0.0], [0.0, w, g], [0.0, g, w]];
        let ev = eigenvalues_symmetric(&m);
        assert!(((ev[1] - ev[0]) - 2.0 * g).abs() < 1e-14);
        assert_eq!(ev[2], 5.0);
    }

    #[test]
    fn vectors_are_orthonormal_and_satisfy_eigen_equation() {
        let m = [[1.0, 0.2, -0.4], [0.2, 0.5, 0.3], [-0.4, 0.3, -2.0]];
        let e = symmetric_eigen3(&m);
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| e.vectors[i][k] * e.vectors[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
            for r in 0..3 {
                let mv: f64 = (0..3).map(|k| m[r][k] * e.vectors[i][k]).sum();
                assert!((mv - e.values[i] * e.vectors[i][r]).abs() < 1e-12);
            }
        }
    }
}
