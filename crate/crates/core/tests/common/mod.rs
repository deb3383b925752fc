//! Test-only oracles, independent of the library's numerical routines.
#![allow(dead_code)]

use afmsync::{DriftMatrix, Matrix, NoiseMatrix};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type CMat = Vec<Vec<Complex64>>;

fn to_complex(m: &Matrix) -> CMat {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Complex64::new(m[(i, j)], 0.0)).collect())
        .collect()
}

/// det(M − λI) by complex Gaussian elimination with partial pivoting.
pub fn char_poly_at(m: &Matrix, lambda: Complex64) -> Complex64 {
    let n = m.rows();
    let mut a = to_complex(m);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap();
        if a[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in (k + 1)..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let akj = a[k][j];
                a[i][j] -= f * akj;
            }
        }
    }
    det
}

fn solve_complex(mut a: CMat, mut b: Vec<Complex64>) -> Vec<Complex64> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap();
        a.swap(p, k);
        b.swap(p, k);
        if a[k][k].norm() == 0.0 {
            a[k][k] = Complex64::new(1e-300, 0.0);
        }
        for i in (k + 1)..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let akj = a[k][j];
                a[i][j] -= f * akj;
            }
            let bk = b[k];
            b[i] -= f * bk;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in (i + 1)..n {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    x
}

/// ‖Mv − λv‖/‖v‖ for an eigenvector recovered by inverse iteration.
pub fn eigenpair_residual(m: &Matrix, lambda: Complex64) -> f64 {
    let n = m.rows();
    let shift = lambda + Complex64::new(1e-10, 1e-10);
    let mut shifted = to_complex(m);
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= shift;
    }
    let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + i as f64 * 0.1, 0.3)).collect();
    for _ in 0..4 {
        v = solve_complex(shifted.clone(), v);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
    }
    let cm = to_complex(m);
    let mut r2 = 0.0;
    for i in 0..n {
        let mv: Complex64 = (0..n).map(|j| cm[i][j] * v[j]).sum();
        r2 += (mv - lambda * v[i]).norm_sqr();
    }
    r2.sqrt()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, scale: f64) -> Matrix {
    Matrix::from_fn(n, n, |_, _| rng.gen_range(-scale..scale))
}

/// Random drift matrix that is stable by Gershgorin on its symmetric part:
/// rotation-dominated, with decay rates at least `min_decay`.
pub fn random_stable_pair(rng: &mut impl Rng, min_decay: f64) -> (DriftMatrix, NoiseMatrix) {
    let n = 6;
    let mut s = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(-1.5..1.5);
            s[(i, j)] = w;
            s[(j, i)] = -w;
        }
    }
    let sym = random_matrix(rng, n, 0.3).symmetrized();
    let radius = (0..n)
        .map(|i| (0..n).map(|j| sym[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let shift = radius + rng.gen_range(min_decay..0.5);
    let mut a = &s + &sym;
    for i in 0..n {
        a[(i, i)] -= shift;
    }
    let diag: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.01..2.0));
    (
        DriftMatrix::from_matrix(a).unwrap(),
        NoiseMatrix::from_diagonal(diag).unwrap(),
    )
}

pub fn frobenius_distance(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).frobenius_norm()
}
