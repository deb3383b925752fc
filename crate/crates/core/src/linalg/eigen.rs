//! Eigenvalues of general real matrices.
//!
//! Householder reduction to upper Hessenberg form followed by the Francis
//! implicit double-shift QR iteration (the EISPACK `hqr` scheme). Only
//! eigenvalues are computed.

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

/// Largest dimension accepted by [`eigenvalues_general`].
pub const MAX_DIM: usize = 64;

/// Eigenvalues of a real square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted by descending real part, then descending imaginary part.
    pub eigenvalues: Vec<Complex64>,
    pub max_real_part: f64,
}

impl Spectrum {
    fn new(mut eigenvalues: Vec<Complex64>) -> Self {
        eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        let max_real_part = eigenvalues
            .iter()
            .map(|z| z.re)
            .fold(f64::NEG_INFINITY, f64::max);
        Spectrum {
            eigenvalues,
            max_real_part,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// All eigenvalues of `m`.
///
/// The QR phase is capped at `100 * n` iterations in total; exceeding the
/// cap gives [`Error::ConvergenceFailure`].
pub fn eigenvalues_general(m: &Matrix) -> Result<Spectrum> {
    if !m.is_square() || m.rows() > MAX_DIM {
        return Err(Error::Shape {
            expected: "square, n <= 64",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }
    let mut h = m.clone();
    hessenberg_in_place(&mut h);
    let values = hqr(&mut h, 100 * n)?;
    Ok(Spectrum::new(values))
}

/// Orthogonal similarity reduction to upper Hessenberg form.
pub fn hessenberg_in_place(a: &mut Matrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let norm = ((k + 1)..n).map(|i| a[(i, k)] * a[(i, k)]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for i in 0..n {
            v[i] = if i > k { a[(i, k)] } else { 0.0 };
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = v[(k + 1)..].iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // A <- (I - beta v vᵀ) A
        for j in k..n {
            let dot: f64 = ((k + 1)..n).map(|i| v[i] * a[(i, j)]).sum();
            let s = beta * dot;
            for i in (k + 1)..n {
                a[(i, j)] -= s * v[i];
            }
        }
        // A <- A (I - beta v vᵀ)
        for i in 0..n {
            let dot: f64 = ((k + 1)..n).map(|j| a[(i, j)] * v[j]).sum();
            let s = beta * dot;
            for j in (k + 1)..n {
                a[(i, j)] -= s * v[j];
            }
        }
        a[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            a[(i, k)] = 0.0;
        }
    }
}

#[inline]
fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix. Destroys `a`.
fn hqr(a: &mut Matrix, max_iterations: usize) -> Result<Vec<Complex64>> {
    let n = a.rows() as isize;
    let eps = f64::EPSILON;
    let mut wr = vec![Complex64::new(0.0, 0.0); n as usize];
    let mut total = 0usize;

    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm += a[(i as usize, j as usize)].abs();
        }
    }

    macro_rules! at {
        ($i:expr, $j:expr) => {
            a[(($i) as usize, ($j) as usize)]
        };
    }

    let mut nn: isize = n - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // Look for a single small subdiagonal element.
            let mut l = nn;
            while l > 0 {
                let mut s = at!(l - 1, l - 1).abs() + at!(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at!(l, l - 1).abs() <= eps * s {
                    at!(l, l - 1) = 0.0;
                    break;
                }
                l -= 1;
            }

            let mut x = at!(nn, nn);
            if l == nn {
                // One root found.
                wr[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = at!(nn - 1, nn - 1);
            let mut w = at!(nn, nn - 1) * at!(nn - 1, nn);
            if l == nn - 1 {
                // Two roots found.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    let hi = x + z;
                    let lo = if z != 0.0 { x - w / z } else { hi };
                    wr[(nn - 1) as usize] = Complex64::new(hi, 0.0);
                    wr[nn as usize] = Complex64::new(lo, 0.0);
                } else {
                    wr[nn as usize] = Complex64::new(x + p, -z);
                    wr[(nn - 1) as usize] = Complex64::new(x + p, z);
                }
                nn -= 2;
                break;
            }

            if total >= max_iterations {
                return Err(Error::ConvergenceFailure { iterations: total });
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift.
                t += x;
                for i in 0..=nn {
                    at!(i, i) -= x;
                }
                let s = at!(nn, nn - 1).abs() + at!(nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;

            // Look for two consecutive small subdiagonal elements.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = at!(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / at!(m + 1, m) + at!(m, m + 1);
                q = at!(m + 1, m + 1) - z - rr - ss;
                r = at!(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = at!(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (at!(m - 1, m - 1).abs() + z.abs() + at!(m + 1, m + 1).abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..(nn - 1) {
                at!(i + 2, i) = 0.0;
                if i != m {
                    at!(i + 2, i - 1) = 0.0;
                }
            }

            // Double QR step on rows l..nn and columns m..nn.
            let mut k = m;
            while k < nn {
                if k != m {
                    p = at!(k, k - 1);
                    q = at!(k + 1, k - 1);
                    r = if k + 1 != nn { at!(k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            at!(k, k - 1) = -at!(k, k - 1);
                        }
                    } else {
                        at!(k, k - 1) = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = at!(k, j) + q * at!(k + 1, j);
                        if k + 1 != nn {
                            pp += r * at!(k + 2, j);
                            at!(k + 2, j) -= pp * z;
                        }
                        at!(k + 1, j) -= pp * y;
                        at!(k, j) -= pp * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * at!(i, k) + y * at!(i, k + 1);
                        if k + 1 != nn {
                            pp += z * at!(i, k + 2);
                            at!(i, k + 2) -= pp * r;
                        }
                        at!(i, k + 1) -= pp * q;
                        at!(i, k) -= pp;
                    }
                }
                k += 1;
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Ok(wr)
}
