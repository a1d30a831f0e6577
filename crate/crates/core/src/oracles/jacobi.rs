//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use crate::error::{Error, Result};

/// Sweeps allowed before the solver reports a stall.
pub const MAX_SWEEPS: usize = 60;

/// Off-diagonal Frobenius norm below which the matrix counts as diagonal,
/// relative to the Frobenius norm of the input.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub n: usize,
    /// Eigenvalues in the order the rotations left them (not sorted).
    pub values: Vec<f64>,
    /// Row-major matrix whose column `j` is the eigenvector of `values[j]`.
    pub vectors: Vec<f64>,
    pub sweeps: usize,
}

impl SymmetricEigen {
    /// Component `i` of eigenvector `j`.
    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.vectors[i * self.n + j]
    }

    /// Eigenvalues sorted ascending.
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Diagonalizes the symmetric `n × n` row-major `matrix`.
///
/// Only the upper triangle is assumed meaningful; it is mirrored before the
/// sweeps start.
pub fn jacobi_eigen(matrix: &[f64], n: usize) -> Result<SymmetricEigen> {
    assert_eq!(matrix.len(), n * n, "matrix must be n × n");
    let mut a = matrix.to_vec();
    for p in 0..n {
        for q in p + 1..n {
            a[q * n + p] = a[p * n + q];
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_TOL * frob;

    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        if off <= target {
            return Ok(SymmetricEigen {
                n,
                values: (0..n).map(|i| a[i * n + i]).collect(),
                vectors: v,
                sweeps: sweep,
            });
        }
        // Early sweeps only rotate the large elements.
        let threshold = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    Err(Error::EigensolverStalled(MAX_SWEEPS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let e = jacobi_eigen(&[2.0, 1.0, 1.0, 2.0], 2).unwrap();
        let vals = e.sorted_values();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_matrix_needs_no_sweep() {
        let e = jacobi_eigen(&[1.0, 0.0, 0.0, 5.0], 2).unwrap();
        assert_eq!(e.sweeps, 0);
        assert_eq!(e.values, vec![1.0, 5.0]);
    }

    #[test]
    fn reconstructs_matrix() {
        let n = 6;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = 1.0 / (1.0 + i as f64 + j as f64) + if i == j { i as f64 } else { 0.0 };
            }
        }
        let e = jacobi_eigen(&m, n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n).map(|k| e.component(i, k) * e.values[k] * e.component(j, k)).sum();
                assert!((r - m[i * n + j]).abs() < 1e-12);
            }
        }
        // orthonormal columns
        for a in 0..n {
            for b in 0..n {
                let d: f64 = (0..n).map(|i| e.component(i, a) * e.component(i, b)).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((d - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tridiagonal_laplacian() {
        // eigenvalues 2 − 2cos(kπ/(n+1))
        let n = 40;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 2.0;
            if i + 1 < n {
                m[i * n + i + 1] = -1.0;
            }
        }
        let vals = jacobi_eigen(&m, n).unwrap().sorted_values();
        for (k, v) in vals.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-12);
        }
    }
}
