//! Gauss-Legendre quadrature with node doubling.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Starting node count for [`integrate`].
pub const MIN_NODES: usize = 8;

/// Largest node count [`integrate`] will try.
pub const MAX_NODES: usize = 1 << 14;

/// Successive estimates must agree to this relative tolerance.
pub const REL_TOL: f64 = 1e-11;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [−1, 1].
///
/// Nodes are the roots of Pₙ found by Newton iteration from the Tricomi
/// initial guesses, returned in ascending order.
pub fn nodes_weights(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d.is_finite() {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Pₙ(z) and Pₙ'(z) from the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Fixed-order rule on [a, b].
pub fn integrate_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = nodes_weights(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| wi * f(mid + half * xi))
        .sum::<f64>()
        * half
}

/// Integrates a smooth `f` on [a, b], doubling the node count from
/// [`MIN_NODES`] until two successive estimates agree to [`REL_TOL`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    let mut n = MIN_NODES;
    let mut prev = integrate_fixed(&f, a, b, n);
    while n < MAX_NODES {
        n *= 2;
        let next = integrate_fixed(&f, a, b, n);
        if !next.is_finite() {
            return Err(Error::QuadratureNotConverged {
                last: next,
                previous: prev,
            });
        }
        if (next - prev).abs() <= REL_TOL * next.abs() {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNotConverged {
        last: prev,
        previous: integrate_fixed(&f, a, b, n / 2),
    })
}
