//! Spectra from the Hamiltonian matrix in the harmonic-oscillator basis.

use super::jacobi::jacobi_eigen;
use super::ladder::{LadderState, Op};
use super::{HamiltonianKind, HamiltonianSpec};
use crate::error::{Error, Result};

/// Largest basis the doubling certification will try.
pub const MAX_BASIS: usize = 1024;

/// Requested eigenvalues must move less than this (relative) when the basis
/// doubles.
const BASIS_TOL: f64 = 1e-10;

/// Row-major `basis_size × basis_size` matrix of H in the eigenbasis of the
/// unperturbed oscillator p²/2m + ½kx², built from exact ladder-operator
/// matrix elements.
pub fn hamiltonian_matrix(spec: &HamiltonianSpec, basis_size: usize) -> Result<Vec<f64>> {
    let params = &spec.params;
    if params.hbar() <= 0.0 {
        return Err(Error::ParameterOutOfRange(
            "a matrix spectrum needs hbar > 0".to_string(),
        ));
    }
    let m = params.mass();
    let hw = params.quantum_energy();
    // x = s(a + a†), p = i t(a† − a)
    let s2 = params.hbar() / (2.0 * m * params.omega0());
    let t2 = m * hw / 2.0;
    let (op, coupling) = match spec.kind {
        HamiltonianKind::Sho => (None, 0.0),
        HamiltonianKind::WeakRel => {
            let c2 = params.light_speed().powi(2);
            (Some(Op::Diff), -t2 * t2 / (8.0 * m.powi(3) * c2))
        }
        HamiltonianKind::QuarticAho => (Some(Op::Sum), spec.delta * s2 * s2),
        HamiltonianKind::FullRel => {
            return Err(Error::UnknownForm(
                "the fully relativistic Hamiltonian has no oscillator-basis matrix".to_string(),
            ))
        }
    };
    let n = basis_size;
    let mut h = vec![0.0; n * n];
    for ket in 0..n {
        h[ket * n + ket] = (ket as f64 + 0.5) * hw;
        if let Some(op) = op {
            if coupling != 0.0 {
                for (bra, amp) in LadderState::number(ket).apply_n(op, 4).components() {
                    if bra < n {
                        h[bra * n + ket] += coupling * amp;
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Sorted eigenvalues of the truncated Hamiltonian matrix.
pub fn diagonalize(spec: &HamiltonianSpec, basis_size: usize) -> Result<Vec<f64>> {
    if basis_size == 0 {
        return Err(Error::ParameterOutOfRange("basis size must be positive".to_string()));
    }
    let h = hamiltonian_matrix(spec, basis_size)?;
    let mut vals = Vec::with_capacity(basis_size);
    for parity in 0..2 {
        let (block, _) = parity_block(&h, basis_size, parity);
        let dim = (basis_size + 1 - parity) / 2;
        if dim > 0 {
            vals.extend(jacobi_eigen(&block, dim)?.values);
        }
    }
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

fn parity_block(h: &[f64], n: usize, parity: usize) -> (Vec<f64>, Vec<usize>) {
    let idx: Vec<usize> = (parity..n).step_by(2).collect();
    let d = idx.len();
    let mut b = vec![0.0; d * d];
    for (i, &gi) in idx.iter().enumerate() {
        for (j, &gj) in idx.iter().enumerate() {
            b[i * d + j] = h[gi * n + gj];
        }
    }
    (b, idx)
}

/// Levels 0..=n_max, each picked as the eigenvalue whose eigenvector has the
/// largest overlap with the corresponding unperturbed state.
fn levels_at(spec: &HamiltonianSpec, n_max: usize, basis_size: usize) -> Result<Vec<f64>> {
    let h = hamiltonian_matrix(spec, basis_size)?;
    let mut out = vec![0.0; n_max + 1];
    for parity in 0..2 {
        if parity > n_max {
            continue;
        }
        let (block, _) = parity_block(&h, basis_size, parity);
        let dim = (basis_size + 1 - parity) / 2;
        let eig = jacobi_eigen(&block, dim)?;
        for level in (parity..=n_max).step_by(2) {
            let row = level / 2;
            let best = (0..dim)
                .max_by(|&a, &b| eig.component(row, a).abs().total_cmp(&eig.component(row, b).abs()))
                .expect("non-empty block");
            out[level] = eig.values[best];
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalizedLevels {
    /// Energy of level n at index n.
    pub energies: Vec<f64>,
    /// Basis size the energies were computed with.
    pub basis_size: usize,
    /// Largest relative change of any requested level when the basis doubled.
    pub max_relative_shift: f64,
}

/// Levels 0..=n_max with convergence certified by basis doubling.
///
/// The levels are computed at `basis_size` and again at twice that size. If
/// they move by less than 1e−10 relative the smaller-basis values are
/// returned; otherwise the basis is doubled again, up to [`MAX_BASIS`].
pub fn diagonalize_levels(spec: &HamiltonianSpec, n_max: usize, basis_size: usize) -> Result<DiagonalizedLevels> {
    if basis_size < 4 * n_max.max(1) {
        return Err(Error::ParameterOutOfRange(format!(
            "basis size {basis_size} is below 4 x {n_max}"
        )));
    }
    if 2 * basis_size > MAX_BASIS {
        return Err(Error::BasisNotConverged(basis_size));
    }
    let mut size = basis_size;
    let mut current = levels_at(spec, n_max, size)?;
    while 2 * size <= MAX_BASIS {
        let next = levels_at(spec, n_max, 2 * size)?;
        let shift = current
            .iter()
            .zip(&next)
            .map(|(a, b)| ((a - b) / b).abs())
            .fold(0.0, f64::max);
        if shift < BASIS_TOL {
            return Ok(DiagonalizedLevels {
                energies: current,
                basis_size: size,
                max_relative_shift: shift,
            });
        }
        size *= 2;
        current = next;
    }
    Err(Error::BasisNotConverged(size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::OscillatorParams;

    #[test]
    fn sho_spectrum_is_exact() {
        let spec = HamiltonianSpec::sho(OscillatorParams::new(2.0, 8.0, 1.0, 0.5).unwrap());
        let vals = diagonalize(&spec, 16).unwrap();
        for (n, v) in vals.iter().enumerate() {
            assert!((v - (n as f64 + 0.5) * 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn matrix_is_symmetric_and_banded() {
        let p = OscillatorParams::natural(5.0).unwrap();
        for spec in [HamiltonianSpec::weak_rel(p), HamiltonianSpec::quartic(p, 0.01)] {
            let n = 20;
            let h = hamiltonian_matrix(&spec, n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert!((h[i * n + j] - h[j * n + i]).abs() < 1e-12);
                    if i.abs_diff(j) > 4 || (i + j) % 2 == 1 {
                        assert_eq!(h[i * n + j], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn full_rel_has_no_matrix() {
        let spec = HamiltonianSpec::full_rel(OscillatorParams::natural(5.0).unwrap());
        assert!(matches!(diagonalize(&spec, 8), Err(Error::UnknownForm(_))));
    }

    #[test]
    fn quartic_first_order_shift() {
        // δ/k² = 1e−4 in natural units: first-order shift (3/4)δ(2n²+2n+1)
        let delta = 1e-4;
        let spec = HamiltonianSpec::quartic(OscillatorParams::natural(1.0).unwrap(), delta);
        let lv = diagonalize_levels(&spec, 2, 32).unwrap();
        let shift = lv.energies[2] - 2.5;
        assert!((shift - 9.75e-4).abs() < 2e-5, "{shift}");
    }

    #[test]
    fn basis_must_cover_requested_levels() {
        let spec = HamiltonianSpec::sho(OscillatorParams::natural(1.0).unwrap());
        assert!(diagonalize_levels(&spec, 10, 16).is_err());
    }
}
