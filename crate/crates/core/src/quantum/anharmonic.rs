//! Quartic anharmonic oscillator V = ½kx² + δx⁴ to first order in δ.
//!
//! The quantum momentum function is written as
//! p = p₀[1 + (δ/k)x² Σ D_l (x₂/x)^{2l}], with p₀ the oscillator solution and
//! x₂ = √(2E/k). Substituting into −iħp′ + p² = 2m(E − V) and keeping the
//! O(δ) layer gives 2p₀q − iħq′ = −2mx⁴ for q = p₀x²ΣD_l(x₂/x)^{2l}/k, which
//! is triangular in the D_l.

use num_complex::Complex64;

use super::riccati::riccati_pdx;
use crate::classical::ActionResult;
use crate::error::{Error, Result};
use crate::laurent::{AtInfinity, LaurentSeries};
use crate::params::{EnergyPoint, OscillatorParams, SchemeTag};

/// δx₂⁴/(½kx₂²) above which the first-order treatment is flagged.
pub const SMALLNESS_WARN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AhoCoefficients {
    /// D₀, D₁, D₂
    pub d: [f64; 3],
    /// λ = ħω₀/(4E)
    pub lambda: f64,
    /// δx₂⁴/(½kx₂²)
    pub smallness: f64,
}

impl AhoCoefficients {
    /// True when the quartic term is not small against the quadratic one.
    pub fn warn(&self) -> bool {
        self.smallness.abs() > SMALLNESS_WARN
    }
}

fn x2_squared(params: &OscillatorParams, e: f64) -> f64 {
    2.0 * e / params.stiffness()
}

/// D₀ = 1, D₁ = 1 + λ, D₂ = 1 − (3/2)λ + 2λ².
pub fn aho_coeffs(params: &OscillatorParams, e: f64, delta: f64) -> Result<AhoCoefficients> {
    if !(e > 0.0) {
        return Err(Error::NonPositiveEnergy(e));
    }
    let lambda = params.quantum_energy() / (4.0 * e);
    Ok(AhoCoefficients {
        d: [1.0, 1.0 + lambda, 1.0 - 1.5 * lambda + 2.0 * lambda * lambda],
        lambda,
        smallness: 2.0 * delta * x2_squared(params, e) / params.stiffness(),
    })
}

/// q_l = p₀ x^{2−2l} x₂^{2l} / k
fn q_term(p0: &LaurentSeries<AtInfinity>, l: usize, x2sq: f64, k: f64) -> LaurentSeries<AtInfinity> {
    p0.shift(2 - 2 * l as i32).scale_real(x2sq.powi(l as i32) / k)
}

/// Solves the O(δ) layer power by power for D₀ … D_{count−1}.
pub fn aho_coeffs_rederived(params: &OscillatorParams, e: f64, count: usize) -> Result<Vec<f64>> {
    if !(e > 0.0) {
        return Err(Error::NonPositiveEnergy(e));
    }
    let p0 = riccati_pdx(params, e, count + 4)?.coefficients;
    let ih = Complex64::new(0.0, params.hbar());
    let x2sq = x2_squared(params, e);
    let k = params.stiffness();
    let images: Vec<LaurentSeries<AtInfinity>> = (0..count)
        .map(|l| {
            let q = q_term(&p0, l, x2sq, k);
            &(&p0 * &q).scale_real(2.0) - &q.derivative().scale(ih)
        })
        .collect();
    let mut d: Vec<Complex64> = Vec::with_capacity(count);
    for l in 0..count {
        let power = 4 - 2 * l as i32;
        let known = |s: &LaurentSeries<AtInfinity>| {
            s.coeff(power).ok_or(Error::OrderInsufficient {
                requested: power,
                known: s.truncation_order().unwrap_or(i32::MAX),
            })
        };
        let rhs = if power == 4 {
            Complex64::new(-2.0 * params.mass(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        let mut acc = rhs;
        for (i, di) in d.iter().enumerate() {
            acc -= di * known(&images[i])?;
        }
        let pivot = known(&images[l])?;
        if pivot.norm() == 0.0 {
            return Err(Error::RecurrenceSingular(format!("pivot for D_{l} vanishes")));
        }
        d.push(acc / pivot);
    }
    Ok(d.into_iter().map(|c| c.re).collect())
}

/// J = ħ[−½ + 1/(4λ) − (3δħ/(32m²ω₀³))(4 + 1/λ²)], evaluated in the
/// equivalent form E/ω₀ − ħ/2 − 3δħ²/(8m²ω₀³) − 3δE²/(2m²ω₀⁵), which stays
/// finite at ħ = 0.
pub fn quantum_action_aho(params: &OscillatorParams, e: f64, delta: f64) -> Result<ActionResult> {
    let ep = EnergyPoint::new(params, e)?;
    let hbar = params.hbar();
    let w0 = params.omega0();
    let m2 = params.mass().powi(2);
    let j = e / w0 - 0.5 * hbar - 3.0 * delta * hbar * hbar / (8.0 * m2 * w0.powi(3))
        - 3.0 * delta * e * e / (2.0 * m2 * w0.powi(5));
    Ok(ActionResult {
        j_value: j,
        scheme: SchemeTag::QuantumAhoPdx,
        order_epsilon: Some(1),
        e_point: ep,
        epsilon_limit: f64::INFINITY,
    })
}

/// The action read off the x⁻¹ coefficient of p₀[1 + (δ/k)x²ΣD_l(x₂/x)^{2l}]
/// with the closed-form D coefficients.
pub fn quantum_action_aho_residue(params: &OscillatorParams, e: f64, delta: f64) -> Result<f64> {
    let coeffs = aho_coeffs(params, e, delta)?;
    let p0 = riccati_pdx(params, e, 6)?.coefficients;
    let x2sq = x2_squared(params, e);
    let mut p = p0.clone();
    for (l, dl) in coeffs.d.iter().enumerate() {
        p = &p + &q_term(&p0, l, x2sq, params.stiffness()).scale_real(delta * dl);
    }
    Ok((Complex64::i() * p.residue()?).re)
}
