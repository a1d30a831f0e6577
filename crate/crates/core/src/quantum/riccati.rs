//! Laurent solutions of the oscillator Riccati equations.
//!
//! Coordinate form: −iħ p′ + p² = 2mE − mk x², with p = Σ bⱼ x^{3−2j}.
//! Momentum form:    iħ x′ + x² = (2/k)E − p²/(mk), with x = Σ b′ⱼ p^{3−2j}.
//!
//! Both are instances of α y′ + y² = c₀ + c₂ z². Matching powers gives
//! b₁² = c₂, b₂ = (c₀ − α b₁)/(2b₁) and, for n ≥ 2,
//! b_{n+1} = −[α(3−2n) bₙ + Σ_{j=2..n} bⱼ b_{n+2−j}]/(2b₁).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::{AtInfinity, LaurentSeries};
use crate::params::OscillatorParams;

/// Fewest coefficients a solution may carry (b₁ and b₂).
pub const MIN_ORDER: usize = 2;

/// Relative residual accepted by the self-check.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// (1/2π)∮ p dx
    Pdx,
    /// −(1/2π)∮ x dp
    Xdp,
}

/// A truncated Laurent solution and its substitution check.
#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiSolution {
    pub coefficients: LaurentSeries<AtInfinity>,
    pub form: Form,
    /// Correction-layer coefficients when the solution carries one.
    pub correction_coeffs: Vec<f64>,
    /// Largest coefficient of the substituted equation through the known
    /// order, relative to the largest term of the equation.
    pub residual_norm: f64,
}

impl RiccatiSolution {
    /// bⱼ, the coefficient of z^{3−2j} (j ≥ 1).
    pub fn b(&self, j: usize) -> Option<Complex64> {
        self.coefficients.coeff(3 - 2 * j as i32)
    }

    /// Number of coefficients known.
    pub fn order(&self) -> usize {
        self.coefficients
            .truncation_order()
            .map_or(0, |k| ((3 - k) / 2) as usize)
    }

    /// J = i·b₂ for the coordinate form and J = −i·b′₂ for the momentum form.
    pub fn action(&self) -> Result<f64> {
        let res = self.coefficients.residue()?;
        let j = match self.form {
            Form::Pdx => Complex64::i() * res,
            Form::Xdp => -Complex64::i() * res,
        };
        Ok(j.re)
    }
}

/// Coefficients b₁..b_order of α y′ + y² = c₀ + c₂ z² (index 0 unused).
fn recurrence(alpha: Complex64, c0: f64, b1: Complex64, order: usize) -> Result<Vec<Complex64>> {
    if b1.norm() == 0.0 {
        return Err(Error::RecurrenceSingular("leading coefficient vanishes".to_string()));
    }
    let mut b = vec![Complex64::new(0.0, 0.0); order + 1];
    b[1] = b1;
    b[2] = (c0 - alpha * b1) / (2.0 * b1);
    for n in 2..order {
        let conv: Complex64 = (2..=n).map(|j| b[j] * b[n + 2 - j]).sum();
        b[n + 1] = -(alpha * (3.0 - 2.0 * n as f64) * b[n] + conv) / (2.0 * b1);
    }
    Ok(b)
}

fn series_from(b: &[Complex64]) -> LaurentSeries<AtInfinity> {
    let order = b.len() - 1;
    LaurentSeries::from_terms(
        (1..=order).map(|j| (3 - 2 * j as i32, b[j])),
        Some(3 - 2 * order as i32),
    )
}

/// Relative residual of α y′ + y² − c₀ − c₂ z² through the known order.
pub fn riccati_residual(y: &LaurentSeries<AtInfinity>, alpha: Complex64, c0: f64, c2: f64) -> f64 {
    let sq = y * y;
    let drv = y.derivative().scale(alpha);
    let rhs = LaurentSeries::<AtInfinity>::from_real([(0, c0), (2, c2)], None);
    let eq = &(&sq + &drv) - &rhs;
    let scale = sq.max_abs().max(drv.max_abs()).max(c0.abs()).max(c2.abs());
    if scale == 0.0 {
        0.0
    } else {
        eq.max_abs() / scale
    }
}

fn check(e: f64, order: usize) -> Result<()> {
    if !(e > 0.0) {
        return Err(Error::NonPositiveEnergy(e));
    }
    if order < MIN_ORDER {
        return Err(Error::ParameterOutOfRange(format!(
            "a Riccati solution needs at least {MIN_ORDER} coefficients, got {order}"
        )));
    }
    Ok(())
}

/// Coordinate-form solution with b₁ = +i√(mk), the branch that reduces to the
/// classical momentum as ħ → 0.
pub fn riccati_pdx(params: &OscillatorParams, e: f64, order: usize) -> Result<RiccatiSolution> {
    check(e, order)?;
    let alpha = Complex64::new(0.0, -params.hbar());
    let c0 = 2.0 * params.mass() * e;
    let c2 = -params.mass() * params.stiffness();
    let b = recurrence(alpha, c0, Complex64::new(0.0, params.sqrt_mk()), order)?;
    let coefficients = series_from(&b);
    let residual_norm = riccati_residual(&coefficients, alpha, c0, c2);
    Ok(RiccatiSolution {
        coefficients,
        form: Form::Pdx,
        correction_coeffs: Vec::new(),
        residual_norm,
    })
}

/// Momentum-form solution with b′₁ = −i/√(mk).
pub fn riccati_xdp(params: &OscillatorParams, e: f64, order: usize) -> Result<RiccatiSolution> {
    check(e, order)?;
    let alpha = Complex64::new(0.0, params.hbar());
    let c0 = 2.0 * e / params.stiffness();
    let c2 = -1.0 / (params.mass() * params.stiffness());
    let b = recurrence(alpha, c0, Complex64::new(0.0, -1.0 / params.sqrt_mk()), order)?;
    let coefficients = series_from(&b);
    let residual_norm = riccati_residual(&coefficients, alpha, c0, c2);
    Ok(RiccatiSolution {
        coefficients,
        form: Form::Xdp,
        correction_coeffs: Vec::new(),
        residual_norm,
    })
}
