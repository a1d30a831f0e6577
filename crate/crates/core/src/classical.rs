//! Classical action variables J(E) = (1/2π)∮p dx and their frequencies.
//!
//! The contour encircles the physical cut [x₁, x₂] and its orientation is
//! fixed so that J > 0: with the momentum branch p ≈ +i√(mk)x at large |x|,
//! J = i · (coefficient of x⁻¹). The momentum-plane form −(1/2π)∮x dp uses
//! the same convention.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauss;
use crate::laurent::{annulus_residue, binomial_sqrt, AtInfinity, AtOrigin, LaurentSeries, DEFAULT_EXTRA_POWERS};
use crate::oracles::HamiltonianSpec;
use crate::params::{EnergyPoint, OscillatorParams, SchemeTag, WEAK_EPSILON_LIMIT};

/// Largest ε accepted by the fully relativistic series.
pub const FULL_REL_EPSILON_LIMIT: f64 = 1.0;

/// Coefficients of the fully relativistic ∮p dx series in powers of ε/(2+ε).
pub const FULL_REL_PDX_COEFFS: [f64; 3] = [1.0, -1.0 / 8.0, -1.0 / 64.0];

/// Coefficients of the fully relativistic −∮x dp series in powers of ε.
pub const FULL_REL_XDP_COEFFS: [f64; 4] = [1.0, -1.0 / 16.0, 7.0 / 256.0, 1.0 / 128.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Coordinate,
    Momentum,
}

/// Zeros of the classical momentum (coordinate plane) or of the classical
/// coordinate function (momentum plane).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    /// (x₁, x₂) or (p₁, p₂), with −x₁ = x₂.
    pub physical: (f64, f64),
    /// (x₃, x₄) or (p₃, p₄), the branch points introduced by the p⁴ term.
    pub unphysical: (Complex64, Complex64),
    pub plane: Plane,
    /// First-order form of the physical turning value, where one exists.
    pub first_order: Option<f64>,
}

/// An action value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionResult {
    pub j_value: f64,
    pub scheme: SchemeTag,
    /// Highest power of the expansion parameter retained; `None` when exact.
    pub order_epsilon: Option<u32>,
    pub e_point: EnergyPoint,
    /// Expansion parameter above which the value is rejected.
    pub epsilon_limit: f64,
}

/// Branch points of the weakly relativistic momentum in the x-plane:
/// x₂ = √(2Ẽ/k) and x₄ = x₂√(1 − 1/2ε), purely imaginary for ε < ½.
pub fn turning_points_wr(params: &OscillatorParams, ep: &EnergyPoint) -> Result<TurningPoints> {
    ep.require_weak()?;
    let x2 = (2.0 * ep.e_tilde() / params.stiffness()).sqrt();
    let x4 = Complex64::new(1.0 - 0.5 / ep.epsilon(), 0.0).sqrt() * x2;
    Ok(TurningPoints {
        physical: (-x2, x2),
        unphysical: (-x4, x4),
        plane: Plane::Coordinate,
        first_order: None,
    })
}

/// Zeros of x(p) for the weakly relativistic oscillator:
/// p₂ = √2·mc[1 − √(1−2ε)]^½ and p₄ = √2·mc[1 + √(1−2ε)]^½.
pub fn turning_momenta_wr(params: &OscillatorParams, ep: &EnergyPoint) -> Result<TurningPoints> {
    ep.require_weak()?;
    let mc = params.mass() * params.light_speed();
    let eps = ep.epsilon();
    let s = (1.0 - 2.0 * eps).sqrt();
    // 1 − s = 2ε/(1 + s) avoids cancellation at small ε
    let p2 = 2.0 * mc * (eps / (1.0 + s)).sqrt();
    let p4 = 2f64.sqrt() * mc * (1.0 + s).sqrt();
    let first = (2.0 * params.mass() * ep.e_tilde()).sqrt() * (1.0 + eps / 4.0);
    Ok(TurningPoints {
        physical: (-p2, p2),
        unphysical: (Complex64::new(-p4, 0.0), Complex64::new(p4, 0.0)),
        plane: Plane::Momentum,
        first_order: Some(first),
    })
}

/// J = E/ω₀ for the non-relativistic oscillator.
pub fn action_sho(params: &OscillatorParams, e: f64) -> Result<ActionResult> {
    let ep = EnergyPoint::new(params, e)?;
    Ok(ActionResult {
        j_value: e / params.omega0(),
        scheme: SchemeTag::ClassicalSho,
        order_epsilon: None,
        e_point: ep,
        epsilon_limit: f64::INFINITY,
    })
}

/// J = (Ẽ/ω₀)(1 + 3ε/16), the weakly relativistic action to first order.
pub fn action_wr_pdx(params: &OscillatorParams, ep: &EnergyPoint) -> Result<ActionResult> {
    ep.require_weak()?;
    Ok(ActionResult {
        j_value: ep.e_tilde() / params.omega0() * (1.0 + 3.0 * ep.epsilon() / 16.0),
        scheme: SchemeTag::ClassicalWrPdx,
        order_epsilon: Some(1),
        e_point: *ep,
        epsilon_limit: WEAK_EPSILON_LIMIT,
    })
}

/// Laurent expansion about infinity of the classical SHO momentum
/// i√(mk)·x·[1 − (x₂/x)²]^½, with `order` binomial terms.
pub fn sho_momentum_series(params: &OscillatorParams, e: f64, order: usize) -> Result<LaurentSeries<AtInfinity>> {
    let x2sq = 2.0 * e / params.stiffness();
    let u = LaurentSeries::<AtInfinity>::from_real([(-2, x2sq)], None);
    Ok(binomial_sqrt(&u, order)?
        .shift(1)
        .scale(Complex64::new(0.0, params.sqrt_mk())))
}

/// First-order weakly relativistic action from the residue of
/// p_C(x)·(1 + ε/4 − kx²/8mc²).
pub fn action_wr_pdx_residue(params: &OscillatorParams, ep: &EnergyPoint) -> Result<f64> {
    ep.require_weak()?;
    let pc = sho_momentum_series(params, ep.e_tilde(), 2 + DEFAULT_EXTRA_POWERS / 2)?;
    let correction = LaurentSeries::<AtInfinity>::from_real(
        [
            (0, 1.0 + ep.epsilon() / 4.0),
            (2, -params.stiffness() / (8.0 * params.rest_energy())),
        ],
        None,
    );
    let res = (&pc * &correction).residue()?;
    Ok((Complex64::i() * res).re)
}

/// Σ_{l<n_terms} (−2c_{l+1}c_l) ρ^l from the residue of
/// q[1 − ρ/q²]^½ · [1 − q²]^½ in the annulus √ρ < |q| < 1.
fn xdp_annulus_sum(rho: f64, n_terms: usize) -> Result<f64> {
    if rho == 0.0 {
        return Ok(1.0);
    }
    let outer = binomial_sqrt(&LaurentSeries::<AtInfinity>::from_real([(-2, rho)], None), n_terms)?.shift(1);
    let inner = binomial_sqrt(&LaurentSeries::<AtOrigin>::from_real([(2, 1.0)], None), n_terms - 1)?;
    Ok(-2.0 * annulus_residue(&outer, &inner).re / rho)
}

/// Weakly relativistic action from the momentum-plane contour:
/// (Ẽ/ω₀)[2/(1+√(1−2ε))]^½ [1 − ⅛(p₂/p₄)² − …] with `n_terms` bracket terms.
pub fn action_wr_xdp(params: &OscillatorParams, ep: &EnergyPoint, n_terms: usize) -> Result<ActionResult> {
    if n_terms == 0 {
        return Err(Error::ParameterOutOfRange("n_terms must be at least 1".to_string()));
    }
    let tp = turning_momenta_wr(params, ep)?;
    let rho = (tp.physical.1 / tp.unphysical.1.re).powi(2);
    let s = (1.0 - 2.0 * ep.epsilon()).sqrt();
    let prefactor = (2.0 / (1.0 + s)).sqrt();
    Ok(ActionResult {
        j_value: ep.e_tilde() / params.omega0() * prefactor * xdp_annulus_sum(rho, n_terms)?,
        scheme: SchemeTag::ClassicalWrXdp,
        order_epsilon: Some(n_terms as u32),
        e_point: *ep,
        epsilon_limit: WEAK_EPSILON_LIMIT,
    })
}

/// The momentum-plane action truncated at first order in ε. The prefactor
/// contributes ε/4 and the bracket −ρ/8 with ρ = ε/2 + O(ε²).
pub fn action_wr_xdp_first_order(params: &OscillatorParams, ep: &EnergyPoint) -> Result<ActionResult> {
    ep.require_weak()?;
    let prefactor_slope = 0.25;
    let bracket_slope = -0.125 * 0.5;
    Ok(ActionResult {
        j_value: ep.e_tilde() / params.omega0() * (1.0 + (prefactor_slope + bracket_slope) * ep.epsilon()),
        scheme: SchemeTag::ClassicalWrXdp,
        order_epsilon: Some(1),
        e_point: *ep,
        epsilon_limit: WEAK_EPSILON_LIMIT,
    })
}

/// Tabulated fully relativistic action series, `n_terms` terms of the
/// bracket times (Ẽ/ω₀)√(1 + ε/2).
///
/// `form` selects the ∮p dx series in ε/(2+ε) ([`SchemeTag::ClassicalFullRelPdx`])
/// or the −∮x dp series in ε ([`SchemeTag::ClassicalFullRelXdp`]).
pub fn action_fullrel(params: &OscillatorParams, ep: &EnergyPoint, form: SchemeTag, n_terms: usize) -> Result<ActionResult> {
    let eps = ep.epsilon();
    if eps > FULL_REL_EPSILON_LIMIT {
        return Err(Error::EpsilonOutOfRange {
            epsilon: eps,
            limit: FULL_REL_EPSILON_LIMIT,
        });
    }
    let (coeffs, variable): (&[f64], f64) = match form {
        SchemeTag::ClassicalFullRelPdx => (&FULL_REL_PDX_COEFFS, eps / (2.0 + eps)),
        SchemeTag::ClassicalFullRelXdp => (&FULL_REL_XDP_COEFFS, eps),
        other => return Err(Error::UnknownForm(other.name().to_string())),
    };
    if n_terms == 0 || n_terms > coeffs.len() {
        return Err(Error::ParameterOutOfRange(format!(
            "{} has {} tabulated terms, {n_terms} requested",
            form.name(),
            coeffs.len()
        )));
    }
    let bracket: f64 = coeffs[..n_terms]
        .iter()
        .enumerate()
        .map(|(l, c)| c * variable.powi(l as i32))
        .sum();
    Ok(ActionResult {
        j_value: ep.e_tilde() / params.omega0() * (1.0 + eps / 2.0).sqrt() * bracket,
        scheme: form,
        order_epsilon: Some(n_terms as u32 - 1),
        e_point: *ep,
        epsilon_limit: FULL_REL_EPSILON_LIMIT,
    })
}

/// (1/π)∫ p dx between the turning points, by Gauss-Legendre quadrature after
/// x = x₂ sin θ. `e` is the mechanical energy (rest energy excluded).
pub fn action_quadrature(spec: &HamiltonianSpec, e: f64) -> Result<f64> {
    let x2 = spec.turning_point(e)?;
    let integrand = |theta: f64| {
        let c = theta.cos();
        x2 * x2 * c * c * spec.momentum_factor(x2 * theta.sin(), x2)
    };
    Ok(gauss::integrate(integrand, -0.5 * PI, 0.5 * PI)? / PI)
}

/// ω = (dJ/dE)⁻¹ from a central difference with step max(1e−6·E, 1e−9)
/// and one Richardson extrapolation.
pub fn frequency_from_action<F>(j_of_e: F, e: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = (1e-6 * e).max(1e-9);
    let central = |h: f64| -> Result<f64> { Ok((j_of_e(e + h)? - j_of_e(e - h)?) / (2.0 * h)) };
    let d = (4.0 * central(0.5 * h)? - central(h)?) / 3.0;
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::DerivativeNotFinite(e));
    }
    Ok(1.0 / d)
}

/// ω₀/(1 + 3ε/8), the derivative of (Ẽ/ω₀)(1 + 3ε/16) inverted.
pub fn frequency_wr(params: &OscillatorParams, ep: &EnergyPoint) -> Result<f64> {
    ep.require_weak()?;
    Ok(params.omega0() / (1.0 + 3.0 * ep.epsilon() / 8.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn natural(c: f64) -> OscillatorParams {
        OscillatorParams::natural(c).unwrap()
    }

    fn at_eps(eps: f64) -> (OscillatorParams, EnergyPoint) {
        let p = natural((1.0 / eps).sqrt());
        let ep = EnergyPoint::new(&p, 1.0).unwrap();
        (p, ep)
    }

    #[test]
    fn turning_points_examples() {
        let (p, ep) = at_eps(0.1);
        let tp = turning_points_wr(&p, &ep).unwrap();
        assert_relative_eq!(tp.physical.1, 2f64.sqrt(), max_relative = 1e-15);
        assert_eq!(tp.physical.0, -tp.physical.1);
        assert!(tp.unphysical.1.re.abs() < 1e-15);
        assert_relative_eq!(tp.unphysical.1.im, 2.0 * 2f64.sqrt(), max_relative = 1e-14);
        let (p, ep) = at_eps(0.499_999);
        let tp = turning_points_wr(&p, &ep).unwrap();
        assert!(tp.unphysical.1.norm() < 1e-2);
        let p = natural(1.0);
        let ep = EnergyPoint::new(&p, 0.5).unwrap();
        assert!(matches!(turning_points_wr(&p, &ep), Err(Error::EpsilonOutOfRange { .. })));
    }

    #[test]
    fn turning_momenta_examples() {
        let p = natural(10.0);
        let ep = EnergyPoint::new(&p, 1.0).unwrap();
        let tp = turning_momenta_wr(&p, &ep).unwrap();
        let exact = 2f64.sqrt() * 10.0 * (1.0 - 0.98f64.sqrt()).sqrt();
        assert_relative_eq!(tp.physical.1, exact, max_relative = 1e-12);
        assert!((tp.physical.1 - 1.41778).abs() < 1e-5);
        assert!((tp.first_order.unwrap() - 1.41775).abs() < 1e-5);
        // (p₂/p₄)² ≈ ε/2
        let ratio = (tp.physical.1 / tp.unphysical.1.re).powi(2);
        assert!((ratio - 0.005).abs() < 1e-4);
        assert!(tp.unphysical.1.re > tp.physical.1);
    }

    #[test]
    fn turning_momentum_non_relativistic_limit() {
        let p = natural(1e4);
        let ep = EnergyPoint::new(&p, 1.0).unwrap();
        let tp = turning_momenta_wr(&p, &ep).unwrap();
        assert_relative_eq!(tp.physical.1, 2f64.sqrt(), max_relative = 1e-7);
    }

    #[test]
    fn sho_action_examples() {
        assert_eq!(action_sho(&natural(10.0), 1.0).unwrap().j_value, 1.0);
        let p = OscillatorParams::new(1.0, 4.0, 10.0, 1.0).unwrap();
        assert_eq!(action_sho(&p, 3.0).unwrap().j_value, 1.5);
        assert!(action_sho(&p, 0.0).is_err());
    }

    #[test]
    fn wr_pdx_example_and_residue_path() {
        let (p, ep) = at_eps(0.1);
        let j = action_wr_pdx(&p, &ep).unwrap();
        assert_relative_eq!(j.j_value, 1.01875, max_relative = 1e-15);
        assert_eq!(j.order_epsilon, Some(1));
        let r = action_wr_pdx_residue(&p, &ep).unwrap();
        assert_relative_eq!(r, 1.01875, max_relative = 1e-14);
    }

    #[test]
    fn wr_xdp_example() {
        let (p, ep) = at_eps(0.1);
        let j = action_wr_xdp(&p, &ep, 2).unwrap().j_value;
        let s = 0.8f64.sqrt();
        let rho = (1.0 - s) / (1.0 + s);
        let expect = (2.0 / (1.0 + s)).sqrt() * (1.0 - rho / 8.0);
        assert_relative_eq!(j, expect, max_relative = 1e-14);
        assert!((j - 1.020329).abs() < 1e-6, "{j}");
        let first = action_wr_xdp_first_order(&p, &ep).unwrap().j_value;
        assert_relative_eq!(first, 1.01875, max_relative = 1e-15);
    }

    #[test]
    fn wr_xdp_matches_closed_annulus_sum() {
        let (p, ep) = at_eps(0.3);
        let s = (1.0 - 0.6f64).sqrt();
        let rho = (1.0 - s) / (1.0 + s);
        let c = crate::laurent::sqrt_binomial_coeffs(12);
        let series: f64 = (0..10).map(|l| -2.0 * c[l + 1] * c[l] * rho.powi(l as i32)).sum();
        let expect = (2.0 / (1.0 + s)).sqrt() * series;
        assert_relative_eq!(action_wr_xdp(&p, &ep, 10).unwrap().j_value, expect, max_relative = 1e-14);
    }

    #[test]
    fn fullrel_examples() {
        let (p, ep) = at_eps(0.1);
        let r1 = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelPdx, 3).unwrap().j_value;
        assert!((r1 - 1.01856).abs() < 5e-6, "{r1}");
        let r2 = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelXdp, 4).unwrap().j_value;
        assert!((r2 - 1.01858).abs() < 5e-6, "{r2}");
        assert!(matches!(
            action_fullrel(&p, &ep, SchemeTag::ClassicalWrPdx, 2),
            Err(Error::UnknownForm(_))
        ));
        assert!(action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelPdx, 4).is_err());
        let (p, ep) = at_eps(1.5);
        assert!(matches!(
            action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelPdx, 3),
            Err(Error::EpsilonOutOfRange { .. })
        ));
    }

    #[test]
    fn quadrature_sho_is_exact() {
        let spec = HamiltonianSpec::sho(natural(1.0));
        assert_relative_eq!(action_quadrature(&spec, 1.0).unwrap(), 1.0, max_relative = 1e-13);
    }

    #[test]
    fn quadrature_rejects_negative_energy() {
        let spec = HamiltonianSpec::sho(natural(1.0));
        assert!(matches!(action_quadrature(&spec, -1.0), Err(Error::NoClassicalRegion(_))));
    }

    #[test]
    fn frequency_examples() {
        let p = natural(10.0);
        let w = frequency_from_action(|e| Ok(action_sho(&p, e)?.j_value), 2.0).unwrap();
        assert_relative_eq!(w, 1.0, max_relative = 1e-8);
        let (p, ep) = at_eps(0.08);
        assert!((frequency_wr(&p, &ep).unwrap() - 0.970874).abs() < 1e-6);
    }

    #[test]
    fn frequency_fails_on_flat_action() {
        assert!(matches!(
            frequency_from_action(|_| Ok(1.0), 1.0),
            Err(Error::DerivativeNotFinite(_))
        ));
    }
}
