//! Energy levels: closed forms and root-finding on J(E) = nħ.

use super::anharmonic::quantum_action_aho;
use super::relativistic::{quantum_action_wr_pdx, quantum_action_wr_xdp};
use super::riccati::{riccati_pdx, riccati_xdp, Form};
use crate::classical::{action_fullrel, action_sho, action_wr_pdx, action_wr_xdp, ActionResult};
use crate::error::{Error, Result};
use crate::params::{EnergyPoint, OscillatorParams, SchemeTag};

/// A level whose correction exceeds this fraction of (n+½)ħω₀ lies outside
/// the trust region of the first-order formulas.
pub const TRUST_FRACTION: f64 = 0.2;

/// Terms used when a classical momentum-plane action is inverted.
const XDP_TERMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub n: usize,
    /// Ẽₙ (mechanical energy, rest energy excluded).
    pub energy: f64,
    pub scheme: SchemeTag,
    /// Ẽₙ − (n+½)ħω₀
    pub correction: f64,
    /// False when |correction| > 0.2·(n+½)ħω₀.
    pub trusted: bool,
}

impl SpectrumEntry {
    pub fn new(params: &OscillatorParams, n: usize, energy: f64, scheme: SchemeTag) -> Self {
        let zeroth = (n as f64 + 0.5) * params.quantum_energy();
        let correction = energy - zeroth;
        Self {
            n,
            energy,
            scheme,
            correction,
            trusted: correction.abs() <= TRUST_FRACTION * zeroth,
        }
    }
}

/// J = E/ω₀ − ħ/2 read off the Laurent coefficient b₂ (coordinate form) or
/// b′₂ (momentum form).
pub fn quantum_action_sho(params: &OscillatorParams, e: f64, form: Form) -> Result<ActionResult> {
    let ep = EnergyPoint::new(params, e)?;
    let (solution, scheme) = match form {
        Form::Pdx => (riccati_pdx(params, e, 4)?, SchemeTag::QuantumShoPdx),
        Form::Xdp => (riccati_xdp(params, e, 4)?, SchemeTag::QuantumShoXdp),
    };
    Ok(ActionResult {
        j_value: solution.action()?,
        scheme,
        order_epsilon: None,
        e_point: ep,
        epsilon_limit: f64::INFINITY,
    })
}

/// −(3/16){(n+5/3)² − 25/9}·r in units of ħω₀, written as −(3/16)n(n+10/3)r.
pub fn correction_wr_pdx(n: usize, ratio: f64) -> f64 {
    let n = n as f64;
    -(3.0 / 16.0) * n * (n + 10.0 / 3.0) * ratio
}

/// −(3/16)r{(n+½)² + 4} in units of ħω₀.
pub fn correction_wr_xdp(n: usize, ratio: f64) -> f64 {
    let nh = n as f64 + 0.5;
    -(3.0 / 16.0) * ratio * (nh * nh + 4.0)
}

/// −(3/16)(n+½)²r in units of ħω₀, the first-order semiclassical correction.
pub fn correction_jwkb(n: usize, ratio: f64) -> f64 {
    let nh = n as f64 + 0.5;
    -(3.0 / 16.0) * nh * nh * ratio
}

/// Ẽₙ = [(n+½) − (3/16){(n+5/3)² − 25/9}(ħω₀/mc²)]ħω₀
pub fn eigenvalues_wr_pdx(params: &OscillatorParams, n: usize) -> SpectrumEntry {
    let hw = params.quantum_energy();
    let e = ((n as f64 + 0.5) + correction_wr_pdx(n, params.level_ratio())) * hw;
    SpectrumEntry::new(params, n, e, SchemeTag::QuantumWrPdx)
}

/// Ẽₙ = [(n+½) − (3/16)(ħω₀/mc²){(n+½)² + 4}]ħω₀
pub fn eigenvalues_wr_xdp(params: &OscillatorParams, n: usize) -> SpectrumEntry {
    let hw = params.quantum_energy();
    let e = ((n as f64 + 0.5) + correction_wr_xdp(n, params.level_ratio())) * hw;
    SpectrumEntry::new(params, n, e, SchemeTag::QuantumWrXdp)
}

/// E = ħω₀[N + (3/2)gN²] with g = (δ/k²)ħω₀ and N = n + ½ + (3/8)g.
pub fn eigenvalues_aho(params: &OscillatorParams, delta: f64, n: usize) -> SpectrumEntry {
    let hw = params.quantum_energy();
    let g = delta / params.stiffness().powi(2) * hw;
    let big_n = n as f64 + 0.5 + 0.375 * g;
    let e = hw * (big_n + 1.5 * g * big_n * big_n);
    SpectrumEntry::new(params, n, e, SchemeTag::QuantumAhoPdx)
}

/// Oscillator level from inverting the series action of the given form.
pub fn eigenvalues_sho(params: &OscillatorParams, n: usize, form: Form) -> Result<SpectrumEntry> {
    let scheme = match form {
        Form::Pdx => SchemeTag::QuantumShoPdx,
        Form::Xdp => SchemeTag::QuantumShoXdp,
    };
    level_by_inversion(params, scheme, n, 0.0)
}

/// Solves J(E) = nħ by bracketed regula falsi.
///
/// The search starts on [0.5E₀, 1.5E₀] with E₀ = (n+½)ħω₀ and widens the
/// bracket if needed. The returned root satisfies |J(E) − nħ| ≤ 1e−12·ħ.
pub fn invert_action<F>(j_of_e: F, n: usize, params: &OscillatorParams) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let hbar = params.hbar();
    if hbar <= 0.0 {
        return Err(Error::ParameterOutOfRange("J(E) = n hbar needs hbar > 0".to_string()));
    }
    let target = n as f64 * hbar;
    let tol = 1e-12 * hbar;
    let f = |e: f64| j_of_e(e).map(|j| j - target);
    let bracket_err = || Error::BracketNotFound { target };

    let e0 = (n as f64 + 0.5) * params.quantum_energy();
    let (mut lo, mut hi) = ((0.5 * e0).max(f64::MIN_POSITIVE), 1.5 * e0);
    let mut flo = f(lo).map_err(|_| bracket_err())?;
    let mut fhi = f(hi).map_err(|_| bracket_err())?;
    if flo > fhi {
        return Err(Error::NotMonotonic { lo, hi });
    }
    for _ in 0..60 {
        if flo <= 0.0 {
            break;
        }
        hi = lo;
        fhi = flo;
        lo *= 0.5;
        flo = f(lo).map_err(|_| bracket_err())?;
    }
    for _ in 0..60 {
        if fhi >= 0.0 {
            break;
        }
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = f(hi).map_err(|_| bracket_err())?;
    }
    if !(flo <= 0.0 && fhi >= 0.0) {
        return Err(bracket_err());
    }
    if flo.abs() <= tol {
        return Ok(lo);
    }
    if fhi.abs() <= tol {
        return Ok(hi);
    }

    let (mut a, mut fa, mut b, mut fb) = (lo, flo, hi, fhi);
    let mut side = 0i8;
    for _ in 0..400 {
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let fc = f(c)?;
        if fc.abs() <= tol {
            return Ok(c);
        }
        if fc < 0.0 {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        if b - a <= 4.0 * f64::EPSILON * b {
            break;
        }
    }
    let (fa_true, fb_true) = (f(a)?, f(b)?);
    let best = if fa_true.abs() <= fb_true.abs() { (a, fa_true) } else { (b, fb_true) };
    if best.1.abs() <= tol {
        Ok(best.0)
    } else if fa_true > fb_true {
        Err(Error::NotMonotonic { lo: a, hi: b })
    } else {
        Err(bracket_err())
    }
}

/// J(E) for any scheme that defines an action. Semiclassical quantization
/// J_C(E) = (n+½)ħ is expressed as J_C(E) − ħ/2 = nħ.
pub fn action_for_scheme(params: &OscillatorParams, scheme: SchemeTag, e: f64, delta: f64) -> Result<f64> {
    let ep = || EnergyPoint::new(params, e);
    let j = match scheme {
        SchemeTag::ClassicalSho => action_sho(params, e)?.j_value,
        SchemeTag::ClassicalWrPdx => action_wr_pdx(params, &ep()?)?.j_value,
        SchemeTag::ClassicalWrXdp => action_wr_xdp(params, &ep()?, XDP_TERMS)?.j_value,
        SchemeTag::ClassicalFullRelPdx => action_fullrel(params, &ep()?, scheme, 3)?.j_value,
        SchemeTag::ClassicalFullRelXdp => action_fullrel(params, &ep()?, scheme, 4)?.j_value,
        SchemeTag::QuantumShoPdx => quantum_action_sho(params, e, Form::Pdx)?.j_value,
        SchemeTag::QuantumShoXdp => quantum_action_sho(params, e, Form::Xdp)?.j_value,
        SchemeTag::QuantumWrPdx => quantum_action_wr_pdx(params, &ep()?)?.j_value,
        SchemeTag::QuantumWrXdp => quantum_action_wr_xdp(params, &ep()?)?.j_value,
        SchemeTag::QuantumAhoPdx => quantum_action_aho(params, e, delta)?.j_value,
        SchemeTag::JwkbWr => action_wr_pdx(params, &ep()?)?.j_value - 0.5 * params.hbar(),
        SchemeTag::RayleighSchrodinger => {
            return Err(Error::UnknownForm(format!("{scheme} defines no action variable")))
        }
    };
    Ok(j)
}

/// Level n of a quantum scheme by root-finding on its action.
pub fn level_by_inversion(params: &OscillatorParams, scheme: SchemeTag, n: usize, delta: f64) -> Result<SpectrumEntry> {
    if !scheme.has_spectrum() || scheme == SchemeTag::RayleighSchrodinger {
        return Err(Error::UnknownForm(format!("{scheme} has no action to invert")));
    }
    let e = invert_action(|e| action_for_scheme(params, scheme, e, delta), n, params)?;
    Ok(SpectrumEntry::new(params, n, e, scheme))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn natural(c: f64) -> OscillatorParams {
        OscillatorParams::natural(c).unwrap()
    }

    #[test]
    fn sho_action_example() {
        let p = natural(10.0);
        for form in [Form::Pdx, Form::Xdp] {
            assert_eq!(quantum_action_sho(&p, 1.5, form).unwrap().j_value, 1.0);
        }
        let classical = OscillatorParams::new(1.0, 1.0, 10.0, 0.0).unwrap();
        assert_eq!(quantum_action_sho(&classical, 1.5, Form::Pdx).unwrap().j_value, 1.5);
    }

    #[test]
    fn sho_inversion() {
        let p = natural(10.0);
        let e0 = invert_action(|e| Ok(quantum_action_sho(&p, e, Form::Pdx)?.j_value), 0, &p).unwrap();
        assert!((e0 - 0.5).abs() < 1e-12);
        let e7 = eigenvalues_sho(&p, 7, Form::Xdp).unwrap();
        assert!((e7.energy - 7.5).abs() < 1e-12);
        assert!(e7.correction.abs() < 1e-12);
    }

    #[test]
    fn wr_pdx_closed_form() {
        let p = OscillatorParams::with_level_ratio(0.01).unwrap();
        let l = eigenvalues_wr_pdx(&p, 1);
        assert!((l.energy - 1.491875).abs() < 1e-12);
        assert_eq!(eigenvalues_wr_pdx(&p, 0).correction, 0.0);
        assert!(l.trusted);
    }

    #[test]
    fn wr_xdp_closed_form() {
        let p = OscillatorParams::with_level_ratio(0.01).unwrap();
        assert!((eigenvalues_wr_xdp(&p, 1).energy - 1.48828125).abs() < 1e-12);
        let gap = eigenvalues_wr_pdx(&p, 1).energy - eigenvalues_wr_xdp(&p, 1).energy;
        assert!((gap - 0.00359375).abs() < 1e-12);
    }

    #[test]
    fn wr_inversion_matches_closed_form() {
        let p = OscillatorParams::with_level_ratio(0.01).unwrap();
        let root = level_by_inversion(&p, SchemeTag::QuantumWrPdx, 1, 0.0).unwrap();
        let closed = eigenvalues_wr_pdx(&p, 1);
        assert!((root.energy - closed.energy).abs() < 10.0 * 0.01f64.powi(2));
    }

    #[test]
    fn aho_closed_form() {
        let p = natural(10.0);
        let l = eigenvalues_aho(&p, 0.001, 0);
        assert!((l.energy - 0.5007506).abs() < 1e-7);
        assert_eq!(eigenvalues_aho(&p, 0.0, 3).energy, 3.5);
    }

    #[test]
    fn trust_region_flag() {
        let p = OscillatorParams::with_level_ratio(0.1).unwrap();
        assert!(!eigenvalues_wr_pdx(&p, 20).trusted);
    }

    #[test]
    fn inversion_needs_quantum() {
        let p = OscillatorParams::new(1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(invert_action(Ok, 1, &p).is_err());
    }

    #[test]
    fn inversion_reports_decreasing_action() {
        let p = natural(10.0);
        assert!(matches!(invert_action(|e| Ok(-e), 1, &p), Err(Error::NotMonotonic { .. })));
    }

    #[test]
    fn rs_has_no_action() {
        let p = natural(10.0);
        assert!(level_by_inversion(&p, SchemeTag::RayleighSchrodinger, 0, 0.0).is_err());
    }
}
