//! First-order perturbative shifts and semiclassical levels.

use super::ladder::{LadderState, Op};
use crate::classical::action_wr_pdx;
use crate::error::Result;
use crate::params::{EnergyPoint, OscillatorParams, SchemeTag};
use crate::quantum::{invert_action, SpectrumEntry};

/// −(3/16)ħω₀[(n+½)² + ¼](ħω₀/mc²), the expectation value of −p̂⁴/8m³c² in
/// the n-th oscillator state.
pub fn rs_shift_p4(params: &OscillatorParams, n: usize) -> f64 {
    let nh = n as f64 + 0.5;
    -(3.0 / 16.0) * params.quantum_energy() * (nh * nh + 0.25) * params.level_ratio()
}

/// −⟨n|p̂⁴|n⟩/8m³c² evaluated with ladder operators, p̂ = i√(mħω₀/2)(a† − a).
pub fn rs_shift_p4_ladder(params: &OscillatorParams, n: usize) -> f64 {
    let m = params.mass();
    let t2 = m * params.quantum_energy() / 2.0;
    let p4 = t2 * t2 * LadderState::number(n).apply_n(Op::Diff, 4).amplitude(n);
    -p4 / (8.0 * m.powi(3) * params.light_speed().powi(2))
}

/// (34n³ + 51n² + 59n + 21)/8, the second-order coefficient of a quartic
/// perturbation g·(a + a†)⁴/4 in units of ħω₀.
fn second_order_poly(n: usize) -> f64 {
    let n = n as f64;
    (34.0 * n.powi(3) + 51.0 * n * n + 59.0 * n + 21.0) / 8.0
}

/// Second-order shift from δx⁴: −(1/8)(34n³+51n²+59n+21) g² ħω₀ with
/// g = δħ/(m²ω₀³).
pub fn aho_second_order_shift(params: &OscillatorParams, delta: f64, n: usize) -> f64 {
    let g = delta * params.hbar() / (params.mass().powi(2) * params.omega0().powi(3));
    -second_order_poly(n) * g * g * params.quantum_energy()
}

/// Second-order shift from −p̂⁴/8m³c², the quartic result with
/// g = −(ħω₀/mc²)/8.
pub fn wr_second_order_shift(params: &OscillatorParams, n: usize) -> f64 {
    let g = -params.level_ratio() / 8.0;
    -second_order_poly(n) * g * g * params.quantum_energy()
}

/// Semiclassical level: the root of (Ẽ/ω₀)(1 + 3ε/16) = (n + ½)ħ.
pub fn jwkb_levels_wr(params: &OscillatorParams, n: usize) -> Result<SpectrumEntry> {
    let hbar = params.hbar();
    let action = |e: f64| -> Result<f64> {
        let ep = EnergyPoint::new(params, e)?;
        Ok(action_wr_pdx(params, &ep)?.j_value - 0.5 * hbar)
    };
    let e = invert_action(action, n, params)?;
    Ok(SpectrumEntry::new(params, n, e, SchemeTag::JwkbWr))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_rs_shift() {
        let p = OscillatorParams::with_level_ratio(0.01).unwrap();
        assert!((rs_shift_p4(&p, 0) + 9.375e-4).abs() < 1e-15);
        assert!((rs_shift_p4_ladder(&p, 0) + 9.375e-4).abs() < 1e-15);
    }

    #[test]
    fn second_order_ground_state() {
        let p = OscillatorParams::natural(1.0).unwrap();
        assert!((aho_second_order_shift(&p, 0.1, 0) + 21.0 / 8.0 * 0.01).abs() < 1e-15);
    }

    #[test]
    fn jwkb_ground_state_correction() {
        let p = OscillatorParams::with_level_ratio(0.01).unwrap();
        let level = jwkb_levels_wr(&p, 0).unwrap();
        assert!((level.correction + 4.6875e-4).abs() < 2e-6);
    }
}
