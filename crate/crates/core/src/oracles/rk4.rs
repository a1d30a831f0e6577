//! Classical periods from direct integration of Hamilton's equations.

use std::f64::consts::PI;

use super::HamiltonianSpec;
use crate::error::{Error, Result};

/// Largest accepted relative energy drift over one period.
pub const DRIFT_LIMIT: f64 = 1e-9;

/// Number of times [`rk4_period`] halves the step before giving up.
pub const MAX_HALVINGS: u32 = 6;

/// Integration stops after this many unperturbed periods.
const MAX_PERIODS: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodRun {
    pub period: f64,
    /// Largest relative energy drift seen before the period closed.
    pub drift: f64,
    pub dt: f64,
    pub steps: usize,
}

fn rk4_step(spec: &HamiltonianSpec, x: f64, p: f64, h: f64) -> (f64, f64) {
    let k1x = spec.velocity(p);
    let k1p = spec.force(x);
    let k2x = spec.velocity(p + 0.5 * h * k1p);
    let k2p = spec.force(x + 0.5 * h * k1x);
    let k3x = spec.velocity(p + 0.5 * h * k2p);
    let k3p = spec.force(x + 0.5 * h * k2x);
    let k4x = spec.velocity(p + h * k3p);
    let k4p = spec.force(x + h * k3x);
    (
        x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
    )
}

/// Sub-step τ ∈ (0, dt] at which p crosses zero, by Illinois regula falsi on
/// a single RK4 step of length τ.
fn refine_crossing(spec: &HamiltonianSpec, x: f64, p: f64, pn: f64, dt: f64, tol: f64) -> f64 {
    let (mut a, mut fa) = (0.0, p);
    let (mut b, mut fb) = (dt, pn);
    let mut side = 0i8;
    for _ in 0..200 {
        if fb == fa {
            break;
        }
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = rk4_step(spec, x, p, c).1;
        if fc == 0.0 {
            return c;
        }
        if (fc < 0.0) == (fa < 0.0) {
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
        if (b - a).abs() <= tol {
            break;
        }
    }
    if fa.abs() < fb.abs() {
        a
    } else {
        b
    }
}

/// One fixed-step run from the turning point (x₂, 0).
///
/// The period is the time between the first and second upward zero
/// crossings of p. No step-size control is applied.
pub fn rk4_period_fixed(spec: &HamiltonianSpec, e_tilde: f64, dt: f64, refine_tol: f64) -> Result<PeriodRun> {
    if !(dt > 0.0) || !(refine_tol > 0.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "time step {dt} and refinement tolerance {refine_tol} must be positive"
        )));
    }
    let x2 = spec.turning_point(e_tilde)?;
    let t0 = 2.0 * PI / spec.params.omega0();
    let t_max = MAX_PERIODS * t0;
    let h0 = spec.energy(x2, 0.0);
    let (mut x, mut p) = (x2, 0.0);
    let mut drift: f64 = 0.0;
    let mut crossings = Vec::with_capacity(2);
    let mut i = 0usize;
    loop {
        if i as f64 * dt > t_max {
            return Err(Error::NoPeriodFound(t_max));
        }
        let (xn, pn) = rk4_step(spec, x, p, dt);
        drift = drift.max((spec.energy(xn, pn) - h0).abs() / h0.abs());
        if p < 0.0 && pn >= 0.0 {
            let tau = refine_crossing(spec, x, p, pn, dt, refine_tol * t0);
            crossings.push(i as f64 * dt + tau);
            if crossings.len() == 2 {
                return Ok(PeriodRun {
                    period: crossings[1] - crossings[0],
                    drift,
                    dt,
                    steps: i + 1,
                });
            }
        }
        x = xn;
        p = pn;
        i += 1;
    }
}

/// Period of the orbit with mechanical energy `e_tilde`.
///
/// `dt` must not exceed T₀/1000 with T₀ = 2π/ω₀. The step is halved (up to
/// [`MAX_HALVINGS`] times) until the relative energy drift over the run stays
/// within [`DRIFT_LIMIT`].
pub fn rk4_period(spec: &HamiltonianSpec, e_tilde: f64, dt: f64, refine_tol: f64) -> Result<f64> {
    let t0 = 2.0 * PI / spec.params.omega0();
    if dt > t0 / 1000.0 {
        return Err(Error::ParameterOutOfRange(format!(
            "time step {dt} exceeds T0/1000 = {}",
            t0 / 1000.0
        )));
    }
    let mut dt = dt;
    let mut last_drift = f64::NAN;
    for _ in 0..=MAX_HALVINGS {
        let run = rk4_period_fixed(spec, e_tilde, dt, refine_tol)?;
        if run.drift <= DRIFT_LIMIT {
            return Ok(run.period);
        }
        last_drift = run.drift;
        dt *= 0.5;
    }
    Err(Error::EnergyDriftExceeded {
        drift: last_drift,
        retries: MAX_HALVINGS,
    })
}
