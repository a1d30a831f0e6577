//! Independent brute-force references for the series and closed-form paths.
//!
//! Nothing here calls into the Laurent or Riccati machinery. Trajectories are
//! integrated with a fixed-step Runge-Kutta scheme, while spectra and
//! perturbative shifts are built from exact ladder-operator matrix elements.

mod diagonal;
mod jacobi;
mod ladder;
mod perturbation;
mod rk4;

pub use diagonal::{diagonalize, diagonalize_levels, hamiltonian_matrix, DiagonalizedLevels, MAX_BASIS};
pub use jacobi::{jacobi_eigen, SymmetricEigen, MAX_SWEEPS};
pub use ladder::{matrix_element, LadderState, Op};
pub use perturbation::{
    aho_second_order_shift, jwkb_levels_wr, rs_shift_p4, rs_shift_p4_ladder, wr_second_order_shift,
};
pub use rk4::{rk4_period, rk4_period_fixed, PeriodRun, DRIFT_LIMIT, MAX_HALVINGS};

use crate::error::{Error, Result};
use crate::params::{OscillatorParams, SchemeTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// p²/2m + ½kx²
    Sho,
    /// p²/2m − p⁴/8m³c² + ½kx²
    WeakRel,
    /// √(p²c² + m²c⁴) + ½kx², measured from the rest energy
    FullRel,
    /// p²/2m + ½kx² + δx⁴
    QuarticAho,
}

/// A one-dimensional oscillator Hamiltonian.
///
/// Energies are always mechanical energies Ẽ: for the fully relativistic kind
/// the rest energy mc² is subtracted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianSpec {
    pub kind: HamiltonianKind,
    pub params: OscillatorParams,
    /// Quartic strength, only read for [`HamiltonianKind::QuarticAho`].
    pub delta: f64,
}

impl HamiltonianSpec {
    pub fn sho(params: OscillatorParams) -> Self {
        Self {
            kind: HamiltonianKind::Sho,
            params,
            delta: 0.0,
        }
    }

    pub fn weak_rel(params: OscillatorParams) -> Self {
        Self {
            kind: HamiltonianKind::WeakRel,
            params,
            delta: 0.0,
        }
    }

    pub fn full_rel(params: OscillatorParams) -> Self {
        Self {
            kind: HamiltonianKind::FullRel,
            params,
            delta: 0.0,
        }
    }

    pub fn quartic(params: OscillatorParams, delta: f64) -> Self {
        Self {
            kind: HamiltonianKind::QuarticAho,
            params,
            delta,
        }
    }

    fn m(&self) -> f64 {
        self.params.mass()
    }

    fn k(&self) -> f64 {
        self.params.stiffness()
    }

    fn mc2(&self) -> f64 {
        self.params.rest_energy()
    }

    pub fn potential(&self, x: f64) -> f64 {
        let v = 0.5 * self.k() * x * x;
        match self.kind {
            HamiltonianKind::QuarticAho => v + self.delta * x.powi(4),
            _ => v,
        }
    }

    pub fn kinetic(&self, p: f64) -> f64 {
        let m = self.m();
        match self.kind {
            HamiltonianKind::Sho | HamiltonianKind::QuarticAho => p * p / (2.0 * m),
            HamiltonianKind::WeakRel => p * p / (2.0 * m) - p.powi(4) / (8.0 * m.powi(3) * self.params.light_speed().powi(2)),
            HamiltonianKind::FullRel => {
                let c = self.params.light_speed();
                let pc2 = p * p * c * c;
                pc2 / ((pc2 + self.mc2() * self.mc2()).sqrt() + self.mc2())
            }
        }
    }

    pub fn energy(&self, x: f64, p: f64) -> f64 {
        self.kinetic(p) + self.potential(x)
    }

    /// ∂H/∂p
    pub fn velocity(&self, p: f64) -> f64 {
        let m = self.m();
        let c = self.params.light_speed();
        match self.kind {
            HamiltonianKind::Sho | HamiltonianKind::QuarticAho => p / m,
            HamiltonianKind::WeakRel => p / m - p.powi(3) / (2.0 * m.powi(3) * c * c),
            HamiltonianKind::FullRel => p * c * c / (p * p * c * c + self.mc2() * self.mc2()).sqrt(),
        }
    }

    /// −∂H/∂x
    pub fn force(&self, x: f64) -> f64 {
        match self.kind {
            HamiltonianKind::QuarticAho => -self.k() * x - 4.0 * self.delta * x.powi(3),
            _ => -self.k() * x,
        }
    }

    /// Positive turning point x₂ of the orbit with mechanical energy `e`.
    pub fn turning_point(&self, e: f64) -> Result<f64> {
        if !(e > 0.0) {
            return Err(Error::NoClassicalRegion(e));
        }
        if self.kind == HamiltonianKind::WeakRel && e >= 0.5 * self.mc2() {
            return Err(Error::EpsilonOutOfRange {
                epsilon: e / self.mc2(),
                limit: 0.5,
            });
        }
        let k = self.k();
        match self.kind {
            HamiltonianKind::QuarticAho => {
                // δy² + (k/2)y − E = 0 with y = x₂²
                let disc = 0.25 * k * k + 4.0 * self.delta * e;
                if disc < 0.0 {
                    return Err(Error::NoClassicalRegion(e));
                }
                let y = 2.0 * e / (0.5 * k + disc.sqrt());
                if self.delta < 0.0 && 0.5 * k + 2.0 * self.delta * y <= 0.0 {
                    return Err(Error::NoClassicalRegion(e));
                }
                Ok(y.sqrt())
            }
            _ => Ok((2.0 * e / k).sqrt()),
        }
    }

    /// `p(x) / √(x₂² − x²)` on the physical branch, a smooth function on
    /// [−x₂, x₂].
    pub fn momentum_factor(&self, x: f64, x2: f64) -> f64 {
        let m = self.m();
        let k = self.k();
        let gap = (x2 * x2 - x * x).max(0.0);
        match self.kind {
            HamiltonianKind::Sho => (m * k).sqrt(),
            HamiltonianKind::WeakRel => {
                let w = 0.5 * k * gap / self.mc2();
                (m * k).sqrt() * (2.0 / (1.0 + (1.0 - 2.0 * w).sqrt())).sqrt()
            }
            HamiltonianKind::FullRel => (m * k).sqrt() * (1.0 + 0.25 * k * gap / self.mc2()).sqrt(),
            HamiltonianKind::QuarticAho => (2.0 * m * (0.5 * k + self.delta * (x2 * x2 + x * x))).sqrt(),
        }
    }

    /// Momentum on the orbit of energy `e` at position `x` (zero outside).
    pub fn momentum(&self, x: f64, e: f64) -> Result<f64> {
        let x2 = self.turning_point(e)?;
        Ok((x2 * x2 - x * x).max(0.0).sqrt() * self.momentum_factor(x, x2))
    }
}

/// Side-by-side comparison of a formula and an oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub formula_value: f64,
    pub oracle_value: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    /// Relative tolerance the caller considers acceptable.
    pub tolerance_used: f64,
    pub scheme: SchemeTag,
    pub converged: bool,
}

impl OracleReport {
    pub fn new(formula_value: f64, oracle_value: f64, tolerance: f64, scheme: SchemeTag, converged: bool) -> Self {
        let abs_diff = (formula_value - oracle_value).abs();
        let rel_diff = if oracle_value != 0.0 {
            abs_diff / oracle_value.abs()
        } else {
            abs_diff
        };
        Self {
            formula_value,
            oracle_value,
            abs_diff,
            rel_diff,
            tolerance_used: tolerance,
            scheme,
            converged,
        }
    }

    /// Converged and within the relative tolerance.
    pub fn agrees(&self) -> bool {
        self.converged && self.rel_diff <= self.tolerance_used
    }
}

/// Evaluates both sides and reports the discrepancy without judging it.
///
/// Failures of either side are propagated; a mismatch never is.
pub fn compare<F, O>(formula: F, oracle: O, scheme: SchemeTag, tolerance: f64) -> Result<OracleReport>
where
    F: FnOnce() -> Result<f64>,
    O: FnOnce() -> Result<f64>,
{
    let f = formula()?;
    let o = oracle()?;
    Ok(OracleReport::new(f, o, tolerance, scheme, true))
}
