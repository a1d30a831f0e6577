//! Classical and quantum action variables for relativistic and quartic
//! anharmonic deformations of the harmonic oscillator.
//!
//! Action variables are obtained from the `x⁻¹` coefficient of Laurent
//! expansions of the classical momentum and of the quantum momentum function
//! (the solution of the Riccati form of the Schrödinger equation). Frequencies
//! follow from `ω = (dJ/dE)⁻¹` and spectra from `J(E) = nħ`. The [`oracles`]
//! module holds independent brute-force references built from trajectory
//! integration and oscillator-basis diagonalization.

pub mod classical;
pub mod error;
pub mod gauss;
pub mod laurent;
pub mod oracles;
pub mod params;
pub mod quantum;

pub use error::{Error, Result};
pub use laurent::{AtInfinity, AtOrigin, LaurentSeries};
pub use params::{energy_point, make_params, EnergyPoint, OscillatorParams, Regime, SchemeTag};
