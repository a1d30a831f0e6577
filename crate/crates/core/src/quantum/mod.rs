//! Quantum action variables from the Riccati form of the Schrödinger
//! equation, and the spectra obtained from J(E) = nħ.

mod anharmonic;
mod relativistic;
mod riccati;
mod spectrum;

pub use anharmonic::{
    aho_coeffs, aho_coeffs_rederived, quantum_action_aho, quantum_action_aho_residue, AhoCoefficients, SMALLNESS_WARN,
};
pub use relativistic::{
    quantum_action_wr_pdx, quantum_action_wr_pdx_residue, quantum_action_wr_xdp, quantum_action_wr_xdp_closed,
    wr_correction_pdx, wr_correction_pdx_rederived, wr_momentum_series, WrCorrection,
};
pub use riccati::{riccati_pdx, riccati_residual, riccati_xdp, Form, RiccatiSolution, MIN_ORDER, RESIDUAL_TOL};
pub use spectrum::{
    action_for_scheme, correction_jwkb, correction_wr_pdx, correction_wr_xdp, eigenvalues_aho,
    eigenvalues_sho, eigenvalues_wr_pdx, eigenvalues_wr_xdp, invert_action, level_by_inversion, quantum_action_sho,
    SpectrumEntry, TRUST_FRACTION,
};
