//! Harmonic-oscillator ladder algebra on sparse number-state vectors.
//!
//! With x̂ = √(ħ/2mω₀)(a + a†) and p̂ = i√(mħω₀/2)(a† − a) every matrix
//! element of x̂², x̂⁴, p̂², p̂⁴ is real and exact: the operators are applied
//! to a number state one ladder step at a time, with no basis truncation.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    /// a
    Lower,
    /// a†
    Raise,
    /// a + a†
    Sum,
    /// a† − a
    Diff,
}

/// A finite superposition of number states with real amplitudes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LadderState(BTreeMap<usize, f64>);

impl LadderState {
    pub fn number(n: usize) -> Self {
        Self(BTreeMap::from([(n, 1.0)]))
    }

    pub fn amplitude(&self, n: usize) -> f64 {
        self.0.get(&n).copied().unwrap_or(0.0)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.0.iter().map(|(&n, &a)| (n, a))
    }

    /// α a|ψ⟩ + β a†|ψ⟩
    fn ladder(&self, alpha: f64, beta: f64) -> Self {
        let mut out = BTreeMap::new();
        for (&n, &amp) in &self.0 {
            if alpha != 0.0 && n > 0 {
                *out.entry(n - 1).or_insert(0.0) += alpha * amp * (n as f64).sqrt();
            }
            if beta != 0.0 {
                *out.entry(n + 1).or_insert(0.0) += beta * amp * ((n + 1) as f64).sqrt();
            }
        }
        out.retain(|_, a| *a != 0.0);
        Self(out)
    }

    pub fn apply(&self, op: Op) -> Self {
        match op {
            Op::Lower => self.ladder(1.0, 0.0),
            Op::Raise => self.ladder(0.0, 1.0),
            Op::Sum => self.ladder(1.0, 1.0),
            Op::Diff => self.ladder(-1.0, 1.0),
        }
    }

    /// Applies `op` `times` times.
    pub fn apply_n(&self, op: Op, times: usize) -> Self {
        (0..times).fold(self.clone(), |s, _| s.apply(op))
    }
}

/// ⟨bra| O₁ O₂ … |ket⟩ for `ops = [O₁, O₂, …]`.
pub fn matrix_element(bra: usize, ops: &[Op], ket: usize) -> f64 {
    ops.iter()
        .rev()
        .fold(LadderState::number(ket), |s, &op| s.apply(op))
        .amplitude(bra)
}
