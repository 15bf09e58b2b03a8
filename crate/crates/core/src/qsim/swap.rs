use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::state::StateVector;
use crate::error::{Result, SvcError};
use crate::rng::SvcRng;

/// Measurement budget: analytic probabilities or a finite shot count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shots {
    Exact,
    Count(u64),
}

impl Shots {
    pub fn is_exact(&self) -> bool {
        matches!(self, Shots::Exact)
    }
}

/// Fraction of `shots` Bernoulli(p) trials that succeed.
pub(crate) fn sample_frequency(p: f64, shots: u64, rng: &mut SvcRng) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let hits = Binomial::new(shots, p).expect("p is clamped to [0, 1]").sample(rng);
    hits as f64 / shots as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapTestOutcome {
    /// Probability (or frequency) of reading the ancilla as 0.
    pub p0: f64,
    /// `max(0, 2·p0 − 1)`, the overlap estimate |⟨ψ|φ⟩|².
    pub overlap_sq: f64,
}

impl SwapTestOutcome {
    fn from_p0(p0: f64) -> Self {
        Self { p0, overlap_sq: (2.0 * p0 - 1.0).max(0.0) }
    }
}

/// Swap test between two registers of equal width. The ancilla reads 0 with
/// probability `½ + ½|⟨ψ|φ⟩|²`.
pub fn swap_test(psi: &StateVector, phi: &StateVector, shots: Shots, rng: &mut SvcRng) -> Result<SwapTestOutcome> {
    if psi.n_qubits() != phi.n_qubits() {
        return Err(SvcError::DimensionMismatch { expected: psi.n_qubits(), found: phi.n_qubits() });
    }
    let p0 = 0.5 + 0.5 * psi.fidelity(phi)?;
    match shots {
        Shots::Exact => Ok(SwapTestOutcome::from_p0(p0)),
        Shots::Count(0) => Err(SvcError::InvalidArgument("shots must be >= 1".into())),
        Shots::Count(n) => Ok(SwapTestOutcome::from_p0(sample_frequency(p0, n, rng))),
    }
}
