use num_complex::Complex64;
use rand::Rng;

use crate::error::{Result, SvcError};
use crate::rng::SvcRng;

pub const NORM_TOL: f64 = 1e-10;

/// Normalized amplitudes over `n_qubits` qubits (length `2^n`).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SvcError::InvalidArgument(format!("state length {len} is not a power of two >= 2")));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(SvcError::InvalidArgument(format!("state norm² {norm_sq} differs from 1")));
        }
        Ok(Self { n_qubits: len.trailing_zeros() as usize, amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amplitudes }
    }

    pub fn uniform(n_qubits: usize) -> Self {
        let len = 1usize << n_qubits;
        let a = Complex64::new(1.0 / (len as f64).sqrt(), 0.0);
        Self { n_qubits, amplitudes: vec![a; len] }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(SvcError::DimensionMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// |⟨self|other⟩|², insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `self ⊗ other`, with `self` as the high-order register.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.len() * other.len());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Self { n_qubits: self.n_qubits + other.n_qubits, amplitudes }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Samples a computational-basis outcome.
    pub fn measure(&self, rng: &mut SvcRng) -> usize {
        sample_index(self.amplitudes.iter().map(|a| a.norm_sqr()), rng)
    }
}

pub(crate) fn sample_index(weights: impl Iterator<Item = f64> + Clone, rng: &mut SvcRng) -> usize {
    let total: f64 = weights.clone().sum();
    let mut target = rng.random::<f64>() * total;
    let mut last = 0;
    for (i, w) in weights.enumerate() {
        if w > 0.0 {
            last = i;
            if target < w {
                return i;
            }
            target -= w;
        }
    }
    last
}

fn padded_len(n: usize) -> usize {
    n.next_power_of_two().max(2)
}

/// Maps a nonzero real vector to the state ∝ x, zero-padded to a power of
/// two (at least one qubit). The Euclidean norm is returned for descaling.
pub fn amplitude_encode(x: &[f64]) -> Result<(StateVector, f64)> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if x.is_empty() || norm == 0.0 {
        return Err(SvcError::ZeroVector { index: 0 });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); padded_len(x.len())];
    for (a, v) in amplitudes.iter_mut().zip(x) {
        *a = Complex64::new(v / norm, 0.0);
    }
    let n_qubits = amplitudes.len().trailing_zeros() as usize;
    Ok((StateVector { n_qubits, amplitudes }, norm))
}

/// Address ⊗ data register produced by a QRAM lookup.
#[derive(Debug, Clone)]
pub struct QramState {
    pub state: StateVector,
    pub address_qubits: usize,
    pub data_qubits: usize,
    /// Norms of the stored cells, kept classically for descaling.
    pub norms: Vec<f64>,
}

/// Emulates `Σ_l ψ_l |l⟩_A → Σ_l ψ_l |l⟩_A |D_l⟩_D` with every cell
/// amplitude-encoded in a common data register.
pub fn qram_superposition(cells: &[Vec<f64>], weights: &[Complex64]) -> Result<QramState> {
    if cells.is_empty() || cells.len() != weights.len() {
        return Err(SvcError::InvalidArgument(format!("{} cells with {} weights", cells.len(), weights.len())));
    }
    let weight_norm: f64 = weights.iter().map(|w| w.norm_sqr()).sum();
    if (weight_norm - 1.0).abs() > NORM_TOL {
        return Err(SvcError::InvalidArgument(format!("address weights have norm² {weight_norm}")));
    }
    let data_len = padded_len(cells.iter().map(Vec::len).max().unwrap_or(1));
    let addr_len = padded_len(cells.len());
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); addr_len * data_len];
    let mut norms = Vec::with_capacity(cells.len());
    for (l, (cell, w)) in cells.iter().zip(weights).enumerate() {
        let (encoded, norm) = amplitude_encode(cell).map_err(|_| SvcError::ZeroVector { index: l })?;
        norms.push(norm);
        for (d, a) in encoded.amplitudes().iter().enumerate() {
            amplitudes[l * data_len + d] = w * a;
        }
    }
    Ok(QramState {
        state: StateVector::new(amplitudes)?,
        address_qubits: addr_len.trailing_zeros() as usize,
        data_qubits: data_len.trailing_zeros() as usize,
        norms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn encodes_and_pads() {
        let (s, norm) = amplitude_encode(&[1.0, 1.0]).unwrap();
        assert_eq!(s.n_qubits(), 1);
        assert!((norm - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.amplitudes()[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);

        let (s, _) = amplitude_encode(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!((s.len(), s.n_qubits()), (4, 2));
        assert_eq!(s, StateVector::basis(2, 0));
        assert!(matches!(amplitude_encode(&[0.0, 0.0]), Err(SvcError::ZeroVector { .. })));
    }

    #[test]
    fn qram_single_cell() {
        let q = qram_superposition(&[vec![0.0, 2.0]], &[Complex64::new(1.0, 0.0)]).unwrap();
        let expected = StateVector::basis(1, 0).tensor(&StateVector::basis(1, 1));
        assert_eq!(q.state, expected);
        assert_eq!(q.norms, vec![2.0]);
    }

    #[test]
    fn qram_rejects_unnormalized_weights_and_zero_cells() {
        let one = Complex64::new(1.0, 0.0);
        assert!(qram_superposition(&[vec![1.0], vec![2.0]], &[one, one]).is_err());
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        assert!(matches!(
            qram_superposition(&[vec![1.0], vec![0.0]], &[h, h]),
            Err(SvcError::ZeroVector { index: 1 })
        ));
    }

    #[test]
    fn measurement_follows_support() {
        let mut rng = rng_from_seed(3);
        let s = StateVector::basis(3, 5);
        assert!((0..20).all(|_| s.measure(&mut rng) == 5));
        assert!(StateVector::new(vec![Complex64::new(1.0, 0.0); 3]).is_err());
    }
}
