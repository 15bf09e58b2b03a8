use num_complex::Complex64;

use super::swap::{sample_frequency, Shots};
use crate::error::{Result, SvcError};
use crate::kernels::check_dims;
use crate::rng::SvcRng;

/// Shots per stage, in units of `(Z/2)²/ε²`, that hold the estimator's 2σ
/// error on the dot product near `ε`.
pub const ACCURACY_SHOT_FACTOR: f64 = 1000.0;

/// Upper bound on `max(|x_i|, |x_j|)·t` for the σ_x-coupled evolution.
pub const MAX_ROTATION: f64 = 0.1;

/// Shots per stage for absolute dot-product accuracy `ε` on unit vectors.
pub fn shots_for_accuracy(eps: f64) -> u64 {
    shots_for_norms(eps, 2.0)
}

/// Shots per stage for absolute accuracy `ε` when `|x_i|² + |x_j|² = z`.
/// Statistical errors scale with `z`, so the budget grows as `z²`; it never
/// drops below the unit-vector budget.
pub fn shots_for_norms(eps: f64, z: f64) -> u64 {
    let half = (0.5 * z).max(1.0);
    (ACCURACY_SHOT_FACTOR * half * half / (eps * eps)).ceil().min(u64::MAX as f64) as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProductEstimate {
    pub dot: f64,
    /// Estimate of `Z = |x_i|² + |x_j|²`.
    pub norms_sq_sum: f64,
    /// Estimate of `|x_i − x_j|²`.
    pub dist_sq: f64,
    /// Shots spent per stage; 0 in exact mode.
    pub shots_used: u64,
}

/// Two-qubit state after evolving `(|0⟩−|1⟩)/√2 ⊗ |0⟩` under
/// `H = (a|0⟩⟨0| + b|1⟩⟨1|) ⊗ σ_x` for time `t`. Index = 2·first + ancilla.
pub(crate) fn norm_stage_state(a: f64, b: f64, t: f64) -> [Complex64; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (sa, ca) = (a * t).sin_cos();
    let (sb, cb) = (b * t).sin_cos();
    [
        Complex64::new(h * ca, 0.0),
        Complex64::new(0.0, -h * sa),
        Complex64::new(-h * cb, 0.0),
        Complex64::new(0.0, h * sb),
    ]
}

fn invert_rotation(p_flip: f64, t: f64) -> f64 {
    (2.0 * p_flip).clamp(0.0, 1.0).sqrt().asin() / t
}

/// Lenient core shared with the adjacency pipeline: a zero input yields a
/// zero dot product and `dist² = Z`.
pub(crate) fn estimate_parts(x_i: &[f64], x_j: &[f64], shots: Shots, eps: f64, rng: &mut SvcRng) -> Result<InnerProductEstimate> {
    check_dims(x_i, x_j)?;
    if !(eps > 0.0) {
        return Err(SvcError::InvalidArgument(format!("accuracy {eps} must be > 0")));
    }
    let a = x_i.iter().map(|v| v * v).sum::<f64>().sqrt();
    let b = x_j.iter().map(|v| v * v).sum::<f64>().sqrt();
    let shots = match shots {
        Shots::Exact => None,
        Shots::Count(0) => return Err(SvcError::InvalidArgument("shots must be >= 1".into())),
        Shots::Count(n) => Some(n.max(shots_for_norms(eps, a * a + b * b))),
    };
    if a == 0.0 && b == 0.0 {
        return Ok(InnerProductEstimate { dot: 0.0, norms_sq_sum: 0.0, dist_sq: 0.0, shots_used: shots.unwrap_or(0) });
    }

    // Norm stage: ancilla flips at rates ½sin²(at) and ½sin²(bt).
    let t = MAX_ROTATION / a.max(b);
    let amps = norm_stage_state(a, b, t);
    let (p01, p11) = (amps[1].norm_sqr(), amps[3].norm_sqr());
    let (f01, f11) = match shots {
        None => (p01, p11),
        Some(n) => {
            let f01 = sample_frequency(p01, n, rng);
            let rest = 1.0 - f01;
            let f11 = if rest > 0.0 { sample_frequency(p11 / (1.0 - p01), n, rng) * rest } else { 0.0 };
            (f01, f11)
        }
    };
    let (a_est, b_est) = (invert_rotation(f01, t), invert_rotation(f11, t));
    let z = a_est * a_est + b_est * b_est;
    if a == 0.0 || b == 0.0 || z == 0.0 {
        return Ok(InnerProductEstimate { dot: 0.0, norms_sq_sum: z, dist_sq: z, shots_used: shots.unwrap_or(0) });
    }

    // Swap stage: ancilla of (|0⟩|x̂_i⟩ + |1⟩|x̂_j⟩)/√2 against
    // (â|0⟩ − b̂|1⟩)/√Ẑ, giving p0 = ½ + |x_i − x_j|²/(4Z).
    let (wa, wb) = (a_est / z.sqrt(), b_est / z.sqrt());
    let projected: f64 = x_i
        .iter()
        .zip(x_j)
        .map(|(u, v)| {
            let c = (wa * u / a - wb * v / b) * std::f64::consts::FRAC_1_SQRT_2;
            c * c
        })
        .sum();
    let p0 = 0.5 + 0.5 * projected;
    let p0 = match shots {
        None => p0,
        Some(n) => sample_frequency(p0, n, rng),
    };
    let dist_sq = 2.0 * z * (2.0 * p0 - 1.0).max(0.0);
    Ok(InnerProductEstimate { dot: 0.5 * (z - dist_sq), norms_sq_sum: z, dist_sq, shots_used: shots.unwrap_or(0) })
}

/// Estimates `x_i·x_j` from the norm and swap-test ancilla statistics.
/// In shots mode each stage uses `max(shots, shots_for_norms(ε, Z))` shots,
/// with the norms taken from the encoding step.
pub fn inner_product_estimate(x_i: &[f64], x_j: &[f64], shots: Shots, eps: f64, rng: &mut SvcRng) -> Result<InnerProductEstimate> {
    for (index, x) in [x_i, x_j].into_iter().enumerate() {
        if x.iter().all(|&v| v == 0.0) {
            return Err(SvcError::ZeroVector { index });
        }
    }
    estimate_parts(x_i, x_j, shots, eps, rng)
}
