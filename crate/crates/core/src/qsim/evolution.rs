use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Result, SvcError};
use crate::linalg::{check_hermitian, check_square, expm_hermitian, hermitian_deviation, op_norm, CMatrix};

pub const HERMITIAN_TOL: f64 = 1e-9;
pub const MAX_TROTTER_DIM: usize = 64;
/// Largest accepted `|Δt|·‖K̂‖` for a density step.
pub const MAX_STEP_ANGLE: f64 = 0.1;

/// Bias/training-row coupling block `[[0, 1ᵀ], [1, 0]]`, spectrum `±√M` and zeros.
pub fn star_graph(m: usize) -> Result<DMatrix<f64>> {
    if m == 0 {
        return Err(SvcError::InvalidArgument("star graph needs M >= 1".into()));
    }
    let mut j = DMatrix::zeros(m + 1, m + 1);
    for i in 1..=m {
        j[(0, i)] = 1.0;
        j[(i, 0)] = 1.0;
    }
    Ok(j)
}

#[derive(Debug, Clone)]
pub struct TrotterResult {
    pub approx: CMatrix,
    pub exact: CMatrix,
    /// Spectral norm of `approx − exact`.
    pub error: f64,
}

/// First-order split of `exp(−i(J+K+G)Δt/trF)` into
/// `exp(−iJΔt/trF)·exp(−iKΔt/trF)·exp(−iGΔt/trF)`.
pub fn trotter_exp(j: &CMatrix, k: &CMatrix, g: &CMatrix, dt: f64, tr_f: f64) -> Result<TrotterResult> {
    for m in [j, k, g] {
        check_hermitian(m, HERMITIAN_TOL)?;
    }
    let n = j.nrows();
    for m in [k, g] {
        if m.nrows() != n {
            return Err(SvcError::DimensionMismatch { expected: n, found: m.nrows() });
        }
    }
    if n > MAX_TROTTER_DIM {
        return Err(SvcError::InvalidArgument(format!("dimension {n} exceeds {MAX_TROTTER_DIM}")));
    }
    if tr_f == 0.0 || !tr_f.is_finite() {
        return Err(SvcError::InvalidArgument(format!("trace normalizer {tr_f} must be finite and nonzero")));
    }
    let t = dt / tr_f;
    let approx = expm_hermitian(j, t) * expm_hermitian(k, t) * expm_hermitian(g, t);
    let exact = expm_hermitian(&(j + k + g), t);
    let error = op_norm(&(&approx - &exact));
    Ok(TrotterResult { approx, exact, error })
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_hermitian(&entries, 1e-10)?;
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(SvcError::InvalidArgument(format!("density trace {trace} differs from 1")));
        }
        let min = SymmetricEigen::new(entries.clone()).eigenvalues.min();
        if min < -1e-9 {
            return Err(SvcError::InvalidArgument(format!("density eigenvalue {min} is negative")));
        }
        Ok(Self { entries })
    }

    pub fn pure(state: &StateVector) -> Self {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        Self { entries: &v * v.adjoint() }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }
}

fn check_step(rho: &DensityMatrix, k_hat: &CMatrix, dt: f64) -> Result<()> {
    check_square(k_hat.nrows(), k_hat.ncols())?;
    if k_hat.nrows() != rho.dim() {
        return Err(SvcError::DimensionMismatch { expected: rho.dim(), found: k_hat.nrows() });
    }
    let deviation = hermitian_deviation(k_hat);
    if deviation > HERMITIAN_TOL {
        return Err(SvcError::NotHermitian { deviation });
    }
    let angle = dt.abs() * op_norm(k_hat);
    if angle > MAX_STEP_ANGLE {
        return Err(SvcError::InvalidArgument(format!("|dt|·‖K‖ = {angle} exceeds {MAX_STEP_ANGLE}")));
    }
    Ok(())
}

/// `e^{−iK̂Δt} ρ e^{+iK̂Δt}`.
pub fn density_commutator_step(rho: &DensityMatrix, k_hat: &CMatrix, dt: f64) -> Result<DensityMatrix> {
    check_step(rho, k_hat, dt)?;
    let u = expm_hermitian(k_hat, dt);
    let mut out = &u * &rho.entries * u.adjoint();
    // restore exact Hermiticity lost to rounding
    out = (&out + out.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(DensityMatrix { entries: out })
}

/// `ρ − iΔt[K̂, ρ]`, the first-order expansion (not itself a valid state).
pub fn first_order_commutator_step(rho: &DensityMatrix, k_hat: &CMatrix, dt: f64) -> Result<CMatrix> {
    check_step(rho, k_hat, dt)?;
    let comm = k_hat * &rho.entries - &rho.entries * k_hat;
    Ok(&rho.entries - comm * Complex64::new(0.0, dt))
}
