use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Result, SvcError};
use crate::linalg::check_symmetric;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSolution {
    /// Unit vector along the filtered pseudo-inverse applied to `y`.
    pub state: Vec<f64>,
    /// Norm of the unnormalized solution.
    pub scale: f64,
    pub inverted: usize,
    pub filtered: usize,
}

/// Rounds `λ` to `bits` binary digits of a register spanning `±max_abs`.
fn quantize(lambda: f64, max_abs: f64, bits: u32) -> f64 {
    let step = max_abs / (1u64 << bits) as f64;
    (lambda / step).round() * step
}

/// Eigendecomposes `F̂` and applies `1/λ` on every eigencomponent with
/// `|λ| ≥ eig_floor`, dropping the rest. `phase_bits` optionally rounds each
/// eigenvalue to a finite register width first.
pub fn spectral_invert(f_hat: &DMatrix<f64>, y: &[f64], eig_floor: f64, phase_bits: Option<u32>) -> Result<SpectralSolution> {
    check_symmetric(f_hat, 1e-9)?;
    let n = f_hat.nrows();
    if y.len() != n {
        return Err(SvcError::DimensionMismatch { expected: n, found: y.len() });
    }
    if !(eig_floor > 0.0) {
        return Err(SvcError::InvalidArgument(format!("eigenvalue floor {eig_floor} must be > 0")));
    }
    if y.iter().all(|&v| v == 0.0) {
        return Err(SvcError::ZeroVector { index: 0 });
    }
    let eig = SymmetricEigen::new(f_hat.clone());
    let max_abs = eig.eigenvalues.amax();
    let y = DVector::from_column_slice(y);
    let mut z = DVector::zeros(n);
    let (mut inverted, mut filtered) = (0, 0);
    for (r, &lambda) in eig.eigenvalues.iter().enumerate() {
        let lambda = match phase_bits {
            Some(bits) => quantize(lambda, max_abs, bits),
            None => lambda,
        };
        if lambda.abs() < eig_floor {
            filtered += 1;
            continue;
        }
        inverted += 1;
        let e = eig.eigenvectors.column(r);
        z += e * (e.dot(&y) / lambda);
    }
    if inverted == 0 {
        return Err(SvcError::EigenvaluesBelowFloor { floor: eig_floor });
    }
    let scale = z.norm();
    if scale == 0.0 {
        return Err(SvcError::EigenvaluesBelowFloor { floor: eig_floor });
    }
    Ok(SpectralSolution { state: (z / scale).iter().copied().collect(), scale, inverted, filtered })
}
