//! Dense linear-algebra helpers shared by the solvers and the emulator.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Result, SvcError};

pub type CMatrix = DMatrix<Complex64>;

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|v| Complex64::new(v, 0.0))
}

/// Largest |m_ij − m_ji| entry.
pub fn symmetric_deviation(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Largest |h_ij − conj(h_ji)| entry.
pub fn hermitian_deviation(h: &CMatrix) -> f64 {
    let n = h.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn check_square(rows: usize, cols: usize) -> Result<()> {
    if rows != cols {
        return Err(SvcError::DimensionMismatch { expected: rows, found: cols });
    }
    Ok(())
}

pub fn check_hermitian(h: &CMatrix, tol: f64) -> Result<()> {
    check_square(h.nrows(), h.ncols())?;
    let deviation = hermitian_deviation(h);
    if deviation > tol {
        return Err(SvcError::NotHermitian { deviation });
    }
    Ok(())
}

pub fn check_symmetric(m: &DMatrix<f64>, tol: f64) -> Result<()> {
    check_square(m.nrows(), m.ncols())?;
    let deviation = symmetric_deviation(m);
    if deviation > tol {
        return Err(SvcError::NotHermitian { deviation });
    }
    Ok(())
}

/// `exp(-i·t·H)` for Hermitian `H`, through its eigendecomposition.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.clone());
    let phases = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -l * t)),
    );
    let v = &eig.eigenvectors;
    v * DMatrix::from_diagonal(&phases) * v.adjoint()
}

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

pub fn op_norm_real(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// 2-norm condition number from singular values; infinite when singular.
pub fn condition_estimate(m: &DMatrix<f64>) -> f64 {
    let sv = m.singular_values();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        sv.max() / min
    }
}
