//! Classical kernels and kernel-matrix assembly.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Result, SvcError};

/// Kernel family with exactly the parameters of its kind.
///
/// The polynomial kernel is homogeneous, `(x·y)^d`, and the Gaussian kernel
/// is `exp(-σ‖x−y‖²)` with σ acting as an inverse width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelSpec {
    Linear,
    Polynomial { degree: u32 },
    Gaussian { sigma: f64 },
}

impl KernelSpec {
    pub fn polynomial(degree: u32) -> Result<Self> {
        let spec = KernelSpec::Polynomial { degree };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        let spec = KernelSpec::Gaussian { sigma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Linear => Ok(()),
            KernelSpec::Polynomial { degree } if degree >= 1 => Ok(()),
            KernelSpec::Polynomial { degree } => {
                Err(SvcError::InvalidArgument(format!("polynomial degree {degree} must be >= 1")))
            }
            KernelSpec::Gaussian { sigma } if sigma > 0.0 && sigma.is_finite() => Ok(()),
            KernelSpec::Gaussian { sigma } => Err(SvcError::InvalidArgument(format!("gaussian sigma {sigma} must be > 0"))),
        }
    }

    /// Applies the kernel to a precomputed dot product and squared distance.
    pub(crate) fn from_parts(&self, dot: f64, dist_sq: f64) -> f64 {
        match *self {
            KernelSpec::Linear => dot,
            KernelSpec::Polynomial { degree } => dot.powi(degree as i32),
            KernelSpec::Gaussian { sigma } => (-sigma * dist_sq).exp(),
        }
    }
}

pub(crate) fn check_dims(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(SvcError::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn kernel_eval(spec: &KernelSpec, x_i: &[f64], x_j: &[f64]) -> Result<f64> {
    check_dims(x_i, x_j)?;
    Ok(match *spec {
        KernelSpec::Linear => dot(x_i, x_j),
        KernelSpec::Polynomial { degree } => dot(x_i, x_j).powi(degree as i32),
        KernelSpec::Gaussian { sigma } => (-sigma * dist_sq(x_i, x_j)).exp(),
    })
}

/// Dense symmetric M×M kernel matrix. Rows are assembled in parallel; each
/// entry is computed once for `i <= j` and mirrored, so the result is
/// identical to sequential assembly.
pub fn kernel_matrix(spec: &KernelSpec, d: &Dataset) -> Result<DMatrix<f64>> {
    spec.validate()?;
    let m = d.len();
    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| (i..m).map(|j| kernel_eval(spec, d.point(i), d.point(j)).expect("shared dimension")).collect())
        .collect();
    let mut k = DMatrix::zeros(m, m);
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            k[(i, i + off)] = v;
            k[(i + off, i)] = v;
        }
    }
    Ok(k)
}
