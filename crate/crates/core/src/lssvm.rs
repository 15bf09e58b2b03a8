//! Least-squares SVM: the bordered KKT system, its solution and the signed
//! decision function.
//!
//! Training solves
//!
//! ```text
//! | 0   1ᵀ        | | b |   | r₀ |
//! | 1   K + I/γ   | | α | = | r  |
//! ```
//!
//! With `(r₀, r) = (0, y)` this is the LS-SVM classifier. The decision
//! margin is `Σ α_i K(x_i, x) + b`; labels are absorbed into α.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Result, SvcError};
use crate::kernels::{kernel_eval, kernel_matrix, KernelSpec};
use crate::linalg::{check_symmetric, condition_estimate};

/// Condition number above which the diagonal is jittered once.
pub const JITTER_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Regularization weight γ (the same parameter is called ζ on the quantum side).
    pub gamma: f64,
    /// Added to the lower-right diagonal only when the system is ill conditioned.
    pub jitter: f64,
    /// Terms with `|α_i| <= sv_threshold` are left out of the decision sum.
    pub sv_threshold: f64,
    /// Fraction of the fitted level ρ at which [`fit_contour`] draws the contour.
    pub contour_level: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self { gamma: 1.0, jitter: 1e-10, sv_threshold: 1e-8, contour_level: 0.5 }
    }
}

impl TrainConfig {
    pub fn with_gamma(gamma: f64) -> Self {
        Self { gamma, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(SvcError::InvalidArgument(format!("gamma {} must be > 0", self.gamma)));
        }
        if !(0.0..1e-6).contains(&self.jitter) {
            return Err(SvcError::InvalidArgument(format!("jitter {} must be in [0, 1e-6)", self.jitter)));
        }
        if !(self.sv_threshold >= 0.0) {
            return Err(SvcError::InvalidArgument("sv_threshold must be >= 0".into()));
        }
        if !(self.contour_level > 0.0 && self.contour_level < 1.0) {
            return Err(SvcError::InvalidArgument("contour_level must be in (0, 1)".into()));
        }
        Ok(())
    }
}

/// A trained LS-SVM.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    pub bias: f64,
    pub alpha: Vec<f64>,
    pub spec: KernelSpec,
    pub points: Vec<Vec<f64>>,
    pub ids: Vec<String>,
    pub labels: Vec<i8>,
    pub sv_threshold: f64,
    /// Relative residual ‖F·z − rhs‖ / ‖rhs‖ of the solved system.
    pub residual: f64,
    /// Whether the diagonal jitter had to be applied.
    pub jittered: bool,
}

/// Signed classification with its raw margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub sign: i8,
    pub margin: f64,
}

/// Serializable form of a trained model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub backend: String,
    pub kernel: KernelSpec,
    pub gamma: f64,
    pub bias: f64,
    pub alpha: Vec<f64>,
    pub ids: Vec<String>,
    pub sv_threshold: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution_state: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
}

/// Builds the (M+1)×(M+1) bordered matrix from a kernel matrix.
pub fn assemble_system(k: &DMatrix<f64>, gamma: f64) -> Result<DMatrix<f64>> {
    check_symmetric(k, 1e-9)?;
    if !(gamma > 0.0) {
        return Err(SvcError::InvalidArgument(format!("gamma {gamma} must be > 0")));
    }
    let m = k.nrows();
    let mut f = DMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        f[(0, i + 1)] = 1.0;
        f[(i + 1, 0)] = 1.0;
        for j in 0..m {
            f[(i + 1, j + 1)] = k[(i, j)];
        }
        f[(i + 1, i + 1)] += 1.0 / gamma;
    }
    Ok(f)
}

/// Solves the bordered system by eliminating the bias row: with
/// `H = K + I/γ` (positive definite for the kernels here), `α = H⁻¹(r − b·1)`
/// and `b = (1ᵀH⁻¹r − r₀) / (1ᵀH⁻¹1)`. Falls back to a pivoted LU of the full
/// matrix when `H` is not numerically positive definite.
fn solve_bordered(k: &DMatrix<f64>, gamma: f64, jitter: f64, r0: f64, r: &DVector<f64>) -> Result<(f64, DVector<f64>)> {
    let m = k.nrows();
    let mut h = k.clone();
    for i in 0..m {
        h[(i, i)] += 1.0 / gamma + jitter;
    }
    if let Some(chol) = h.clone().cholesky() {
        let ones = DVector::from_element(m, 1.0);
        let eta = chol.solve(&ones);
        let nu = chol.solve(r);
        let denom = eta.sum();
        if denom.is_finite() && denom.abs() > f64::MIN_POSITIVE {
            let b = (nu.sum() - r0) / denom;
            let alpha = nu - &eta * b;
            if alpha.iter().all(|v| v.is_finite()) && b.is_finite() {
                return Ok((b, alpha));
            }
        }
    }
    let mut f = DMatrix::zeros(m + 1, m + 1);
    f.view_mut((1, 1), (m, m)).copy_from(&h);
    for i in 1..=m {
        f[(0, i)] = 1.0;
        f[(i, 0)] = 1.0;
    }
    let mut rhs = DVector::zeros(m + 1);
    rhs[0] = r0;
    rhs.rows_mut(1, m).copy_from(r);
    let z = f
        .clone()
        .lu()
        .solve(&rhs)
        .filter(|z| z.iter().all(|v| v.is_finite()))
        .ok_or_else(|| SvcError::Singular { condition: condition_estimate(&f) })?;
    Ok((z[0], z.rows(1, m).into_owned()))
}

fn relative_residual(f: &DMatrix<f64>, b: f64, alpha: &DVector<f64>, r0: f64, r: &DVector<f64>) -> f64 {
    let m = alpha.len();
    let mut z = DVector::zeros(m + 1);
    z[0] = b;
    z.rows_mut(1, m).copy_from(alpha);
    let mut rhs = DVector::zeros(m + 1);
    rhs[0] = r0;
    rhs.rows_mut(1, m).copy_from(r);
    let norm = rhs.norm();
    let res = (f * z - &rhs).norm();
    if norm == 0.0 {
        res
    } else {
        res / norm
    }
}

struct Solved {
    bias: f64,
    alpha: Vec<f64>,
    residual: f64,
    jittered: bool,
}

fn solve_system(k: &DMatrix<f64>, cfg: &TrainConfig, r0: f64, r: &DVector<f64>) -> Result<Solved> {
    let f = assemble_system(k, cfg.gamma)?;
    let condition = condition_estimate(&f);
    let jittered = condition > JITTER_CONDITION;
    let jitter = if jittered { cfg.jitter } else { 0.0 };
    let (bias, alpha) = solve_bordered(k, cfg.gamma, jitter, r0, r)?;
    let residual = relative_residual(&f, bias, &alpha, r0, r);
    if jittered && !(residual <= 1e-6) {
        return Err(SvcError::Singular { condition });
    }
    Ok(Solved { bias, alpha: alpha.iter().copied().collect(), residual, jittered })
}

/// Trains a binary (or single-label) LS-SVM with right-hand side `(0, y)`.
pub fn train(d: &Dataset, labels: &[i8], spec: &KernelSpec, cfg: &TrainConfig) -> Result<SvmModel> {
    cfg.validate()?;
    if labels.len() != d.len() {
        return Err(SvcError::InvalidArgument(format!("{} labels for {} points", labels.len(), d.len())));
    }
    if let Some(&l) = labels.iter().find(|&&l| l != 1 && l != -1) {
        return Err(SvcError::InvalidArgument(format!("label {l} is not +1/-1")));
    }
    let k = kernel_matrix(spec, d)?;
    let y = DVector::from_iterator(labels.len(), labels.iter().map(|&l| f64::from(l)));
    let solved = solve_system(&k, cfg, 0.0, &y)?;
    Ok(SvmModel {
        bias: solved.bias,
        alpha: solved.alpha,
        spec: *spec,
        points: d.points().to_vec(),
        ids: d.ids().to_vec(),
        labels: labels.to_vec(),
        sv_threshold: cfg.sv_threshold,
        residual: solved.residual,
        jittered: solved.jittered,
    })
}

/// [`train`] with every label +1.
///
/// Note that with a single label the bordered system is solved exactly by
/// `b = 1, α = 0` for any data, so this model classifies everything as
/// inside. [`fit_contour`] is the one-class variant used for clustering.
pub fn train_one_class(d: &Dataset, spec: &KernelSpec, cfg: &TrainConfig) -> Result<SvmModel> {
    train(d, &vec![1; d.len()], spec, cfg)
}

/// One-class LS-SVM for contour finding.
///
/// Solves the same bordered system with right-hand side `(1, 0)`, i.e. the
/// least-squares one-class problem whose weights sum to one and whose
/// kernel expansion `Σ α_i K(x_i, ·)` is fitted to a common level `ρ = −b`
/// on the training points. The contour is drawn at `contour_level · ρ`, so
/// the stored bias is `contour_level · b` and the decision margin keeps the
/// form `Σ α_i K(x_i, x) + bias`.
pub fn fit_contour(d: &Dataset, spec: &KernelSpec, cfg: &TrainConfig) -> Result<SvmModel> {
    cfg.validate()?;
    let k = kernel_matrix(spec, d)?;
    let zeros = DVector::zeros(d.len());
    let solved = solve_system(&k, cfg, 1.0, &zeros)?;
    Ok(SvmModel {
        bias: cfg.contour_level * solved.bias,
        alpha: solved.alpha,
        spec: *spec,
        points: d.points().to_vec(),
        ids: d.ids().to_vec(),
        labels: vec![1; d.len()],
        sv_threshold: cfg.sv_threshold,
        residual: solved.residual,
        jittered: solved.jittered,
    })
}

impl SvmModel {
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Indices whose weight enters the decision sum.
    pub fn support_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.alpha
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.abs() > self.sv_threshold)
            .map(|(i, _)| i)
    }

    pub fn to_document(&self, gamma: f64) -> ModelDocument {
        ModelDocument {
            backend: "classical".into(),
            kernel: self.spec,
            gamma,
            bias: self.bias,
            alpha: self.alpha.clone(),
            ids: self.ids.clone(),
            sv_threshold: self.sv_threshold,
            solution_state: None,
            scale: None,
        }
    }
}

pub fn decide(m: &SvmModel, x: &[f64]) -> Result<Decision> {
    let dim = m.dim();
    if x.len() != dim {
        return Err(SvcError::DimensionMismatch { expected: dim, found: x.len() });
    }
    let mut margin = m.bias;
    for i in m.support_indices() {
        margin += m.alpha[i] * kernel_eval(&m.spec, &m.points[i], x)?;
    }
    let sign = if margin >= 0.0 { 1 } else { -1 };
    Ok(Decision { sign, margin })
}

/// Training indices lying outside every contour (negative margin).
pub fn identify_bsv(m: &SvmModel, d: &Dataset) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, p) in d.points().iter().enumerate() {
        if decide(m, p)?.margin < 0.0 {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthonormal_pair() -> Dataset {
        Dataset::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], None).unwrap()
    }

    #[test]
    fn assembles_bordered_matrix() {
        let f = assemble_system(&DMatrix::identity(2, 2), 1.0).unwrap();
        assert_eq!(f, DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 1.0, 1.0, 2.0, 0.0, 1.0, 0.0, 2.0]));
        let f1 = assemble_system(&DMatrix::from_element(1, 1, 1.0), 1.0).unwrap();
        assert_eq!(f1, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 2.0]));
        let big = assemble_system(&DMatrix::identity(2, 2), 1e15).unwrap();
        assert!((big[(1, 1)] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_symmetric_kernel() {
        let k = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(assemble_system(&k, 1.0), Err(SvcError::NotHermitian { .. })));
    }

    #[test]
    fn hand_solved_binary_case() {
        let m = train(&orthonormal_pair(), &[1, -1], &KernelSpec::Linear, &TrainConfig::default()).unwrap();
        assert!(m.bias.abs() < 1e-12);
        assert!((m.alpha[0] - 0.5).abs() < 1e-12 && (m.alpha[1] + 0.5).abs() < 1e-12);
        let at = |x: &[f64]| decide(&m, x).unwrap();
        assert_eq!(at(&[1.0, 0.0]).sign, 1);
        assert!((at(&[1.0, 0.0]).margin - 0.5).abs() < 1e-12);
        assert_eq!(at(&[0.0, 1.0]).sign, -1);
        assert!((at(&[0.0, 1.0]).margin + 0.5).abs() < 1e-12);
    }

    #[test]
    fn one_class_is_constant_inside() {
        let m = train_one_class(&orthonormal_pair(), &KernelSpec::Linear, &TrainConfig::default()).unwrap();
        assert!((m.bias - 1.0).abs() < 1e-12);
        assert!(m.alpha.iter().all(|a| a.abs() < 1e-12));
        assert!(m.labels.iter().all(|&l| l == 1));
        assert_eq!(decide(&m, &[-7.0, 3.0]).unwrap().margin, 1.0);
        assert!(identify_bsv(&m, &orthonormal_pair()).unwrap().is_empty());

        let single = Dataset::new(vec![vec![0.6, 0.8]], None).unwrap();
        let m1 = train_one_class(&single, &KernelSpec::Linear, &TrainConfig::default()).unwrap();
        assert!((m1.bias - 1.0).abs() < 1e-12 && m1.alpha[0].abs() < 1e-12);
        assert!(identify_bsv(&m1, &single).unwrap().is_empty());
    }

    #[test]
    fn zero_margin_counts_inside() {
        let m = SvmModel {
            bias: 0.0,
            alpha: vec![0.0],
            spec: KernelSpec::Linear,
            points: vec![vec![1.0]],
            ids: vec!["0".into()],
            labels: vec![1],
            sv_threshold: 1e-8,
            residual: 0.0,
            jittered: false,
        };
        assert_eq!(decide(&m, &[3.0]).unwrap(), Decision { sign: 1, margin: 0.0 });
        assert!(matches!(decide(&m, &[3.0, 1.0]), Err(SvcError::DimensionMismatch { .. })));
    }

    #[test]
    fn config_validation() {
        assert!(TrainConfig::with_gamma(0.0).validate().is_err());
        assert!(TrainConfig { jitter: 1e-5, ..TrainConfig::default() }.validate().is_err());
        let bad_labels = train(&orthonormal_pair(), &[1], &KernelSpec::Linear, &TrainConfig::default());
        assert!(bad_labels.is_err());
    }

    #[test]
    fn contour_weights_sum_to_one() {
        let d = Dataset::new(vec![vec![0.0, 0.0], vec![0.3, 0.1], vec![5.0, 5.0]], None).unwrap();
        let cfg = TrainConfig::default();
        let m = fit_contour(&d, &KernelSpec::Gaussian { sigma: 1.0 }, &cfg).unwrap();
        assert!((m.alpha.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(m.bias < 0.0);
        assert!(m.residual < 1e-12);
    }
}
