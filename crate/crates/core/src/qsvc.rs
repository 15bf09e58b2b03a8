//! Quantum-emulated support vector clustering: kernel estimation through
//! ancilla statistics, LS-SVM training by spectral inversion of the
//! trace-normalized KKT operator, interference-based classification and
//! Grover-driven depth-first search with oracle-query accounting.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Result, SvcError};
use crate::kernels::KernelSpec;
use crate::lssvm::{assemble_system, ModelDocument};
use crate::qsim::grover::{grover_query_model, grover_search, no_solution_queries, MarkedHint, MAX_STATE_QUBITS};
use crate::qsim::inner_product::{estimate_parts, shots_for_accuracy};
use crate::qsim::inversion::spectral_invert;
use crate::qsim::swap::{sample_frequency, Shots};
use crate::rng::{pair_stream, rng_for_stream, rng_from_seed, SvcRng};
use crate::svc::{adjacency_by, segment_points, AdjacencyMatrix, ClusterResult, SegmentStats};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QTrainConfig {
    /// Soft-margin constant ζ (the classical γ).
    pub zeta: f64,
    /// Eigenvalues of F̂ below this magnitude are not inverted.
    pub eig_floor: f64,
    /// Target absolute accuracy ε of each kernel estimate.
    pub kernel_accuracy: f64,
    pub shots: Shots,
    /// Allowed failure probability ε_g of each neighbor search.
    pub grover_fail_prob: f64,
    pub seed: u64,
    pub sv_threshold: f64,
    pub contour_level: f64,
    /// Search spaces wider than this many qubits are counted, not simulated.
    pub max_state_qubits: usize,
    /// Optional eigenvalue register width for the inversion.
    pub phase_bits: Option<u32>,
}

impl Default for QTrainConfig {
    fn default() -> Self {
        Self {
            zeta: 1.0,
            eig_floor: 1e-10,
            kernel_accuracy: 0.02,
            shots: Shots::Exact,
            grover_fail_prob: 1e-6,
            seed: 0,
            sv_threshold: 1e-8,
            contour_level: 0.5,
            max_state_qubits: MAX_STATE_QUBITS,
            phase_bits: None,
        }
    }
}

impl QTrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(SvcError::InvalidArgument(what.to_string()));
        if !(self.zeta > 0.0 && self.zeta.is_finite()) {
            return bad("zeta must be > 0");
        }
        if !(self.eig_floor > 0.0) {
            return bad("eig_floor must be > 0");
        }
        if !(self.kernel_accuracy > 0.0) {
            return bad("kernel_accuracy must be > 0");
        }
        if !(self.grover_fail_prob > 0.0 && self.grover_fail_prob < 1.0) {
            return bad("grover_fail_prob must be in (0, 1)");
        }
        if !(self.contour_level > 0.0 && self.contour_level < 1.0) {
            return bad("contour_level must be in (0, 1)");
        }
        if self.shots == Shots::Count(0) {
            return bad("shots must be >= 1");
        }
        if self.max_state_qubits > MAX_STATE_QUBITS {
            return bad("max_state_qubits exceeds the emulator limit");
        }
        Ok(())
    }

    /// Shots for the interference test of a decision.
    pub fn effective_shots(&self) -> Option<u64> {
        match self.shots {
            Shots::Exact => None,
            Shots::Count(n) => Some(n.max(shots_for_accuracy(self.kernel_accuracy))),
        }
    }
}

/// Stream tags keeping the random draws of each pipeline stage apart.
const TRAIN_STREAM: u64 = 1;
const ADJACENCY_STREAM: u64 = 2;
const SEARCH_STREAM: u64 = 3;
const BSV_STREAM: u64 = 4;

fn stage_seed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Which right-hand side the operator was inverted against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    /// `(0, y)`: labels on the training rows.
    Labels,
    /// `(1, 0)`: unit weight sum, contour fitting.
    Contour,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QSvmModel {
    /// Normalized `F̂⁻¹|y⟩`, length M+1 (bias first).
    pub solution_state: Vec<f64>,
    /// Norm of `F̂⁻¹|y⟩` before normalization.
    pub scale: f64,
    /// `tr F` used to normalize the operator.
    pub trace: f64,
    /// Euclidean norm of the unnormalized right-hand side.
    pub target_norm: f64,
    pub target: TargetKind,
    pub spec: KernelSpec,
    pub points: Vec<Vec<f64>>,
    pub ids: Vec<String>,
    pub config: QTrainConfig,
    /// Relative residual of the descaled solution against the unnormalized system.
    pub residual: f64,
    pub inverted: usize,
    pub filtered: usize,
}

impl QSvmModel {
    /// Weight applied to the bias amplitude at decision time.
    fn bias_weight(&self) -> f64 {
        match self.target {
            TargetKind::Labels => 1.0,
            TargetKind::Contour => self.config.contour_level,
        }
    }

    fn descale_factor(&self) -> f64 {
        self.scale * self.target_norm / self.trace
    }

    /// `(b, α)` of the unnormalized system, with the contour bias applied.
    pub fn descaled(&self) -> (f64, Vec<f64>) {
        let c = self.descale_factor();
        let b = self.bias_weight() * c * self.solution_state[0];
        (b, self.solution_state[1..].iter().map(|s| c * s).collect())
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    fn is_support(&self, i: usize) -> bool {
        (self.descale_factor() * self.solution_state[i + 1]).abs() > self.config.sv_threshold
    }

    /// Training points whose weight enters the decision.
    pub fn support_count(&self) -> usize {
        (0..self.points.len()).filter(|&i| self.is_support(i)).count()
    }

    pub fn to_document(&self) -> ModelDocument {
        let (bias, alpha) = self.descaled();
        ModelDocument {
            backend: if self.config.shots.is_exact() { "quantum-exact" } else { "quantum-shots" }.into(),
            kernel: self.spec,
            gamma: self.config.zeta,
            bias,
            alpha,
            ids: self.ids.clone(),
            sv_threshold: self.config.sv_threshold,
            solution_state: Some(self.solution_state.clone()),
            scale: Some(self.scale),
        }
    }
}

/// Dot-product accuracy that keeps the kernel value within `eps`.
fn dot_accuracy(spec: &KernelSpec, eps: f64, x_i: &[f64], x_j: &[f64]) -> f64 {
    match *spec {
        KernelSpec::Linear => eps,
        // |∂K/∂dot| ≤ 2σ through dist² = |x_i|² + |x_j|² − 2·dot
        KernelSpec::Gaussian { sigma } => eps / (2.0 * sigma).max(1.0),
        KernelSpec::Polynomial { degree } => {
            let bound = (x_i.iter().map(|v| v * v).sum::<f64>() * x_j.iter().map(|v| v * v).sum::<f64>()).sqrt();
            eps / (f64::from(degree) * bound.max(1.0).powi(degree as i32 - 1))
        }
    }
}

fn kernel_from_estimate(spec: &KernelSpec, x_i: &[f64], x_j: &[f64], cfg: &QTrainConfig, rng: &mut SvcRng) -> Result<f64> {
    let eps = dot_accuracy(spec, cfg.kernel_accuracy, x_i, x_j);
    let e = estimate_parts(x_i, x_j, cfg.shots, eps, rng)?;
    Ok(spec.from_parts(e.dot, e.dist_sq))
}

/// Kernel value assembled from the inner-product estimator: the dot product
/// for linear, its d-th power for polynomial, `exp(−σ·dist²)` for Gaussian.
pub fn q_kernel_eval(spec: &KernelSpec, x_i: &[f64], x_j: &[f64], cfg: &QTrainConfig, rng: &mut SvcRng) -> Result<f64> {
    spec.validate()?;
    cfg.validate()?;
    for (index, x) in [x_i, x_j].into_iter().enumerate() {
        if x.iter().all(|&v| v == 0.0) {
            return Err(SvcError::ZeroVector { index });
        }
    }
    kernel_from_estimate(spec, x_i, x_j, cfg, rng)
}

/// Estimated kernel matrix; in shots mode entry (i, j) draws from its own
/// stream so the result does not depend on scheduling.
pub fn q_kernel_matrix(spec: &KernelSpec, d: &Dataset, cfg: &QTrainConfig) -> Result<DMatrix<f64>> {
    spec.validate()?;
    cfg.validate()?;
    let m = d.len();
    let seed = stage_seed(cfg.seed, TRAIN_STREAM);
    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (i..m)
                .map(|j| {
                    let mut rng = rng_for_stream(seed, pair_stream(i, j));
                    kernel_from_estimate(spec, d.point(i), d.point(j), cfg, &mut rng)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut k = DMatrix::zeros(m, m);
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            k[(i, i + off)] = v;
            k[(i + off, i)] = v;
        }
    }
    Ok(k)
}

/// `F̂ = F / tr F` with `F = J + K + I/ζ`, and `tr F`.
pub fn normalized_system(k: &DMatrix<f64>, zeta: f64) -> Result<(DMatrix<f64>, f64)> {
    let f = assemble_system(k, zeta)?;
    let trace = f.trace();
    if !(trace > 0.0 && trace.is_finite()) {
        return Err(SvcError::InvalidArgument(format!("operator trace {trace} must be positive")));
    }
    Ok((f / trace, trace))
}

fn q_fit(d: &Dataset, spec: &KernelSpec, cfg: &QTrainConfig, target: TargetKind, rhs: DVector<f64>) -> Result<QSvmModel> {
    cfg.validate()?;
    if d.is_empty() {
        return Err(SvcError::InvalidArgument("training set is empty".into()));
    }
    let k = q_kernel_matrix(spec, d, cfg)?;
    let f = assemble_system(&k, cfg.zeta)?;
    let (f_hat, trace) = normalized_system(&k, cfg.zeta)?;
    let target_norm = rhs.norm();
    let y: Vec<f64> = rhs.iter().map(|v| v / target_norm).collect();
    let sol = spectral_invert(&f_hat, &y, cfg.eig_floor, cfg.phase_bits)?;
    let z = DVector::from_iterator(rhs.len(), sol.state.iter().map(|s| s * sol.scale * target_norm / trace));
    let residual = (&f * z - &rhs).norm() / target_norm;
    Ok(QSvmModel {
        solution_state: sol.state,
        scale: sol.scale,
        trace,
        target_norm,
        target,
        spec: *spec,
        points: d.points().to_vec(),
        ids: d.ids().to_vec(),
        config: *cfg,
        residual,
        inverted: sol.inverted,
        filtered: sol.filtered,
    })
}

/// Inverts F̂ against `(0, y)` for ±1 labels.
pub fn q_train(d: &Dataset, labels: &[i8], spec: &KernelSpec, cfg: &QTrainConfig) -> Result<QSvmModel> {
    if labels.len() != d.len() {
        return Err(SvcError::InvalidArgument(format!("{} labels for {} points", labels.len(), d.len())));
    }
    if let Some(&l) = labels.iter().find(|&&l| l != 1 && l != -1) {
        return Err(SvcError::InvalidArgument(format!("label {l} is not +1/-1")));
    }
    let rhs = DVector::from_iterator(d.len() + 1, std::iter::once(0.0).chain(labels.iter().map(|&l| f64::from(l))));
    q_fit(d, spec, cfg, TargetKind::Labels, rhs)
}

/// [`q_train`] with every label +1. Like its classical counterpart this
/// solves to a constant-inside model.
pub fn q_train_one_class(d: &Dataset, spec: &KernelSpec, cfg: &QTrainConfig) -> Result<QSvmModel> {
    q_train(d, &vec![1; d.len()], spec, cfg)
}

/// Contour model matching [`crate::lssvm::fit_contour`]: inverts F̂ against `(1, 0)`.
pub fn q_fit_contour(d: &Dataset, spec: &KernelSpec, cfg: &QTrainConfig) -> Result<QSvmModel> {
    let mut rhs = DVector::zeros(d.len() + 1);
    rhs[0] = 1.0;
    q_fit(d, spec, cfg, TargetKind::Contour, rhs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QDecision {
    pub label: i8,
    /// Probability of the ancilla reading 1 in the interference test.
    pub p_success: f64,
}

/// Classifies `x` by interfering the solution state with the query state
/// `∝ (1, k(x_1, x), …, k(x_M, x))` on an ancilla. The ancilla reads 1 with
/// probability `P = ½(1 − ⟨u|q⟩)`; `P < ½` labels +1, `P ≥ ½` labels −1.
pub fn q_decide(m: &QSvmModel, x: &[f64], rng: &mut SvcRng) -> Result<QDecision> {
    let dim = m.dim();
    if x.len() != dim {
        return Err(SvcError::DimensionMismatch { expected: dim, found: x.len() });
    }
    let mut q = vec![0.0; m.points.len() + 1];
    q[0] = 1.0;
    for (i, p) in m.points.iter().enumerate() {
        if m.is_support(i) {
            q[i + 1] = kernel_from_estimate(&m.spec, p, x, &m.config, rng)?;
        }
    }
    let q_norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let w = m.bias_weight();
    let u_norm = (m.solution_state[0] * m.solution_state[0] * w * w
        + m.solution_state[1..].iter().map(|s| s * s).sum::<f64>())
    .sqrt();
    let overlap = (w * m.solution_state[0] * q[0]
        + m.solution_state[1..].iter().zip(&q[1..]).map(|(s, k)| s * k).sum::<f64>())
        / (u_norm * q_norm);
    let p = (0.5 * (1.0 - overlap)).clamp(0.0, 1.0);
    let p = match m.config.effective_shots() {
        None => p,
        Some(n) => sample_frequency(p, n, rng),
    };
    Ok(QDecision { label: if p < 0.5 { 1 } else { -1 }, p_success: p })
}

/// Training indices the model places outside every contour.
pub fn q_identify_bsv(m: &QSvmModel, d: &Dataset) -> Result<Vec<usize>> {
    let seed = stage_seed(m.config.seed, BSV_STREAM);
    let mut out = Vec::new();
    for (i, p) in d.points().iter().enumerate() {
        if q_decide(m, p, &mut rng_for_stream(seed, i as u64))?.label < 0 {
            out.push(i);
        }
    }
    Ok(out)
}

fn q_segment_inside(m: &QSvmModel, a: &[f64], b: &[f64], n_samples: usize, rng: &mut SvcRng) -> Result<(bool, u64)> {
    let mut evals = 0;
    for x in segment_points(a, b, n_samples) {
        evals += 1;
        if q_decide(m, &x, rng)?.label < 0 {
            return Ok((false, evals));
        }
    }
    Ok((true, evals))
}

/// Segment-sampled adjacency with decisions from [`q_decide`]. Each pair
/// uses its own random stream.
pub fn q_build_adjacency(m: &QSvmModel, d: &Dataset, n_samples: usize) -> Result<(AdjacencyMatrix, SegmentStats)> {
    if n_samples < 2 {
        return Err(SvcError::InvalidArgument(format!("need at least 2 line samples, got {n_samples}")));
    }
    if d.len() > 0 && d.dim() != m.dim() {
        return Err(SvcError::DimensionMismatch { expected: m.dim(), found: d.dim() });
    }
    let seed = stage_seed(m.config.seed, ADJACENCY_STREAM);
    adjacency_by(d.len(), |i, j| {
        let mut rng = rng_for_stream(seed, pair_stream(i, j));
        q_segment_inside(m, d.point(i), d.point(j), n_samples, &mut rng)
    })
}

/// Grover bookkeeping for cluster identification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryStats {
    pub grover_iterations: u64,
    pub oracle_queries: u64,
    pub grover_invocations: u64,
    /// Neighbor lookups done classically in counting-only mode.
    pub classical_fallback_scans: u64,
    /// Searches that ended without a neighbor.
    pub empty_searches: u64,
    pub counting_only: bool,
}

/// Qubits indexing the rows of an M-vertex adjacency matrix.
pub fn row_qubits(m: usize) -> usize {
    (m.next_power_of_two().trailing_zeros() as usize).max(1)
}

fn find_neighbor(
    a: &AdjacencyMatrix,
    v: usize,
    marks: &[bool],
    cfg: &QTrainConfig,
    stats: &mut QueryStats,
    rng: &mut SvcRng,
) -> Result<Option<usize>> {
    let m = a.size();
    let n = row_qubits(m);
    stats.grover_invocations += 1;
    let found = if n > cfg.max_state_qubits {
        let space = 1usize << n;
        stats.counting_only = true;
        stats.classical_fallback_scans += 1;
        let candidates = || (0..m).filter(|&j| a.get(v, j) && !marks[j]);
        let k = candidates().count();
        let queries = if k == 0 {
            no_solution_queries(space, cfg.grover_fail_prob)?
        } else {
            grover_query_model(space, k, MarkedHint::Unknown)?.ceil() as u64
        };
        stats.oracle_queries += queries;
        stats.grover_iterations += queries.saturating_sub(1);
        candidates().next()
    } else {
        let row = a.row(v);
        let outcome = grover_search(|j| j < m && row[j] && !marks[j], n, MarkedHint::Unknown, cfg.grover_fail_prob, rng)?;
        stats.oracle_queries += outcome.oracle_queries;
        stats.grover_iterations += outcome.iterations;
        outcome.found_index
    };
    if found.is_none() {
        stats.empty_searches += 1;
    }
    Ok(found)
}

/// Depth-first search that locates each unvisited neighbor with one Grover
/// invocation over the row index space. A search that misses despite the
/// repetition schedule is treated as "no neighbor", so the member set
/// equals the classical one except with probability ε_g per step.
pub fn quantum_dfs(
    a: &AdjacencyMatrix,
    start: usize,
    marks: &mut [bool],
    cfg: &QTrainConfig,
    stats: &mut QueryStats,
    rng: &mut SvcRng,
) -> Result<Vec<usize>> {
    cfg.validate()?;
    let m = a.size();
    if start >= m || marks.len() != m {
        return Err(SvcError::InvalidArgument(format!("start {start} / marks {} for size {m}", marks.len())));
    }
    if marks[start] {
        return Err(SvcError::AlreadyMarked(start));
    }
    marks[start] = true;
    let mut members = vec![start];
    let mut stack = vec![start];
    while let Some(&v) = stack.last() {
        match find_neighbor(a, v, marks, cfg, stats, rng)? {
            Some(w) => {
                marks[w] = true;
                members.push(w);
                stack.push(w);
            }
            None => {
                stack.pop();
            }
        }
    }
    Ok(members)
}

/// Connected components via [`quantum_dfs`], in the same canonical order as
/// the classical result.
pub fn quantum_cluster_finding(a: &AdjacencyMatrix, cfg: &QTrainConfig) -> Result<(ClusterResult, QueryStats)> {
    let m = a.size();
    let mut rng = rng_from_seed(stage_seed(cfg.seed, SEARCH_STREAM));
    let mut marks = vec![false; m];
    let mut stats = QueryStats::default();
    let mut clusters = Vec::new();
    for v in 0..m {
        if !marks[v] {
            clusters.push(quantum_dfs(a, v, &mut marks, cfg, &mut stats, &mut rng)?);
        }
    }
    Ok((ClusterResult::from_components(m, clusters), stats))
}

/// Expected oracle queries of the identification phase on a connected
/// (all-ones) graph under the analytic model: M−1 successful searches with
/// shrinking marked sets plus one exhausted search per vertex.
pub fn all_ones_query_model(m: usize, fail_prob: f64) -> Result<f64> {
    let space = 1usize << row_qubits(m);
    let mut total = m as f64 * no_solution_queries(space, fail_prob)? as f64;
    for k in 1..m {
        total += grover_query_model(space, k, MarkedHint::Unknown)?.ceil();
    }
    Ok(total)
}
