use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::config::{Backend, ExperimentConfig};
use super::log_log_slope;
use super::report::{write_json, BenchReport, RunRecord, ScalingRow, ScalingSummary, SweepRow, Table1Summary};
use super::svg::scaling_svg;
use crate::dataset::{load_csv, pca_fit, Dataset};
use crate::error::{Result, SvcError};
use crate::kernels::KernelSpec;
use crate::lssvm::{decide, fit_contour, identify_bsv, train, ModelDocument, TrainConfig};
use crate::qsvc::{
    q_build_adjacency, q_decide, q_fit_contour, q_identify_bsv, q_train, quantum_cluster_finding, QTrainConfig,
};
use crate::rng::{rng_for_stream, rng_from_seed};
use crate::svc::{build_adjacency, cluster_finding_counted, AdjacencyMatrix, ClusterResult};

pub const MIN_SCALING_POINTS: usize = 4;

const ALIAS_NOTE: &str = "gamma is the soft-margin weight; the quantum backend calls it zeta";

/// Everything produced by one clustering run.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub dataset: Dataset,
    pub adjacency: AdjacencyMatrix,
    pub clusters: ClusterResult,
    pub bsv: Vec<usize>,
    pub model: ModelDocument,
    pub record: RunRecord,
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| SvcError::Io { path: dir.to_path_buf(), source })
}

/// Train, build the adjacency matrix and extract clusters on one backend.
pub fn run_pipeline(cfg: &ExperimentConfig) -> Result<PipelineOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let dataset = cfg.source.load()?;
    let m = dataset.len() as u64;
    let training_ops = m * (m + 1) / 2;
    let (adjacency, segments, clusters, bsv, model, dfs_scans, query_stats, support) = match cfg.backend {
        Backend::Classical => {
            let model = fit_contour(&dataset, &cfg.kernel, &cfg.train_config())?;
            let (adjacency, segments) = build_adjacency(&model, &dataset, cfg.line_samples)?;
            let (clusters, scans) = cluster_finding_counted(&adjacency);
            let bsv = identify_bsv(&model, &dataset)?;
            let support = model.support_indices().count() as u64;
            (adjacency, segments, clusters, bsv, model.to_document(cfg.gamma), Some(scans), None, support)
        }
        Backend::QuantumExact | Backend::QuantumShots => {
            let qcfg = cfg.quantum_config();
            let model = q_fit_contour(&dataset, &cfg.kernel, &qcfg)?;
            let (adjacency, segments) = q_build_adjacency(&model, &dataset, cfg.line_samples)?;
            let (clusters, stats) = quantum_cluster_finding(&adjacency, &qcfg)?;
            let bsv = q_identify_bsv(&model, &dataset)?;
            let support = model.support_count() as u64;
            (adjacency, segments, clusters, bsv, model.to_document(), None, Some(stats), support)
        }
    };
    let record = RunRecord {
        m: dataset.len(),
        n: dataset.dim(),
        backend: cfg.backend,
        kernel_ops: training_ops + segments.decision_evals * support,
        segment_tests: segments.segment_tests,
        decision_evals: segments.decision_evals,
        dfs_scans,
        query_stats,
        cluster_count: clusters.cluster_count,
        bsv_count: bsv.len(),
        wall_time_s: start.elapsed().as_secs_f64(),
        config: cfg.clone(),
    };
    Ok(PipelineOutcome { dataset, adjacency, clusters, bsv, model, record })
}

/// Runs one clustering and writes `clusters.json`, `model.json` and `report.json`.
pub fn cmd_cluster(cfg: &ExperimentConfig) -> Result<(BenchReport, PipelineOutcome)> {
    let outcome = run_pipeline(cfg)?;
    ensure_dir(&cfg.out_dir)?;
    write_json(&cfg.out_dir, "clusters.json", &outcome.clusters.to_document(outcome.dataset.ids(), &outcome.bsv))?;
    write_json(&cfg.out_dir, "model.json", &outcome.model)?;
    let mut report = BenchReport::new("cluster", cfg.seed);
    report.notes.push(ALIAS_NOTE.into());
    report.runs.push(outcome.record.clone());
    write_json(&cfg.out_dir, "report.json", &report)?;
    Ok((report, outcome))
}

/// One Gaussian-kernel clustering per σ; writes `report.json`.
pub fn cmd_sweep_sigma(cfg: &ExperimentConfig, sigmas: &[f64]) -> Result<BenchReport> {
    if sigmas.len() < 2 {
        return Err(SvcError::InvalidArgument(format!("need >= 2 sigma values, got {}", sigmas.len())));
    }
    let mut report = BenchReport::new("sweep-sigma", cfg.seed);
    report.notes.push(ALIAS_NOTE.into());
    report.notes.push("cluster counts are recorded, not required to be monotone in sigma".into());
    for &sigma in sigmas {
        let run = ExperimentConfig { kernel: KernelSpec::gaussian(sigma)?, ..cfg.clone() };
        let outcome = run_pipeline(&run)?;
        report.sweep.push(SweepRow { sigma, cluster_count: outcome.clusters.cluster_count });
        report.runs.push(outcome.record);
    }
    ensure_dir(&cfg.out_dir)?;
    write_json(&cfg.out_dir, "report.json", &report)?;
    Ok(report)
}

/// Identification-phase counters on the all-ones adjacency for every M:
/// classical neighbor scans and quantum oracle queries in counting-only mode.
pub fn scaling_rows(ms: &[usize], grover_fail_prob: f64) -> Result<Vec<ScalingRow>> {
    let qcfg = QTrainConfig { max_state_qubits: 0, grover_fail_prob, ..QTrainConfig::default() };
    ms.par_iter()
        .map(|&m| {
            let a = AdjacencyMatrix::full(m);
            let (classical, scans) = cluster_finding_counted(&a);
            let (quantum, stats) = quantum_cluster_finding(&a, &qcfg)?;
            if classical != quantum {
                return Err(SvcError::InvalidArgument(format!("backends disagree at M = {m}")));
            }
            Ok(ScalingRow {
                m,
                classical_scans: scans,
                quantum_queries: stats.oracle_queries,
                grover_invocations: stats.grover_invocations,
                counting_only: stats.counting_only,
            })
        })
        .collect()
}

fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut s = String::from("m,classical_scans,quantum_queries,grover_invocations,counting_only\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.m, r.classical_scans, r.quantum_queries, r.grover_invocations, r.counting_only);
    }
    s
}

/// Writes `scaling.csv`, `scaling.svg` and `report.json`.
pub fn cmd_scaling(ms: &[usize], out_dir: &Path) -> Result<BenchReport> {
    if ms.len() < MIN_SCALING_POINTS {
        return Err(SvcError::InvalidArgument(format!("need >= {MIN_SCALING_POINTS} values of M, got {}", ms.len())));
    }
    if ms[0] < 2 || ms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SvcError::InvalidArgument("values of M must be >= 2 and strictly ascending".into()));
    }
    let fail_prob = QTrainConfig::default().grover_fail_prob;
    let rows = scaling_rows(ms, fail_prob)?;
    let xs: Vec<f64> = rows.iter().map(|r| r.m as f64).collect();
    let slope = |f: fn(&ScalingRow) -> u64| {
        let ys: Vec<f64> = rows.iter().map(|r| f(r) as f64).collect();
        log_log_slope(&xs, &ys).ok_or_else(|| SvcError::InvalidArgument("degenerate scaling series".into()))
    };
    let summary = ScalingSummary {
        classical_slope: slope(|r| r.classical_scans)?,
        quantum_slope: slope(|r| r.quantum_queries)?,
        grover_fail_prob: fail_prob,
        rows,
    };
    ensure_dir(out_dir)?;
    let write = |name: &str, text: String| {
        let path = out_dir.join(name);
        fs::write(&path, text).map_err(|source| SvcError::Io { path, source })
    };
    write("scaling.csv", scaling_csv(&summary.rows))?;
    write("scaling.svg", scaling_svg(&summary))?;
    let mut report = BenchReport::new("bench scaling", 0);
    report.notes.push("counts are operations and oracle queries, not wall time".into());
    report.notes.push("quantum queries use the analytic Grover cost with the neighbor located classically".into());
    report.scaling = Some(summary);
    write_json(out_dir, "report.json", &report)?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Options {
    pub input: PathBuf,
    pub train_count: usize,
    pub seed: u64,
    pub kernel: KernelSpec,
    pub gamma: f64,
    pub out_dir: PathBuf,
}

impl Table1Options {
    pub fn new(input: impl Into<PathBuf>, train_count: usize, seed: u64, out_dir: impl Into<PathBuf>) -> Self {
        Self { input: input.into(), train_count, seed, kernel: KernelSpec::Linear, gamma: 1.0, out_dir: out_dir.into() }
    }
}

fn accuracy(predicted: &[i8], truth: &[i8]) -> f64 {
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    hits as f64 / truth.len() as f64
}

/// PCA to two components fitted on a seeded training split, then classical
/// and quantum-exact LS-SVM test accuracy. Writes `report.json`.
pub fn cmd_table1_analog(opts: &Table1Options) -> Result<BenchReport> {
    let data = load_csv(&opts.input, true)?;
    let labels = data.labels().expect("loaded with labels").to_vec();
    if opts.train_count < 2 || data.len() < opts.train_count + 10 {
        return Err(SvcError::InvalidArgument(format!(
            "need >= {} labeled rows for {} training rows, found {}",
            opts.train_count + 10,
            opts.train_count,
            data.len()
        )));
    }
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.shuffle(&mut rng_from_seed(opts.seed));
    let (train_rows, test_rows) = order.split_at(opts.train_count);

    let train_raw = data.select(train_rows)?;
    let pca = pca_fit(&train_raw, 2)?;
    let project = |rows: &[usize]| -> Result<(Dataset, Vec<i8>)> {
        let points = rows.iter().map(|&r| pca.transform(data.point(r))).collect();
        let ids = rows.iter().map(|&r| data.ids()[r].clone()).collect();
        let y: Vec<i8> = rows.iter().map(|&r| labels[r]).collect();
        Ok((Dataset::with_ids(points, Some(y.clone()), ids)?, y))
    };
    let (train_set, train_y) = project(train_rows)?;
    let (test_set, test_y) = project(test_rows)?;

    let t0 = Instant::now();
    let classical = train(&train_set, &train_y, &opts.kernel, &TrainConfig::with_gamma(opts.gamma))?;
    let classical_pred: Vec<i8> = test_set.points().iter().map(|x| decide(&classical, x).map(|d| d.sign)).collect::<Result<_>>()?;
    let classical_time_s = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let qcfg = QTrainConfig { zeta: opts.gamma, seed: opts.seed, ..QTrainConfig::default() };
    let quantum = q_train(&train_set, &train_y, &opts.kernel, &qcfg)?;
    let quantum_pred: Vec<i8> = test_set
        .points()
        .iter()
        .enumerate()
        .map(|(i, x)| q_decide(&quantum, x, &mut rng_for_stream(opts.seed, i as u64)).map(|d| d.label))
        .collect::<Result<_>>()?;
    let quantum_time_s = t1.elapsed().as_secs_f64();

    let mut report = BenchReport::new("bench table1", opts.seed);
    report.notes.push("reference accuracies come from the original 30-feature hardware study and are not asserted".into());
    report.notes.push("timings are desk-scale emulation times, not a speed comparison".into());
    report.table1 = Some(Table1Summary {
        train_count: train_rows.len(),
        test_count: test_rows.len(),
        kernel: opts.kernel,
        gamma: opts.gamma,
        explained_variance: pca.explained_ratio(),
        classical_accuracy: accuracy(&classical_pred, &test_y),
        quantum_exact_accuracy: accuracy(&quantum_pred, &test_y),
        classical_time_s,
        quantum_time_s,
        reference_accuracy: BTreeMap::from([("classical".to_string(), 0.99), ("quantum-simulator".to_string(), 0.90)]),
    });
    ensure_dir(&opts.out_dir)?;
    write_json(&opts.out_dir, "report.json", &report)?;
    Ok(report)
}
