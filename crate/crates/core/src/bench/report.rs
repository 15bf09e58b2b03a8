use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Backend, ExperimentConfig};
use crate::error::{Result, SvcError};
use crate::qsvc::QueryStats;

pub const REPORT_VERSION: u32 = 1;

/// Counters of one clustering run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub m: usize,
    pub n: usize,
    pub backend: Backend,
    /// Kernel evaluations (or estimates) for training plus decisions.
    pub kernel_ops: u64,
    pub segment_tests: u64,
    pub decision_evals: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dfs_scans: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query_stats: Option<QueryStats>,
    pub cluster_count: usize,
    pub bsv_count: usize,
    pub wall_time_s: f64,
    pub config: ExperimentConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sigma: f64,
    pub cluster_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub m: usize,
    pub classical_scans: u64,
    pub quantum_queries: u64,
    pub grover_invocations: u64,
    pub counting_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSummary {
    pub rows: Vec<ScalingRow>,
    pub classical_slope: f64,
    pub quantum_slope: f64,
    pub grover_fail_prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Summary {
    pub train_count: usize,
    pub test_count: usize,
    pub kernel: crate::kernels::KernelSpec,
    pub gamma: f64,
    pub explained_variance: f64,
    pub classical_accuracy: f64,
    pub quantum_exact_accuracy: f64,
    pub classical_time_s: f64,
    pub quantum_time_s: f64,
    /// Published accuracies on the original 30-feature data, kept for comparison only.
    pub reference_accuracy: BTreeMap<String, f64>,
}

/// Versioned, self-describing output of every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub version: u32,
    pub command: String,
    pub seed: u64,
    pub notes: Vec<String>,
    #[serde(default)]
    pub runs: Vec<RunRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table1: Option<Table1Summary>,
}

impl BenchReport {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            version: REPORT_VERSION,
            command: command.into(),
            seed,
            notes: Vec::new(),
            runs: Vec::new(),
            sweep: Vec::new(),
            scaling: None,
            table1: None,
        }
    }

    /// Copy with every wall-time field zeroed, for determinism checks.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.runs.iter_mut().for_each(|run| run.wall_time_s = 0.0);
        if let Some(t) = r.table1.as_mut() {
            t.classical_time_s = 0.0;
            t.quantum_time_s = 0.0;
        }
        r
    }
}

pub(crate) fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(value)?;
    fs::write(&path, text + "\n").map_err(|source| SvcError::Io { path, source })
}

pub fn load_report(path: &Path) -> Result<BenchReport> {
    if !path.exists() {
        return Err(SvcError::MissingFile(path.to_path_buf()));
    }
    let text = fs::read_to_string(path).map_err(|source| SvcError::Io { path: path.to_path_buf(), source })?;
    let report: BenchReport = serde_json::from_str(&text)?;
    if report.version != REPORT_VERSION {
        return Err(SvcError::InvalidArgument(format!("unsupported report version {}", report.version)));
    }
    Ok(report)
}
