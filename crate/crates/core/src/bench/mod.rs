//! Experiment harness: end-to-end clustering runs, σ sweeps, operation-count
//! scaling reports and the PCA + LS-SVM classification analog.

mod commands;
mod config;
mod report;
mod svg;

pub use commands::{
    cmd_cluster, cmd_scaling, cmd_sweep_sigma, cmd_table1_analog, run_pipeline, scaling_rows, PipelineOutcome,
    Table1Options, MIN_SCALING_POINTS,
};
pub use config::{Backend, DataSource, ExperimentConfig, DEFAULT_SHOTS};
pub use report::{
    load_report, BenchReport, RunRecord, ScalingRow, ScalingSummary, SweepRow, Table1Summary, REPORT_VERSION,
};
pub use svg::scaling_svg;

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 || xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
