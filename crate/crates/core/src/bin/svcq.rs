//! Command-line front end for clustering runs and benchmarks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use svcq::bench::{
    cmd_cluster, cmd_scaling, cmd_sweep_sigma, cmd_table1_analog, Backend, DataSource, ExperimentConfig, Table1Options,
};
use svcq::svc::DEFAULT_LINE_SAMPLES;
use svcq::{KernelSpec, Result, SvcError};

#[derive(Parser)]
#[command(name = "svcq", version, about = "Support vector clustering on classical and emulated quantum backends")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a CSV of points.
    Cluster(ClusterArgs),
    /// Cluster once per Gaussian sigma and tabulate the cluster counts.
    SweepSigma {
        #[command(flatten)]
        run: ClusterArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        sigmas: Vec<f64>,
    },
    /// Benchmarks.
    Bench {
        #[command(subcommand)]
        which: BenchCommand,
    },
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Identification-phase operation counts versus M.
    Scaling {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// PCA to 2-D and classical vs quantum-exact LS-SVM accuracy.
    Table1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        train_count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelKind {
    Linear,
    Poly,
    Gaussian,
}

#[derive(Args)]
struct ClusterArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    has_labels: bool,
    #[arg(long, value_enum, default_value = "gaussian")]
    kernel: KernelKind,
    #[arg(long, default_value_t = 2)]
    degree: u32,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Soft-margin weight (zeta on the quantum backend).
    #[arg(long)]
    gamma: f64,
    #[arg(long, value_enum, default_value = "classical")]
    backend: Backend,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_LINE_SAMPLES)]
    line_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

impl ClusterArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        if !self.input.exists() {
            return Err(SvcError::MissingFile(self.input.clone()));
        }
        let kernel = match self.kernel {
            KernelKind::Linear => KernelSpec::Linear,
            KernelKind::Poly => KernelSpec::polynomial(self.degree)?,
            KernelKind::Gaussian => KernelSpec::gaussian(self.sigma)?,
        };
        let source = DataSource::Csv { path: self.input.clone(), has_labels: self.has_labels };
        let mut cfg = ExperimentConfig::new(source, kernel, self.gamma, self.backend, &self.out);
        cfg.line_samples = self.line_samples;
        cfg.seed = self.seed;
        if self.shots.is_some() || self.backend != Backend::QuantumShots {
            cfg.shots = self.shots;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cluster(args) => {
            let (report, _) = cmd_cluster(&args.config()?)?;
            let run = &report.runs[0];
            println!("clusterCount {} ({} bounded support vectors)", run.cluster_count, run.bsv_count);
            println!("wrote clusters.json, model.json, report.json to {}", args.out.display());
        }
        Command::SweepSigma { run, sigmas } => {
            let report = cmd_sweep_sigma(&run.config()?, &sigmas)?;
            println!("sigma\tclusterCount");
            for row in &report.sweep {
                println!("{}\t{}", row.sigma, row.cluster_count);
            }
        }
        Command::Bench { which: BenchCommand::Scaling { m, out } } => {
            let report = cmd_scaling(&m, &out)?;
            let s = report.scaling.expect("scaling summary");
            println!("M\tclassical_scans\tquantum_queries");
            for r in &s.rows {
                println!("{}\t{}\t{}", r.m, r.classical_scans, r.quantum_queries);
            }
            println!("classical slope {:.3}", s.classical_slope);
            println!("quantum slope {:.3}", s.quantum_slope);
        }
        Command::Bench { which: BenchCommand::Table1 { input, train_count, seed, out } } => {
            if !input.exists() {
                return Err(SvcError::MissingFile(input));
            }
            let report = cmd_table1_analog(&Table1Options::new(input, train_count, seed, out))?;
            let t = report.table1.expect("table1 summary");
            println!("train {} / test {}", t.train_count, t.test_count);
            println!("classical accuracy {:.3}", t.classical_accuracy);
            println!("quantum-exact accuracy {:.3}", t.quantum_exact_accuracy);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("svcq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
