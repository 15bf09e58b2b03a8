use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::dataset::{load_csv, synth_blobs, BlobSpec, Dataset};
use crate::error::{Result, SvcError};
use crate::kernels::KernelSpec;
use crate::lssvm::TrainConfig;
use crate::qsim::swap::Shots;
use crate::qsvc::QTrainConfig;
use crate::svc::DEFAULT_LINE_SAMPLES;

pub const DEFAULT_SHOTS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Classical,
    QuantumExact,
    QuantumShots,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Classical => "classical",
            Backend::QuantumExact => "quantum-exact",
            Backend::QuantumShots => "quantum-shots",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DataSource {
    Csv { path: PathBuf, has_labels: bool },
    Blobs { seed: u64, blobs: Vec<BlobSpec> },
}

impl DataSource {
    /// The two-blob recipe used throughout the examples and tests.
    pub fn two_blobs(seed: u64) -> Self {
        DataSource::Blobs {
            seed,
            blobs: vec![BlobSpec::new(vec![0.0, 0.0], 0.5, 30), BlobSpec::new(vec![10.0, 10.0], 0.5, 30)],
        }
    }

    pub fn load(&self) -> Result<Dataset> {
        match self {
            DataSource::Csv { path, has_labels } => load_csv(path, *has_labels),
            DataSource::Blobs { seed, blobs } => synth_blobs(*seed, blobs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub source: DataSource,
    pub kernel: KernelSpec,
    /// Regularization γ; the quantum backend uses it as ζ.
    pub gamma: f64,
    pub backend: Backend,
    pub line_samples: usize,
    /// Only meaningful for the quantum-shots backend.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn new(source: DataSource, kernel: KernelSpec, gamma: f64, backend: Backend, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            source,
            kernel,
            gamma,
            backend,
            line_samples: DEFAULT_LINE_SAMPLES,
            shots: (backend == Backend::QuantumShots).then_some(DEFAULT_SHOTS),
            seed: 0,
            out_dir: out_dir.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(SvcError::InvalidArgument(format!("gamma {} must be > 0", self.gamma)));
        }
        if self.line_samples < 2 {
            return Err(SvcError::InvalidArgument("line samples must be >= 2".into()));
        }
        match (self.backend, self.shots) {
            (Backend::QuantumShots, None) | (Backend::QuantumShots, Some(0)) => {
                Err(SvcError::InvalidArgument("quantum-shots needs --shots >= 1".into()))
            }
            (Backend::QuantumShots, Some(_)) | (_, None) => Ok(()),
            (backend, Some(_)) => Err(SvcError::InvalidArgument(format!("--shots does not apply to the {} backend", backend.name()))),
        }
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig::with_gamma(self.gamma)
    }

    pub fn quantum_config(&self) -> QTrainConfig {
        QTrainConfig {
            zeta: self.gamma,
            shots: match self.shots {
                Some(n) if self.backend == Backend::QuantumShots => Shots::Count(n),
                _ => Shots::Exact,
            },
            seed: self.seed,
            ..QTrainConfig::default()
        }
    }
}
