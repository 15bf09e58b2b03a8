//! Support vector clustering on two backends.
//!
//! The classical backend trains a least-squares SVM by solving its KKT
//! linear system, tests segment connectivity between points against the
//! resulting contour, and extracts clusters as connected components of the
//! adjacency graph. The quantum backend emulates the same pipeline at desk
//! scale: amplitude-encoded data, swap-test kernel estimation, spectral
//! matrix inversion and Grover-driven depth-first search with oracle-query
//! accounting.
//!
//! Start with the runnable programs under `examples/`:
//!
//! ```bash
//! cargo run --release -p svcq --example two_blob_clustering
//! cargo run --release -p svcq --example backend_agreement
//! cargo run --release -p svcq --example scaling_report
//! ```

pub mod bench;
pub mod dataset;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod lssvm;
pub mod qsim;
pub mod qsvc;
pub mod rng;
pub mod svc;

pub use dataset::Dataset;
pub use error::{Result, SvcError};
pub use kernels::KernelSpec;
pub use lssvm::{SvmModel, TrainConfig};
pub use svc::{AdjacencyMatrix, ClusterResult};
