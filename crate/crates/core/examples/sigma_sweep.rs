//! Cluster count of the two-blob fixture as the Gaussian width parameter
//! varies. Very small σ makes the contour enclose everything.
//!
//! ```bash
//! cargo run --release --example sigma_sweep
//! ```

use svcq::bench::{cmd_sweep_sigma, Backend, DataSource, ExperimentConfig};
use svcq::KernelSpec;

fn main() -> svcq::Result<()> {
    let out = std::env::temp_dir().join("svcq-sigma-sweep");
    let cfg = ExperimentConfig::new(DataSource::two_blobs(7), KernelSpec::gaussian(1.0)?, 1.0, Backend::Classical, &out);
    let report = cmd_sweep_sigma(&cfg, &[0.001, 0.01, 0.05, 0.1, 0.5, 2.0, 8.0, 32.0])?;
    println!("{:>8} {:>9}", "sigma", "clusters");
    for row in &report.sweep {
        println!("{:>8} {:>9}", row.sigma, row.cluster_count);
    }
    println!("report written to {}", out.join("report.json").display());
    Ok(())
}
