//! Runs the two-blob pipeline on all three backends and compares adjacency
//! matrices and partitions against the classical run.
//!
//! ```bash
//! cargo run --release --example backend_agreement
//! ```

use svcq::bench::{run_pipeline, Backend, DataSource, ExperimentConfig};
use svcq::KernelSpec;

fn main() -> svcq::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let run = |backend| {
        let mut cfg = ExperimentConfig::new(DataSource::two_blobs(seed), KernelSpec::gaussian(2.0)?, 1.0, backend, "unused");
        cfg.seed = seed;
        run_pipeline(&cfg)
    };
    let classical = run(Backend::Classical)?;
    println!("{:<14} {:>8} {:>8} {:>10} {:>14}", "backend", "clusters", "edges", "hamming", "oracle queries");
    for backend in [Backend::Classical, Backend::QuantumExact, Backend::QuantumShots] {
        let out = if backend == Backend::Classical { classical.clone() } else { run(backend)? };
        let queries = out.record.query_stats.map(|q| q.oracle_queries.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "{:<14} {:>8} {:>8} {:>10} {:>14}{}",
            backend.name(),
            out.clusters.cluster_count,
            out.adjacency.edge_count(),
            out.adjacency.hamming(&classical.adjacency),
            queries,
            if out.clusters == classical.clusters { "" } else { "  (partition differs)" }
        );
    }
    Ok(())
}
