//! Counts neighbor scans of classical DFS and oracle queries of Grover DFS
//! on fully connected graphs, then writes CSV, SVG and JSON outputs.
//!
//! ```bash
//! cargo run --release --example scaling_report -- /tmp/scaling
//! ```

use svcq::bench::cmd_scaling;

fn main() -> svcq::Result<()> {
    let out = std::env::args().nth(1).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("svcq-scaling"));
    let ms: Vec<usize> = (6..=12).map(|p| 1 << p).collect();
    let report = cmd_scaling(&ms, &out)?;
    let summary = report.scaling.expect("scaling summary");
    println!("{:>6} {:>12} {:>14} {:>8}", "M", "dfs scans", "oracle queries", "searches");
    for r in &summary.rows {
        println!("{:>6} {:>12} {:>14} {:>8}", r.m, r.classical_scans, r.quantum_queries, r.grover_invocations);
    }
    println!("slopes: classical {:.3}, quantum {:.3}", summary.classical_slope, summary.quantum_slope);
    println!("outputs in {}", out.display());
    Ok(())
}
