//! Clusters two Gaussian blobs with the classical backend and prints the
//! partition next to the generator's ground truth.
//!
//! ```bash
//! cargo run --release --example two_blob_clustering
//! ```

use svcq::dataset::{synth_blobs, BlobSpec};
use svcq::lssvm::{fit_contour, identify_bsv, TrainConfig};
use svcq::svc::{build_adjacency, cluster_finding_counted, DEFAULT_LINE_SAMPLES};
use svcq::KernelSpec;

fn main() -> svcq::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let data = synth_blobs(
        seed,
        &[BlobSpec::new(vec![0.0, 0.0], 0.5, 30), BlobSpec::new(vec![10.0, 10.0], 0.5, 30)],
    )?;
    let spec = KernelSpec::gaussian(2.0)?;
    let model = fit_contour(&data, &spec, &TrainConfig::with_gamma(1.0))?;
    let (adjacency, segments) = build_adjacency(&model, &data, DEFAULT_LINE_SAMPLES)?;
    let (clusters, scans) = cluster_finding_counted(&adjacency);

    println!("points: {}  edges: {}  segment tests: {}  dfs scans: {scans}", data.len(), adjacency.edge_count(), segments.segment_tests);
    println!("bias {:.4}, bounded support vectors: {:?}", model.bias, identify_bsv(&model, &data)?);
    println!("clusters found: {}", clusters.cluster_count);
    for (c, members) in clusters.clusters.iter().enumerate() {
        let blobs: Vec<_> = members.iter().filter_map(|&p| data.blob_index(p)).collect();
        let pure = blobs.windows(2).all(|w| w[0] == w[1]);
        println!("  cluster {c}: {} points, blob {:?}{}", members.len(), blobs.first(), if pure { "" } else { " (mixed)" });
    }
    Ok(())
}
