//! Writes the synthetic CSV datasets used by the CLI walkthrough and tests:
//! two Gaussian blobs in the plane and a labeled 30-feature two-class set.
//!
//! ```bash
//! cargo run --example synthetic_data -- /tmp/svcq-data
//! ```

use std::path::PathBuf;

use svcq::dataset::{synth_blobs, synth_two_class, write_csv, BlobSpec};

fn main() -> svcq::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "svcq-data".into()));
    std::fs::create_dir_all(&dir).map_err(|source| svcq::SvcError::Io { path: dir.clone(), source })?;

    let blobs = synth_blobs(7, &[BlobSpec::new(vec![0.0, 0.0], 0.5, 30), BlobSpec::new(vec![10.0, 10.0], 0.5, 30)])?;
    write_csv(&blobs, &dir.join("two_blobs.csv"))?;

    let two_class = synth_two_class(2024, 120, 30, 6.0, 0.3)?;
    write_csv(&two_class, &dir.join("two_class_30d.csv"))?;

    println!("wrote {} blob points and {} labeled rows to {}", blobs.len(), two_class.len(), dir.display());
    Ok(())
}
