//! Solves a small LS-SVM system by eigenvalue inversion of the
//! trace-normalized matrix, with and without a finite eigenvalue register,
//! and compares the descaled solution with the classical solver.
//!
//! ```bash
//! cargo run --release --example spectral_inversion
//! ```

use svcq::dataset::{synth_blobs, BlobSpec};
use svcq::lssvm::{train, TrainConfig};
use svcq::qsvc::{q_train, QTrainConfig};
use svcq::KernelSpec;

fn main() -> svcq::Result<()> {
    let data = synth_blobs(5, &[BlobSpec::new(vec![-1.0, 0.0], 0.4, 6), BlobSpec::new(vec![1.0, 0.5], 0.4, 6)])?;
    let labels: Vec<i8> = (0..data.len()).map(|i| if data.blob_index(i) == Some(0) { 1 } else { -1 }).collect();
    let spec = KernelSpec::gaussian(0.8)?;
    let classical = train(&data, &labels, &spec, &TrainConfig::with_gamma(2.0))?;
    println!("classical bias {:.6}", classical.bias);

    for bits in [None, Some(12), Some(6)] {
        let cfg = QTrainConfig { zeta: 2.0, phase_bits: bits, ..QTrainConfig::default() };
        let model = q_train(&data, &labels, &spec, &cfg)?;
        let (b, alpha) = model.descaled();
        let err = alpha.iter().zip(&classical.alpha).map(|(a, c)| (a - c).abs()).fold((b - classical.bias).abs(), f64::max);
        println!(
            "register {:>7}: bias {b:.6}, max deviation {err:.2e}, inverted {} / filtered {}",
            bits.map_or("exact".to_string(), |b| format!("{b} bits")),
            model.inverted,
            model.filtered
        );
    }
    Ok(())
}
