//! Kernel values estimated through norm and swap-test stages, exact and with
//! finite shots, next to the classical values.
//!
//! ```bash
//! cargo run --release --example swap_test_kernel
//! ```

use svcq::kernels::kernel_eval;
use svcq::qsim::{inner_product_estimate, Shots};
use svcq::qsvc::{q_kernel_eval, QTrainConfig};
use svcq::rng::rng_from_seed;
use svcq::KernelSpec;

fn main() -> svcq::Result<()> {
    let (x, y) = ([0.6, -1.2, 0.4], [1.0, 0.3, -0.5]);
    let mut rng = rng_from_seed(11);
    let eps = 0.02;
    let exact = inner_product_estimate(&x, &y, Shots::Exact, eps, &mut rng)?;
    let sampled = inner_product_estimate(&x, &y, Shots::Count(10_000), eps, &mut rng)?;
    println!("dot product: exact-mode {:.6}, sampled {:.6} ({} shots per stage)", exact.dot, sampled.dot, sampled.shots_used);

    let exact_cfg = QTrainConfig::default();
    let shots_cfg = QTrainConfig { shots: Shots::Count(10_000), kernel_accuracy: eps, ..QTrainConfig::default() };
    for spec in [KernelSpec::Linear, KernelSpec::polynomial(2)?, KernelSpec::gaussian(0.5)?] {
        println!(
            "{spec:?}: classical {:.6}, exact {:.6}, sampled {:.6}",
            kernel_eval(&spec, &x, &y)?,
            q_kernel_eval(&spec, &x, &y, &exact_cfg, &mut rng)?,
            q_kernel_eval(&spec, &x, &y, &shots_cfg, &mut rng)?
        );
    }
    Ok(())
}
