//! Error of the three-factor product formula against the exact exponential
//! for shrinking time steps. The fitted log-log slope should sit near 2.
//!
//! ```bash
//! cargo run --release --example trotter_error
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use svcq::bench::log_log_slope;
use svcq::qsim::trotter_exp;
use svcq::rng::rng_from_seed;

fn random_hermitian(rng: &mut impl Rng, n: usize) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

fn main() -> svcq::Result<()> {
    let mut rng = rng_from_seed(2);
    let (j, k, g) = (random_hermitian(&mut rng, 8), random_hermitian(&mut rng, 8), random_hermitian(&mut rng, 8));
    let steps = [0.2, 0.1, 0.05, 0.025, 0.0125];
    let mut errors = Vec::new();
    for dt in steps {
        let e = trotter_exp(&j, &k, &g, dt, 1.0)?.error;
        println!("dt = {dt:<7} error = {e:.3e}");
        errors.push(e);
    }
    if let Some(slope) = log_log_slope(&steps, &errors) {
        println!("log-log slope {slope:.3}");
    }
    Ok(())
}
