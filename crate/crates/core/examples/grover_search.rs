//! Grover search on small registers: success probability against the number
//! of iterations, and the randomized schedule when the marked count is
//! unknown.
//!
//! ```bash
//! cargo run --release --example grover_search
//! ```

use svcq::qsim::grover::{grover_amplitudes, optimal_iterations, success_probability};
use svcq::qsim::{grover_search, MarkedHint};
use svcq::rng::rng_from_seed;

fn main() -> svcq::Result<()> {
    let n_qubits = 6;
    let space = 1usize << n_qubits;
    let marked: Vec<bool> = (0..space).map(|i| i == 41).collect();
    println!("N = {space}, one marked item, optimal r = {}", optimal_iterations(space, 1));
    for r in 0..=8 {
        let amps = grover_amplitudes(&marked, r);
        println!("  r = {r}: p = {:.4} (closed form {:.4})", amps[41] * amps[41], success_probability(space, 1, r));
    }

    let mut rng = rng_from_seed(3);
    for k in [1usize, 4, 16] {
        let o = grover_search(|i| i % (space / k) == 0, n_qubits, MarkedHint::Unknown, 1e-6, &mut rng)?;
        println!(
            "unknown k = {k:>2}: found {:?} after {} iterations, {} oracle queries",
            o.found_index, o.iterations, o.oracle_queries
        );
    }
    let o = grover_search(|_| false, n_qubits, MarkedHint::Unknown, 1e-6, &mut rng)?;
    println!("no marked item: {:?} after {} oracle queries", o.found_index, o.oracle_queries);
    Ok(())
}
