//! Binary classification of a 30-feature data set reduced to two principal
//! components, trained on 20 rows with both backends.
//!
//! ```bash
//! cargo run --release --example table1_analog -- crates/core/tests/data/two_class_30d.csv
//! ```

use std::path::PathBuf;

use svcq::bench::{cmd_table1_analog, Table1Options};

fn main() -> svcq::Result<()> {
    let input = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/two_class_30d.csv"));
    let out = std::env::temp_dir().join("svcq-table1");
    let report = cmd_table1_analog(&Table1Options::new(input, 20, 1, &out))?;
    let t = report.table1.expect("table summary");
    println!("train {} / test {}", t.train_count, t.test_count);
    println!("classical accuracy     {:.3}", t.classical_accuracy);
    println!("quantum-exact accuracy {:.3}", t.quantum_exact_accuracy);
    for (name, acc) in &t.reference_accuracy {
        println!("published {name:<10} {acc:.2}");
    }
    Ok(())
}
