//! Complexity and performance tables for the built-in transforms.
//!
//!     cargo run --example markov_metrics [-- RHO]

use dct16::metrics::{complexity_table, performance_table, DEFAULT_RHO};
use dct16::transform::TransformRegistry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rho = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => DEFAULT_RHO,
    };
    let registry = TransformRegistry::builtin();

    println!(
        "{:<10} {:>6} {:>6} {:>6} {:>6}",
        "transform", "mult", "add", "shift", "total"
    );
    for row in complexity_table(&registry) {
        println!(
            "{:<10} {:>6} {:>6} {:>6} {:>6}",
            row.name, row.multiplications, row.additions, row.bit_shifts, row.total
        );
    }

    println!("\nrho = {rho}");
    println!(
        "{:<10} {:>8} {:>9} {:>8} {:>8} {:>8}",
        "transform", "d2", "ε", "MSE", "Cg dB", "η %"
    );
    for r in performance_table(&registry, rho)? {
        println!(
            "{:<10} {:>8.4} {:>9.4} {:>8.4} {:>8.4} {:>8.4}",
            r.name, r.d2, r.epsilon, r.mse, r.coding_gain_db, r.efficiency_pct
        );
    }
    Ok(())
}
