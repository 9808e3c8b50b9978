//! Builds the fast algorithm, prints every stage and checks it against the
//! literal 16×16 kernel on all basis vectors.
//!
//!     cargo run --example verify_factorization

use dct16::fast::{build_proposed_factorization, Stage};
use dct16::transform::{orthogonalize, proposed_kernel};

fn main() -> Result<(), dct16::Error> {
    let kernel = proposed_kernel();
    let fast = build_proposed_factorization()?;

    for s in fast.stages() {
        let kind = match &s.stage {
            Stage::Butterfly(_) => "butterfly",
            Stage::Permutation(_) => "permutation",
        };
        println!("{:<3} {kind:<12} additions={}", s.label, s.stage.additions());
    }

    for j in 0..16 {
        let e: Vec<i64> = (0..16).map(|i| i64::from(i == j)).collect();
        assert_eq!(fast.apply(&e)?, kernel.mul_vec(&e)?, "column {j}");
    }
    println!("composed stages equal the kernel on all 16 basis vectors");

    let ops = fast.count_ops();
    println!(
        "additions={} multiplications={} bit_shifts={}",
        ops.additions, ops.multiplications, ops.bit_shifts
    );

    let c = orthogonalize(&kernel)?;
    let scaling: Vec<String> = c
        .scaling()
        .unwrap()
        .values()
        .iter()
        .map(|s| format!("{:.4}", 4.0 * s))
        .collect();
    println!("4·S = diag({})", scaling.join(", "));
    println!("max |Ĉ·Ĉᵀ − I| = {:.2e}", c.matrix().orthonormality_deviation());
    Ok(())
}
