//! Parses permutations written in cycle notation and recovers the final
//! permutation of the factorization from the kernel and the other stages.
//!
//!     cargo run --example cycle_notation

use dct16::fast::{derive_residual_permutation, parse_cycles, proposed_partial_stages, P1_CYCLES, P2_CYCLES};
use dct16::transform::proposed_kernel;

fn main() -> Result<(), dct16::Error> {
    // `(a b c)` means slot a reads slot b, b reads c, c reads a.
    let p = parse_cycles("(1 3 2)", 4)?;
    println!("(1 3 2) on [a, b, c, d] -> {:?}", p.apply(&['a', 'b', 'c', 'd']));

    let p1 = parse_cycles(P1_CYCLES, 16)?;
    println!("P1 {P1_CYCLES}\n   mapping {:?}", p1.mapping());

    let derived = derive_residual_permutation(&proposed_kernel(), &proposed_partial_stages()?)?;
    let printed = parse_cycles(P2_CYCLES, 16)?;
    println!("P2 derived {}", derived.to_cycles());
    println!("P2 printed {P2_CYCLES}");
    assert_eq!(derived, printed);
    println!("derived and printed P2 agree");

    match parse_cycles("(1 2)(2 3)", 4) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
