//! Closed-form Grover success probabilities next to a direct state-vector
//! simulation of the same marked set.
//!
//! cargo run --release --example grover_backends

use std::collections::BTreeSet;

use multiclaw::grover::{grover_success_prob, statevector_grover, SearchSpace};
use multiclaw::harness::max_backend_gap;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SearchSpace::new(512, 7)?;
    let marked: BTreeSet<u64> = [3, 40, 41, 100, 256, 300, 511].into();
    println!("  j   closed form   state vector");
    for j in (0..=30).step_by(3) {
        let a = grover_success_prob(space, j)?;
        let s = statevector_grover(space, &marked, j)?;
        println!("{j:>3}   {a:.10}  {s:.10}");
    }
    println!("largest gap over 240 random (n, t, j): {:.2e}", max_backend_gap(240)?);
    Ok(())
}
