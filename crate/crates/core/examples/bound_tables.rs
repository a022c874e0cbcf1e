//! Exact query exponents of both finders and the concrete query budgets for
//! multicollisions of a 512-bit hash.
//!
//! cargo run --release --example bound_tables

use multiclaw::claw::build_params;
use multiclaw::harness::{bound_table, render_bound_table, render_sha3_table, sha3_table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", render_bound_table(&bound_table(10)?));
    println!();
    print!("{}", render_sha3_table(&sha3_table()));
    println!();
    // the same budget, from the full parameter set
    let p = build_params(4, 2f64.powi(512), 1.0, 2)?;
    println!("{p}");
    Ok(())
}
