//! The BHT 2-claw finder on two random functions.
//!
//! cargo run --release --example bht_claw

use multiclaw::claw::{bht_claw, verify_claw};
use multiclaw::oracle::sample_random_function;
use multiclaw::{QueryLedger, TrialRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for e in [12, 16, 20] {
        let n = 1u32 << e;
        let f1 = sample_random_function(n, n, 1)?;
        let f2 = sample_random_function(n, n, 2)?;
        let mut ledger = QueryLedger::unlimited();
        let r = bht_claw(&f1, &f2, None, &mut ledger, &mut TrialRng::new(e as u64))?;
        let claw = r.solution.expect("an unlimited ledger never aborts on a claw that exists");
        println!(
            "N = 2^{e}: claw {:?} -> {} in {} queries (list {}, search {}), N^(1/3) = {:.0}, verified: {}",
            claw.xs,
            claw.y,
            r.total_queries,
            r.per_level_queries[0],
            r.per_level_queries[1],
            (n as f64).cbrt(),
            verify_claw(&claw, &[f1.clone(), f2.clone()])
        );
    }
    Ok(())
}
