//! Searching a random function for an input whose image lies in a target
//! list, through the five-fold inflated predicate.
//!
//! cargo run --release --example preimage_search

use multiclaw::oracle::{mtps, sample_random_function, ImageList, InflatedPreimageOracle};
use multiclaw::{QueryLedger, TrialRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 1 << 16;
    let f = sample_random_function(n, n, 7)?;
    for size in [1u32, 16, 256] {
        let mut targets = ImageList::new();
        for y in 0..size {
            targets.insert(Vec::new(), y * 97);
        }
        let oracle = InflatedPreimageOracle::new(&f, &targets);
        let mut total = 0;
        let runs = 200;
        for seed in 0..runs {
            let mut ledger = QueryLedger::unlimited();
            let x = mtps(&f, &targets, &mut ledger, &mut TrialRng::new(seed))?;
            assert!(targets.contains(f.values()[x as usize]));
            total += ledger.count();
        }
        println!(
            "|L'| = {size:>3}: {} preimages, mean {:.1} queries (bound {:.1})",
            oracle.preimage_count(),
            total as f64 / runs as f64,
            oracle.query_bound()
        );
    }
    Ok(())
}
