//! BBHT with an unknown number of marked items: simulated mean query count,
//! its exact expectation and the `4n / sqrt((n - t) t)` bound.
//!
//! cargo run --release --example bbht_search

use multiclaw::grover::{bbht_expected_queries, BbhtSchedule, SearchSpace};
use multiclaw::harness::bbht_mean_queries;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>9} {:>6} {:>12} {:>12} {:>12}", "n", "t", "simulated", "exact", "bound");
    for (n, t) in [(1024, 1), (4096, 7), (65_536, 1), (65_536, 1000), (1 << 20, 5)] {
        let space = SearchSpace::new(n, t)?;
        let (mean, se) = bbht_mean_queries(n, t, 10_000, 1)?;
        let exact = bbht_expected_queries(space, &BbhtSchedule::for_space(space))?;
        println!(
            "{n:>9} {t:>6} {:>7.1} ±{se:>4.1} {exact:>12.1} {:>12.1}",
            mean,
            space.bbht_query_bound()
        );
    }
    Ok(())
}
