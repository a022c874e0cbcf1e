//! Paired l-collision searches: the recursive HSX finder and the
//! level-by-level finder run on the same random function.
//!
//! cargo run --release --example hsx_vs_mclaw [log2 N] [pairs]

use multiclaw::claw::build_params;
use multiclaw::harness::{run_trial, Algorithm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let e: u32 = args.next().map_or(Ok(16), |a| a.parse())?;
    let pairs: u64 = args.next().map_or(Ok(50), |a| a.parse())?;
    let n = 1u32 << e;
    for l in [2, 3] {
        let params = build_params(l, n as f64, 1.0, 4)?;
        let (mut ours, mut theirs, mut both) = (0, 0, 0);
        for t in 0..pairs {
            let c = run_trial(Algorithm::Collision, &params, n, 5, t)?;
            let h = run_trial(Algorithm::Hsx, &params, n, 5, t)?;
            assert!(c.verified && h.verified);
            if c.success && h.success {
                both += 1;
                ours += c.total_queries;
                theirs += h.total_queries;
            }
        }
        println!(
            "l = {l}, N = 2^{e}: mean queries over {both} pairs, level-by-level {:.1}, recursive {:.1}",
            ours as f64 / both as f64,
            theirs as f64 / both as f64
        );
    }
    Ok(())
}
