//! One traced run of the level-by-level claw finder: its parameters and the
//! state of the lists as each level starts.
//!
//! cargo run --release --example mclaw_levels

use multiclaw::claw::{build_params, mclaw_traced, verify_claw};
use multiclaw::oracle::sample_random_function;
use multiclaw::{QueryLedger, TrialRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 1u32 << 16;
    let params = build_params(3, n as f64, 1.0, 4)?;
    println!("{params}");
    let mut rng = TrialRng::new(11);
    let functions = (0..3)
        .map(|i| sample_random_function(n, n, 100 + i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ledger = QueryLedger::new(params.ledger_limit());
    let (result, trace) = mclaw_traced(&functions, &params, &mut ledger, &mut rng)?;
    for s in &trace {
        println!(
            "level {}: |Im(f_i) ∩ L'_(i-1)| = {:>6} of |L'_(i-1)| = {:>6}, needs N_(i-1) = {:.1}",
            s.level,
            s.overlap,
            s.previous_len,
            params.list_size(s.level - 1)
        );
    }
    println!("per-level queries {:?}, total {}", result.per_level_queries, result.total_queries);
    if let Some(claw) = result.solution {
        println!("3-claw {:?} -> {}, verified: {}", claw.xs, claw.y, verify_claw(&claw, &functions));
    }
    Ok(())
}
