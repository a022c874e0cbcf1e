//! Monte-Carlo checks of the concentration statements behind the success
//! probability: image sizes of random functions, hypergeometric lower tails
//! and the per-level good events.
//!
//! cargo run --release --example lemma_checks

use multiclaw::stats::{
    good_event_rate, hypergeom_tail_check, image_bound, image_size_check, HypergeomParams,
    LemmaReport,
};
use multiclaw::TrialRng;

fn show(name: &str, r: &LemmaReport) {
    println!(
        "{} {name}: violation rate {:.4} (allowed {:.4} + {:.4}), {} trials, {} excluded",
        if r.pass { "PASS" } else { "FAIL" },
        r.empirical_rate,
        r.theoretical_bound,
        r.allowance(),
        r.trials,
        r.excluded
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("image bound at |X| = |Y| = 4096: {:.2}", image_bound(4096, 4096));
    show("image size", &image_size_check(4096, 4096, 1000, 1)?);

    let mean = 3333.0 * 400.0 / 10_000.0;
    let p = HypergeomParams::new(3333, 10_000, 400, f64::sqrt(mean) / 2.0)?;
    println!("hypergeometric: E[K] = {:.2}, α = {:.5}, tail bound {:.4}", p.mean(), p.alpha(), p.tail_bound());
    show("hypergeometric tail", &hypergeom_tail_check(&p, 10_000, &mut TrialRng::new(2))?);

    for (l, level) in [(2, 2), (3, 3)] {
        show(
            &format!("good event l={l} level={level}"),
            &good_event_rate(l, 1 << 14, 1.0, 4, level, 200, 3)?,
        );
    }
    Ok(())
}
