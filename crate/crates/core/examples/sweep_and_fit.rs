//! A sweep over range sizes written as CSV, read back and fitted in log-log
//! space against the predicted exponent.
//!
//! cargo run --release --example sweep_and_fit [algorithm] [l]

use multiclaw::harness::{
    fit_exponent, read_csv, render_fit, render_sweep_table, run_sweep, Algorithm, SweepConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let algorithm: Algorithm = args.next().as_deref().unwrap_or("mclaw").parse()?;
    let l: u32 = args.next().map_or(Ok(2), |a| a.parse())?;
    let out = std::env::temp_dir().join(format!("sweep_{algorithm}_l{l}.csv"));
    let config = SweepConfig {
        algorithm,
        l,
        n: SweepConfig::powers_of_two((10..=18).step_by(2)),
        c_n: 1.0,
        k: 4,
        trials: 40,
        seed: 42,
        out: Some(out.clone()),
    };
    let records = run_sweep(&config)?;
    print!("{}", render_sweep_table(&records));
    let back = read_csv(std::fs::File::open(&out)?)?;
    print!("{}", render_fit(&fit_exponent(&back)?));
    println!("CSV written to {}", out.display());
    Ok(())
}
