use std::fmt::Write as _;

use super::fit::FitResult;
use super::sweep::SweepRecord;

/// Wilson score interval at 95% confidence for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z * Z;
    let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Human-readable summary of a sweep.
pub fn render_sweep_table(records: &[SweepRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:>2} {:>9} {:>7} {:>22} {:>12} {:>10}  per level",
        "algorithm", "l", "N", "trials", "success (95% Wilson)", "mean q", "stddev"
    );
    for r in records {
        let (lo, hi) = wilson_interval(r.successes, r.trials);
        let levels = r
            .per_level_queries
            .iter()
            .map(|q| format!("{q:.1}"))
            .collect::<Vec<_>>()
            .join(" / ");
        let _ = writeln!(
            out,
            "{:<10} {:>2} {:>9} {:>7} {:>6.3} [{:.3}, {:.3}] {:>12.1} {:>10.1}  {}",
            r.algorithm.name(),
            r.l,
            r.n,
            r.trials,
            r.success_rate(),
            lo,
            hi,
            r.mean_queries,
            r.stddev_queries,
            levels
        );
    }
    out
}

pub fn render_fit(fit: &FitResult) -> String {
    format!(
        "slope {:.4}  intercept {:.4}  rms residual {:.4}\ntheory {:.4} ± {:.2}: {}\n",
        fit.slope,
        fit.intercept,
        fit.residual,
        fit.theory_exponent,
        fit.tolerance,
        if fit.within_tolerance { "within tolerance" } else { "OUTSIDE tolerance" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_known_values() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
        let (lo, hi) = wilson_interval(0, 10);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.2775).abs() < 1e-4);
        let (lo, hi) = wilson_interval(10, 10);
        assert!((lo - 0.7225).abs() < 1e-4);
        assert!((hi - 1.0).abs() < 1e-12);
    }
}
