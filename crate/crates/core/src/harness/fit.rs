use super::sweep::{Algorithm, SweepRecord};
use super::HarnessError;
use crate::claw::exponent::to_f64;
use crate::claw::{hsx_exponent, mclaw_exponent};

/// Fewest points [`fit_exponent`] accepts.
pub const MIN_FIT_POINTS: usize = 5;

/// Least-squares fit of `ln(mean queries)` against `ln N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub theory_exponent: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

/// Query exponent predicted for `algorithm` at `l`.
pub fn theory_exponent(algorithm: Algorithm, l: u32) -> f64 {
    match algorithm {
        Algorithm::Hsx => to_f64(&hsx_exponent(l)),
        Algorithm::Bht | Algorithm::Mclaw | Algorithm::Collision => to_f64(&mclaw_exponent(l)),
    }
}

/// Allowed distance between fitted and predicted exponents. Finite-size
/// constants weigh more as `l` grows, so the tolerance widens with `l`.
pub fn fit_tolerance(l: u32) -> f64 {
    match l {
        2 => 0.05,
        3 => 0.07,
        _ => 0.10,
    }
}

/// Ordinary least squares `y = intercept + slope x`.
pub fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Fits the query exponent of a sweep and compares it with the prediction.
pub fn fit_exponent(records: &[SweepRecord]) -> Result<FitResult, HarnessError> {
    if records.len() < MIN_FIT_POINTS {
        return Err(HarnessError::TooFewPoints {
            got: records.len(),
            min: MIN_FIT_POINTS,
        });
    }
    let (algorithm, l) = (records[0].algorithm, records[0].l);
    if records.iter().any(|r| r.algorithm != algorithm || r.l != l) {
        return Err(HarnessError::MixedRecords);
    }
    if let Some(r) = records.iter().find(|r| !(r.mean_queries > 0.0)) {
        return Err(HarnessError::NoSuccessfulTrials { n: r.n });
    }
    let mut ns: Vec<u32> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 2 {
        return Err(HarnessError::MixedRecords);
    }

    let xs: Vec<f64> = records.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.mean_queries.ln()).collect();
    let (slope, intercept) = ols(&xs, &ys);
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / xs.len() as f64)
        .sqrt();
    let theory = theory_exponent(algorithm, l);
    let tolerance = fit_tolerance(l);
    Ok(FitResult {
        slope,
        intercept,
        residual,
        theory_exponent: theory,
        tolerance,
        within_tolerance: (slope - theory).abs() <= tolerance,
    })
}
