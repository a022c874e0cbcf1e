//! Falsification-style checks of the probabilistic lemmas behind the
//! success-probability bound of `Mclaw_k`.
//!
//! Every check reports a violation rate against the largest violation
//! probability the lemma allows. A check passes when the empirical rate does
//! not exceed that bound by more than two binomial standard errors of the
//! estimated rate.

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::claw::{build_params, mclaw_traced, ClawError};
use crate::oracle::{sample_random_function, OracleError, QueryLedger};
use crate::rng::{mix_seed, TrialRng};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("tail offset must be at least 2, got {0}")]
    LambdaTooSmall(f64),
    #[error("hypergeometric parameters need n1, m <= n (n1={n1}, m={m}, n={n})")]
    InvalidHypergeom { n1: u64, n: u64, m: u64 },
    #[error("level {level} is outside 1..={l}")]
    InvalidLevel { level: u32, l: u32 },
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Claw(#[from] ClawError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Outcome of one Monte-Carlo lemma check.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub trials: u64,
    pub violations: u64,
    /// Trials dropped before the checked event could be observed.
    pub excluded: u64,
    pub empirical_rate: f64,
    /// Largest violation probability the lemma allows.
    pub theoretical_bound: f64,
    pub pass: bool,
}

impl LemmaReport {
    pub fn from_counts(trials: u64, violations: u64, excluded: u64, theoretical_bound: f64) -> Self {
        let empirical_rate = if trials == 0 {
            0.0
        } else {
            violations as f64 / trials as f64
        };
        let mut report = Self {
            trials,
            violations,
            excluded,
            empirical_rate,
            theoretical_bound,
            pass: false,
        };
        report.pass = empirical_rate <= theoretical_bound + report.allowance();
        report
    }

    /// Two binomial standard errors of the estimated rate.
    pub fn allowance(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        let r = self.empirical_rate;
        2.0 * (r * (1.0 - r) / self.trials as f64).sqrt()
    }
}

/// `|X|/2 - sqrt(|X| ln|Y| / 2)`: with probability at least `1 - 2/|Y|`, a
/// random `f: X -> Y` with `|X| <= |Y|` has at least this many images.
pub fn image_bound(domain_size: u64, range_size: u64) -> f64 {
    let x = domain_size as f64;
    x / 2.0 - (x * (range_size as f64).ln() / 2.0).sqrt()
}

/// Samples `seeds` random functions and counts those whose image is smaller
/// than [`image_bound`]; the lemma allows a rate of `2/|Y|`.
pub fn image_size_check(
    domain_size: u32,
    range_size: u32,
    seeds: u64,
    base_seed: u64,
) -> Result<LemmaReport, StatsError> {
    if seeds == 0 {
        return Err(StatsError::NoTrials);
    }
    let bound = image_bound(domain_size as u64, range_size as u64);
    let mut violations = 0;
    for s in 0..seeds {
        let f = sample_random_function(domain_size, range_size, mix_seed(base_seed, s))?;
        if (f.image_size() as f64) < bound {
            violations += 1;
        }
    }
    Ok(LemmaReport::from_counts(
        seeds,
        violations,
        0,
        2.0 / range_size as f64,
    ))
}

/// Drawing `n1` of `n` items without replacement, `m` of them defective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomParams {
    n1: u64,
    n: u64,
    m: u64,
    lambda: f64,
}

impl HypergeomParams {
    pub fn new(n1: u64, n: u64, m: u64, lambda: f64) -> Result<Self, StatsError> {
        if n1 > n || m > n {
            return Err(StatsError::InvalidHypergeom { n1, n, m });
        }
        if !(lambda >= 2.0) {
            return Err(StatsError::LambdaTooSmall(lambda));
        }
        Ok(Self { n1, n, m, lambda })
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `E[K] = n1 m / n`.
    pub fn mean(&self) -> f64 {
        self.n1 as f64 * self.m as f64 / self.n as f64
    }

    /// `max(1/(n1+1) + 1/(n-n1+1), 1/(m+1) + 1/(n-m+1))`.
    pub fn alpha(&self) -> f64 {
        let pair = |a: u64| 1.0 / (a as f64 + 1.0) + 1.0 / ((self.n - a) as f64 + 1.0);
        pair(self.n1).max(pair(self.m))
    }

    /// `exp(-2 α (λ² - 1))`, the bound on `Pr[K - E[K] < -λ]`.
    pub fn tail_bound(&self) -> f64 {
        (-2.0 * self.alpha() * (self.lambda * self.lambda - 1.0)).exp()
    }

    fn degenerate(&self) -> bool {
        self.m == 0 || self.m == self.n
    }
}

/// Number of defectives among `n1` items drawn without replacement from `n`
/// items of which `m` are defective, drawn one item at a time.
pub fn sample_hypergeometric<R: Rng + ?Sized>(n1: u64, n: u64, m: u64, rng: &mut R) -> u64 {
    let mut remaining = n;
    let mut defective = m;
    let mut hits = 0;
    for _ in 0..n1 {
        if rng.random_range(0..remaining) < defective {
            hits += 1;
            defective -= 1;
        }
        remaining -= 1;
    }
    hits
}

/// Estimates `Pr[K - E[K] < -λ]` against `exp(-2 α (λ² - 1))`.
pub fn hypergeom_tail_check<R: Rng + ?Sized>(
    params: &HypergeomParams,
    trials: u64,
    rng: &mut R,
) -> Result<LemmaReport, StatsError> {
    if trials == 0 {
        return Err(StatsError::NoTrials);
    }
    let bound = params.tail_bound();
    if params.degenerate() {
        // K is constant, so its lower tail is empty
        return Ok(LemmaReport::from_counts(trials, 0, 0, bound));
    }
    let mean = params.mean();
    let violations = (0..trials)
        .filter(|_| {
            let k = sample_hypergeometric(params.n1, params.n, params.m, rng);
            (k as f64) - mean < -params.lambda
        })
        .count() as u64;
    Ok(LemmaReport::from_counts(trials, violations, 0, bound))
}

/// `1 - 2/N - exp(-N_{i-1} / (15 c_N))`, the lower bound on the probability
/// that `|Im(f_i) ∩ L'_{i-1}| >= N_{i-1}` when level `i` starts.
pub fn good_event_lower_bound(range_size: f64, c_n: f64, previous_list_size: f64) -> f64 {
    1.0 - 2.0 / range_size - (-previous_list_size / (15.0 * c_n)).exp()
}

/// Runs `Mclaw_k` on fresh random functions and counts the trials in which
/// `|Im(f_i) ∩ L'_{i-1}| < N_{i-1}` as level `i` starts.
///
/// Each function has `ceil(N / c_N)` inputs. Trials that abort before level
/// `i` are excluded and reported in `excluded`.
#[allow(clippy::too_many_arguments)]
pub fn good_event_rate(
    l: u32,
    range_size: u32,
    c_n: f64,
    k: u32,
    level: u32,
    trials: u64,
    base_seed: u64,
) -> Result<LemmaReport, StatsError> {
    if !(1..=l).contains(&level) {
        return Err(StatsError::InvalidLevel { level, l });
    }
    if trials == 0 {
        return Err(StatsError::NoTrials);
    }
    let params = build_params(l, range_size as f64, c_n, k)?;
    let threshold = params.list_size(level - 1);
    let domain = ((range_size as f64 / c_n).ceil() as u32).min(range_size);

    let mut violations = 0;
    let mut excluded = 0;
    for t in 0..trials {
        let mut rng = TrialRng::for_trial(base_seed, range_size as u64, t);
        let functions = (0..l)
            .map(|_| sample_random_function(domain, range_size, rng.next_u64()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ledger = QueryLedger::new(params.ledger_limit());
        let (_, trace) = mclaw_traced(&functions, &params, &mut ledger, &mut rng)?;
        match trace.iter().find(|s| s.level == level) {
            Some(s) if (s.overlap as f64) < threshold => violations += 1,
            Some(_) => {}
            None => excluded += 1,
        }
    }
    let observed = trials - excluded;
    let bound = 1.0 - good_event_lower_bound(range_size as f64, c_n, threshold);
    Ok(LemmaReport::from_counts(observed, violations, excluded, bound))
}
