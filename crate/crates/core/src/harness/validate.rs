use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

use super::sweep::{run_sweep, Algorithm, SweepConfig};
use super::HarnessError;
use crate::grover::{
    bbht_expected_queries, bbht_search, grover_success_prob, statevector_grover, BbhtSchedule,
    PrefixMarked, SearchSpace,
};
use crate::rng::{mix_seed, TrialRng};
use crate::stats::{
    good_event_rate, hypergeom_tail_check, image_size_check, HypergeomParams, LemmaReport,
};
use crate::QueryLedger;

/// Version of the fixed grids below. Changing any grid or seed bumps it.
pub const GRID_VERSION: u32 = 1;

const GRID_SEED: u64 = 0x6d63_6c61_775f_7631;

/// Largest allowed gap between the two Grover backends.
pub const BACKEND_TOLERANCE: f64 = 1e-9;

/// Slack allowed on the BBHT expected-query bound.
pub const BBHT_SLACK: f64 = 1.05;

pub const BBHT_TRIALS: u64 = 10_000;

/// `(n, t)` pairs with `t/n < 17/81`.
pub const BBHT_GRID: [(u64, u64); 12] = [
    (64, 1),
    (256, 3),
    (1024, 1),
    (1024, 50),
    (4096, 7),
    (10_000, 100),
    (65_536, 1),
    (65_536, 1000),
    (200_000, 41_000),
    (1 << 20, 5),
    (1 << 20, 1 << 15),
    (1 << 24, 1),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Grover,
    Bbht,
    Lemmas,
    Claws,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Grover, Suite::Bbht, Suite::Lemmas, Suite::Claws];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Grover => "grover",
            Suite::Bbht => "bbht",
            Suite::Lemmas => "lemmas",
            Suite::Claws => "claws",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

/// One pass/fail line of a validation run.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub trials: u64,
    /// The measured quantity: a gap, a mean, a rate or a count.
    pub observed: f64,
    /// The value `observed` is compared with.
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    fn from_lemma(suite: Suite, name: String, r: &LemmaReport) -> Self {
        Self {
            suite,
            name,
            trials: r.trials,
            observed: r.empirical_rate,
            bound: r.theoretical_bound,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {:<8} {:<44} observed {:<12.6e} bound {:<12.6e} ({} trials)\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.suite.name(),
                    c.name,
                    c.observed,
                    c.bound,
                    c.trials
                )
            })
            .collect()
    }

    /// One CSV row per check.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), HarnessError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["grid_version", "suite", "check", "trials", "observed", "bound", "pass"])?;
        for c in &self.checks {
            out.write_record([
                GRID_VERSION.to_string(),
                c.suite.name().to_string(),
                c.name.clone(),
                c.trials.to_string(),
                c.observed.to_string(),
                c.bound.to_string(),
                c.pass.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn validate(suite: Suite) -> Result<ValidationReport, HarnessError> {
    let checks = match suite {
        Suite::Grover => grover_checks()?,
        Suite::Bbht => bbht_checks()?,
        Suite::Lemmas => lemma_checks()?,
        Suite::Claws => claw_checks()?,
    };
    Ok(ValidationReport { checks })
}

pub fn validate_all() -> Result<ValidationReport, HarnessError> {
    let mut report = ValidationReport::default();
    for suite in Suite::ALL {
        report.checks.extend(validate(suite)?.checks);
    }
    Ok(report)
}

/// `(n, t, j)` triples covering `2 <= n <= 1024`, including both ends.
pub fn backend_grid(count: usize) -> Vec<(u64, u64, u64)> {
    let mut rng = TrialRng::new(GRID_SEED);
    (0..count)
        .map(|i| {
            let n = match i {
                0 => 2,
                1 => 1024,
                _ => rng.random_range(2..=1024),
            };
            let t = rng.random_range(1..=n);
            let j = rng.random_range(0..=40);
            (n, t, j)
        })
        .collect()
}

/// Largest gap between closed-form and state-vector success probabilities
/// over [`backend_grid`], with random marked sets.
pub fn max_backend_gap(count: usize) -> Result<f64, HarnessError> {
    let mut rng = TrialRng::new(mix_seed(GRID_SEED, 1));
    let mut gap: f64 = 0.0;
    for (n, t, j) in backend_grid(count) {
        let marked: BTreeSet<u64> = index::sample(&mut rng, n as usize, t as usize)
            .into_iter()
            .map(|i| i as u64)
            .collect();
        let space = SearchSpace::new(n, t)?;
        let analytic = grover_success_prob(space, j)?;
        let simulated = statevector_grover(space, &marked, j)?;
        gap = gap.max((analytic - simulated).abs());
    }
    Ok(gap)
}

fn grover_checks() -> Result<Vec<Check>, HarnessError> {
    let count = 240;
    let gap = max_backend_gap(count)?;
    Ok(vec![Check {
        suite: Suite::Grover,
        name: "closed form vs state vector, max gap".into(),
        trials: count as u64,
        observed: gap,
        bound: BACKEND_TOLERANCE,
        pass: gap < BACKEND_TOLERANCE,
    }])
}

/// Mean and standard error of BBHT query counts for one `(n, t)`.
pub fn bbht_mean_queries(n: u64, t: u64, trials: u64, seed: u64) -> Result<(f64, f64), HarnessError> {
    let space = SearchSpace::new(n, t)?;
    let schedule = BbhtSchedule::for_space(space);
    let oracle = PrefixMarked(space);
    let mut rng = TrialRng::new(seed);
    let samples: Vec<f64> = (0..trials)
        .map(|_| {
            let mut ledger = QueryLedger::unlimited();
            bbht_search(&oracle, &mut ledger, &mut rng, &schedule).queries_charged as f64
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let var = samples.iter().map(|q| (q - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0);
    Ok((mean, (var / trials as f64).sqrt()))
}

fn bbht_checks() -> Result<Vec<Check>, HarnessError> {
    let per_pair = BBHT_GRID
        .par_iter()
        .enumerate()
        .map(|(i, &(n, t))| {
            let space = SearchSpace::new(n, t)?;
            let (mean, se) = bbht_mean_queries(n, t, BBHT_TRIALS, mix_seed(GRID_SEED, i as u64))?;
            let exact = bbht_expected_queries(space, &BbhtSchedule::for_space(space))?;
            let limit = BBHT_SLACK * space.bbht_query_bound();
            Ok(vec![
                Check {
                    suite: Suite::Bbht,
                    name: format!("mean queries n={n} t={t} vs 1.05 bound"),
                    trials: BBHT_TRIALS,
                    observed: mean,
                    bound: limit,
                    pass: mean <= limit,
                },
                Check {
                    suite: Suite::Bbht,
                    name: format!("mean queries n={n} t={t} vs exact, in SE"),
                    trials: BBHT_TRIALS,
                    observed: (mean - exact).abs() / se,
                    bound: 4.0,
                    pass: (mean - exact).abs() <= 4.0 * se,
                },
            ])
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(per_pair.into_iter().flatten().collect())
}

/// `(n, n1, m, λ)` grid of the hypergeometric tail check. A `λ` of `0`
/// stands for `sqrt(E[K]) / 2`, the offset used in the success analysis.
pub const HYPERGEOM_GRID: [(u64, u64, u64, f64); 6] = [
    (10_000, 3333, 400, 0.0),
    (10_000, 3333, 0, 2.0),
    (1000, 500, 100, 2.0),
    (1000, 100, 500, 3.0),
    (5000, 1666, 1200, 0.0),
    (200, 50, 40, 2.0),
];

pub const HYPERGEOM_TRIALS: u64 = 10_000;

/// `(l, level)` pairs of the good-event check at `N = 2^14`, `c_N = 1`,
/// `k = 4`.
pub const GOOD_EVENT_GRID: [(u32, u32); 4] = [(2, 1), (2, 2), (3, 2), (3, 3)];

pub const GOOD_EVENT_TRIALS: u64 = 200;

fn hypergeom_params(n: u64, n1: u64, m: u64, lambda: f64) -> Result<HypergeomParams, HarnessError> {
    let lambda = if lambda == 0.0 {
        (n1 as f64 * m as f64 / n as f64).sqrt() / 2.0
    } else {
        lambda
    };
    Ok(HypergeomParams::new(n1, n, m, lambda)?)
}

fn lemma_checks() -> Result<Vec<Check>, HarnessError> {
    let mut checks = Vec::new();
    let image = image_size_check(4096, 4096, 1000, mix_seed(GRID_SEED, 2))?;
    checks.push(Check::from_lemma(
        Suite::Lemmas,
        "image size below bound, |X|=|Y|=4096".into(),
        &image,
    ));

    let tails = HYPERGEOM_GRID
        .par_iter()
        .enumerate()
        .map(|(i, &(n, n1, m, lambda))| {
            let p = hypergeom_params(n, n1, m, lambda)?;
            let mut rng = TrialRng::new(mix_seed(GRID_SEED, 100 + i as u64));
            let r = hypergeom_tail_check(&p, HYPERGEOM_TRIALS, &mut rng)?;
            Ok(Check::from_lemma(
                Suite::Lemmas,
                format!("hypergeometric tail n={n} n1={n1} m={m} λ={:.3}", p.lambda()),
                &r,
            ))
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    checks.extend(tails);

    let good = GOOD_EVENT_GRID
        .par_iter()
        .map(|&(l, level)| {
            let r = good_event_rate(
                l,
                1 << 14,
                1.0,
                4,
                level,
                GOOD_EVENT_TRIALS,
                mix_seed(GRID_SEED, 200 + 10 * l as u64 + level as u64),
            )?;
            Ok(Check::from_lemma(
                Suite::Lemmas,
                format!("good event violated, l={l} level={level} N=2^14"),
                &r,
            ))
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    checks.extend(good);
    Ok(checks)
}

/// Small sweeps of every algorithm whose returned tuples are all verified
/// and whose query counts all stay within `Qlimit_k`.
fn claw_checks() -> Result<Vec<Check>, HarnessError> {
    let mut checks = Vec::new();
    for algorithm in Algorithm::ALL {
        let ls: &[u32] = if algorithm == Algorithm::Bht { &[2] } else { &[2, 3] };
        for &l in ls {
            let config = SweepConfig {
                algorithm,
                l,
                n: SweepConfig::powers_of_two([10, 12]),
                c_n: 1.0,
                k: 4,
                trials: 50,
                seed: mix_seed(GRID_SEED, 300 + l as u64),
                out: None,
            };
            let records = run_sweep(&config)?;
            let trials: u64 = records.iter().map(|r| r.trials).sum();
            let invalid: u64 = records.iter().map(|r| r.invalid_solutions).sum();
            let over: u64 = records.iter().map(|r| r.limit_violations).sum();
            checks.push(Check {
                suite: Suite::Claws,
                name: format!("{algorithm} l={l} unverified solutions"),
                trials,
                observed: invalid as f64,
                bound: 0.0,
                pass: invalid == 0,
            });
            checks.push(Check {
                suite: Suite::Claws,
                name: format!("{algorithm} l={l} runs above Qlimit"),
                trials,
                observed: over as f64,
                bound: 0.0,
                pass: over == 0,
            });
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn backend_grid_spans_sizes() {
        let grid = backend_grid(240);
        assert_eq!(grid.len(), 240);
        assert!(grid.iter().any(|g| g.0 == 2) && grid.iter().any(|g| g.0 == 1024));
        assert!(grid.iter().all(|&(n, t, _)| (1..=n).contains(&t)));
        assert_eq!(grid, backend_grid(240));
    }

    #[test]
    fn bbht_grid_is_in_regime() {
        for (n, t) in BBHT_GRID {
            assert!(SearchSpace::new(n, t).unwrap().within_bbht_regime(), "({n}, {t})");
        }
    }

    #[test]
    fn grover_suite_passes() {
        let report = validate(Suite::Grover).unwrap();
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn report_csv_has_one_row_per_check() {
        let report = validate(Suite::Grover).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1 + report.checks.len());
    }
}
