use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::claw::{
    bht_claw, build_params, collision_from_claw, hsx_collision, mclaw, verify_claw,
    verify_collision, MclawParams,
};
use crate::oracle::{sample_random_function, RandomFunction};
use crate::rng::TrialRng;
use crate::QueryLedger;

/// Environment variable holding the number of worker threads of a sweep.
pub const WORKERS_ENV: &str = "MCLAW_WORKERS";

/// Version of the sweep CSV layout.
pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Exact header of the sweep CSV.
pub const CSV_COLUMNS: [&str; 11] = [
    "algorithm",
    "l",
    "N",
    "c_N",
    "k",
    "trials",
    "successes",
    "mean_queries",
    "stddev_queries",
    "per_level_queries",
    "seed",
];

/// Smallest number of trials per point a sweep accepts.
pub const MIN_TRIALS: u64 = 30;

/// Largest table, in bytes, a single trial may allocate.
pub const TABLE_MEMORY_BUDGET: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// 2-claw finder on two independent functions.
    Bht,
    /// Recursive l-collision finder on one function with `l N` inputs.
    Hsx,
    /// l-claw finder on `l` independent functions.
    Mclaw,
    /// l-collision finder running `mclaw` on disjoint cells of one function.
    Collision,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Bht,
        Algorithm::Hsx,
        Algorithm::Mclaw,
        Algorithm::Collision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bht => "bht",
            Algorithm::Hsx => "hsx",
            Algorithm::Mclaw => "mclaw",
            Algorithm::Collision => "collision",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| HarnessError::UnknownAlgorithm(s.to_string()))
    }
}

/// One sweep: a fixed algorithm and parameter set over a list of range sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub algorithm: Algorithm,
    pub l: u32,
    /// Range sizes, powers of two in strictly increasing order.
    #[serde(alias = "N")]
    pub n: Vec<u32>,
    #[serde(alias = "c_N", default = "default_c_n")]
    pub c_n: f64,
    #[serde(default = "default_k")]
    pub k: u32,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_c_n() -> f64 {
    1.0
}

fn default_k() -> u32 {
    4
}

impl SweepConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, HarnessError> {
        let mut text = String::new();
        File::open(path)?.read_to_string(&mut text)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// `N = 2^e` for every `e` in `exponents`.
    pub fn powers_of_two(exponents: impl IntoIterator<Item = u32>) -> Vec<u32> {
        exponents.into_iter().map(|e| 1u32 << e).collect()
    }

    /// Checks the config and the feasibility of every `N` without running
    /// anything.
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n.is_empty() {
            return Err(HarnessError::InvalidConfig("the N list is empty".into()));
        }
        if let Some(&n) = self.n.iter().find(|n| !n.is_power_of_two() || **n < 4) {
            return Err(HarnessError::InvalidConfig(format!(
                "N = {n} is not a power of two >= 4"
            )));
        }
        if self.n.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HarnessError::InvalidConfig(
                "the N list must be strictly increasing".into(),
            ));
        }
        if self.trials < MIN_TRIALS {
            return Err(HarnessError::InvalidConfig(format!(
                "{} trials per point; at least {MIN_TRIALS} are required",
                self.trials
            )));
        }
        if self.algorithm == Algorithm::Bht && self.l != 2 {
            return Err(HarnessError::InvalidConfig(format!(
                "bht finds 2-claws, got l = {}",
                self.l
            )));
        }
        for &n in &self.n {
            self.check_feasible(n)?;
            build_params(self.l, n as f64, self.c_n, self.k)?;
        }
        Ok(())
    }

    fn check_feasible(&self, n: u32) -> Result<(), HarnessError> {
        let max_n = max_range_size(self.l);
        let bytes = table_bytes(self.algorithm, self.l, n, self.c_n);
        if n > max_n || bytes > TABLE_MEMORY_BUDGET {
            return Err(HarnessError::Infeasible {
                n,
                l: self.l,
                max_n,
                bytes,
            });
        }
        Ok(())
    }
}

/// Largest range size a sweep accepts for `l`.
pub fn max_range_size(l: u32) -> u32 {
    if l <= 3 {
        1 << 22
    } else {
        1 << 20
    }
}

/// Inputs per sampled function.
fn domain_size(algorithm: Algorithm, l: u32, n: u32, c_n: f64) -> u64 {
    let per_cell = ((n as f64 / c_n).ceil() as u64).min(n as u64);
    match algorithm {
        Algorithm::Bht | Algorithm::Mclaw => per_cell,
        Algorithm::Collision => l as u64 * per_cell,
        Algorithm::Hsx => l as u64 * n as u64,
    }
}

/// Bytes of the function tables one trial holds at once: values, the
/// inverse index and its offsets.
fn table_bytes(algorithm: Algorithm, l: u32, n: u32, c_n: f64) -> u64 {
    let domain = domain_size(algorithm, l, n, c_n);
    let tables = match algorithm {
        Algorithm::Bht => 2,
        Algorithm::Mclaw => l as u64,
        // the single table is split into l cells with their own indices
        Algorithm::Collision | Algorithm::Hsx => 2,
    };
    tables * (8 * domain + 4 * (n as u64 + 1))
}

/// Result of one trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub success: bool,
    /// Whether a returned solution passed brute-force verification.
    pub verified: bool,
    pub total_queries: u64,
    pub per_level_queries: Vec<u64>,
    pub trial_seed: u64,
}

/// Samples the instance of trial `trial` at range size `n` and runs the
/// algorithm on it under a ledger limited to `floor(Qlimit_k)`.
///
/// The instance is drawn from the trial stream before the algorithm runs,
/// so `hsx` and `collision` see the same function for the same seed when
/// `c_N = 1`.
pub fn run_trial(
    algorithm: Algorithm,
    params: &MclawParams,
    n: u32,
    base_seed: u64,
    trial: u64,
) -> Result<TrialOutcome, HarnessError> {
    let l = params.l();
    let mut rng = TrialRng::for_trial(base_seed, n as u64, trial);
    let mut ledger = QueryLedger::new(params.ledger_limit());
    let domain = domain_size(algorithm, l, n, params.c_n());
    let domain = u32::try_from(domain).map_err(|_| HarnessError::Infeasible {
        n,
        l,
        max_n: max_range_size(l),
        bytes: table_bytes(algorithm, l, n, params.c_n()),
    })?;

    let (success, verified, total, per_level, seed) = match algorithm {
        Algorithm::Bht | Algorithm::Mclaw => {
            let count = if algorithm == Algorithm::Bht { 2 } else { l };
            let functions = (0..count)
                .map(|_| sample_random_function(domain, n, rng.next_u64()))
                .collect::<Result<Vec<_>, _>>()?;
            let r = if algorithm == Algorithm::Bht {
                bht_claw(&functions[0], &functions[1], None, &mut ledger, &mut rng)?
            } else {
                mclaw(&functions, params, &mut ledger, &mut rng)?
            };
            let verified = r.solution.as_ref().is_none_or(|c| verify_claw(c, &functions));
            (r.succeeded(), verified, r.total_queries, r.per_level_queries, r.trial_seed)
        }
        Algorithm::Hsx | Algorithm::Collision => {
            let f = RandomFunction::sample(domain, n, rng.next_u64())?;
            let r = if algorithm == Algorithm::Hsx {
                hsx_collision(&f, l, &mut ledger, &mut rng)?
            } else {
                collision_from_claw(&f, params, &mut ledger, &mut rng)?
            };
            let verified = r.solution.as_ref().is_none_or(|c| verify_collision(c, &f));
            (r.succeeded(), verified, r.total_queries, r.per_level_queries, r.trial_seed)
        }
    };
    Ok(TrialOutcome {
        trial,
        success,
        verified,
        total_queries: total,
        per_level_queries: per_level,
        trial_seed: seed,
    })
}

/// Aggregate of all trials at one range size.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub algorithm: Algorithm,
    pub l: u32,
    pub n: u32,
    pub c_n: f64,
    pub k: u32,
    pub trials: u64,
    pub successes: u64,
    /// Mean total queries over successful trials (`NaN` without successes).
    pub mean_queries: f64,
    /// Sample standard deviation over successful trials.
    pub stddev_queries: f64,
    /// Mean per-level queries over successful trials.
    pub per_level_queries: Vec<f64>,
    /// Base seed of the sweep.
    pub seed: u64,
    /// Successful trials whose solution failed verification. Not part of
    /// the CSV.
    pub invalid_solutions: u64,
    /// Trials whose query count exceeded `Qlimit_k`. Not part of the CSV.
    pub limit_violations: u64,
}

impl SweepRecord {
    fn aggregate(config: &SweepConfig, n: u32, qlimit: f64, outcomes: &[TrialOutcome]) -> Self {
        let ok: Vec<&TrialOutcome> = outcomes.iter().filter(|o| o.success).collect();
        let queries: Vec<f64> = ok.iter().map(|o| o.total_queries as f64).collect();
        let (mean, stddev) = mean_and_stddev(&queries);
        let levels = outcomes.first().map_or(0, |o| o.per_level_queries.len());
        let per_level_queries = (0..levels)
            .map(|i| mean_and_stddev(&ok.iter().map(|o| o.per_level_queries[i] as f64).collect::<Vec<_>>()).0)
            .collect();
        Self {
            algorithm: config.algorithm,
            l: config.l,
            n,
            c_n: config.c_n,
            k: config.k,
            trials: outcomes.len() as u64,
            successes: ok.len() as u64,
            mean_queries: mean,
            stddev_queries: stddev,
            per_level_queries,
            seed: config.seed,
            invalid_solutions: outcomes.iter().filter(|o| !o.verified).count() as u64,
            limit_violations: outcomes
                .iter()
                .filter(|o| o.total_queries as f64 > qlimit)
                .count() as u64,
        }
    }

    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

fn mean_and_stddev(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Worker count from [`WORKERS_ENV`], or rayon's default when unset.
pub fn configured_workers() -> Result<Option<usize>, HarnessError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(Some(w)),
            _ => Err(HarnessError::InvalidConfig(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

/// Runs every trial of `config`, writing the CSV to `config.out` when set.
///
/// Trials run in parallel; each draws from its own stream keyed by the base
/// seed, `N` and the trial index, so the records do not depend on the
/// worker count or the scheduling order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, HarnessError> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = configured_workers()? {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| HarnessError::InvalidConfig(format!("cannot start workers: {e}")))?;

    let mut records = Vec::with_capacity(config.n.len());
    for &n in &config.n {
        let params = build_params(config.l, n as f64, config.c_n, config.k)?;
        let outcomes = pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|t| run_trial(config.algorithm, &params, n, config.seed, t))
                .collect::<Result<Vec<_>, _>>()
        })?;
        let record = SweepRecord::aggregate(config, n, params.qlimit(), &outcomes);
        log::info!(
            "{} l={} N={}: {}/{} successes, mean queries {:.1}",
            record.algorithm,
            record.l,
            n,
            record.successes,
            record.trials,
            record.mean_queries
        );
        records.push(record);
    }
    if let Some(path) = &config.out {
        write_csv(File::create(path)?, &records)?;
    }
    Ok(records)
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    algorithm: Algorithm,
    l: u32,
    #[serde(rename = "N")]
    n: u32,
    #[serde(rename = "c_N")]
    c_n: f64,
    k: u32,
    trials: u64,
    successes: u64,
    mean_queries: f64,
    stddev_queries: f64,
    per_level_queries: String,
    seed: u64,
}

/// Writes the records as CSV with the columns of [`CSV_COLUMNS`];
/// per-level means are joined with `;`.
pub fn write_csv<W: Write>(w: W, records: &[SweepRecord]) -> Result<(), HarnessError> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        out.serialize(CsvRow {
            algorithm: r.algorithm,
            l: r.l,
            n: r.n,
            c_n: r.c_n,
            k: r.k,
            trials: r.trials,
            successes: r.successes,
            mean_queries: r.mean_queries,
            stddev_queries: r.stddev_queries,
            per_level_queries: r
                .per_level_queries
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            seed: r.seed,
        })?;
    }
    if records.is_empty() {
        out.write_record(CSV_COLUMNS)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads records written by [`write_csv`]. The validity counters, which the
/// CSV does not carry, read back as zero.
pub fn read_csv<R: Read>(r: R) -> Result<Vec<SweepRecord>, HarnessError> {
    let mut reader = csv::Reader::from_reader(r);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_COLUMNS {
        return Err(HarnessError::InvalidCsv(format!(
            "unexpected header {header:?}"
        )));
    }
    reader
        .deserialize::<CsvRow>()
        .map(|row| {
            let row = row?;
            let per_level_queries = if row.per_level_queries.is_empty() {
                Vec::new()
            } else {
                row.per_level_queries
                    .split(';')
                    .map(|q| {
                        q.parse::<f64>()
                            .map_err(|e| HarnessError::InvalidCsv(format!("per-level value {q:?}: {e}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            Ok(SweepRecord {
                algorithm: row.algorithm,
                l: row.l,
                n: row.n,
                c_n: row.c_n,
                k: row.k,
                trials: row.trials,
                successes: row.successes,
                mean_queries: row.mean_queries,
                stddev_queries: row.stddev_queries,
                per_level_queries,
                seed: row.seed,
                invalid_solutions: 0,
                limit_violations: 0,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(algorithm: Algorithm, l: u32, exps: std::ops::Range<u32>) -> SweepConfig {
        SweepConfig {
            algorithm,
            l,
            n: SweepConfig::powers_of_two(exps),
            c_n: 1.0,
            k: 4,
            trials: 30,
            seed: 42,
            out: None,
        }
    }

    #[test]
    fn config_validation() {
        assert!(config(Algorithm::Mclaw, 2, 8..10).validate().is_ok());
        let mut c = config(Algorithm::Mclaw, 2, 8..10);
        c.n = vec![1024, 512];
        assert!(matches!(c.validate(), Err(HarnessError::InvalidConfig(_))));
        c.n = vec![1000];
        assert!(matches!(c.validate(), Err(HarnessError::InvalidConfig(_))));
        let mut c = config(Algorithm::Mclaw, 2, 8..10);
        c.trials = 10;
        assert!(matches!(c.validate(), Err(HarnessError::InvalidConfig(_))));
        assert!(config(Algorithm::Bht, 3, 8..10).validate().is_err());
    }

    #[test]
    fn infeasible_sizes_rejected_up_front() {
        assert!(config(Algorithm::Mclaw, 3, 22..23).validate().is_ok());
        assert!(matches!(
            config(Algorithm::Mclaw, 3, 23..24).validate(),
            Err(HarnessError::Infeasible { .. })
        ));
        assert!(matches!(
            config(Algorithm::Hsx, 4, 21..22).validate(),
            Err(HarnessError::Infeasible { .. })
        ));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("grover".parse::<Algorithm>().is_err());
    }

    #[test]
    fn config_json_uses_field_names() {
        let json = r#"{"algorithm":"hsx","l":3,"N":[4096,8192],"c_N":1.0,"k":4,"trials":30,"seed":7}"#;
        let c: SweepConfig = serde_json::from_str(json).unwrap();
        assert_eq!(c.algorithm, Algorithm::Hsx);
        assert_eq!(c.n, vec![4096, 8192]);
        assert_eq!(c.out, None);
    }

    #[test]
    fn hsx_and_collision_share_instances() {
        let params = build_params(3, 4096.0, 1.0, 4).unwrap();
        let h = run_trial(Algorithm::Hsx, &params, 4096, 9, 3).unwrap();
        let c = run_trial(Algorithm::Collision, &params, 4096, 9, 3).unwrap();
        assert_eq!(h.trial_seed, c.trial_seed);
    }

    #[test]
    fn sweep_is_deterministic_and_valid() {
        for algorithm in Algorithm::ALL {
            let l = if algorithm == Algorithm::Bht { 2 } else { 3 };
            let c = config(algorithm, l, 10..12);
            let a = run_sweep(&c).unwrap();
            let b = run_sweep(&c).unwrap();
            let (mut ca, mut cb) = (Vec::new(), Vec::new());
            write_csv(&mut ca, &a).unwrap();
            write_csv(&mut cb, &b).unwrap();
            assert_eq!(ca, cb);
            for r in &a {
                assert_eq!(r.invalid_solutions, 0);
                assert_eq!(r.limit_violations, 0);
                assert!(r.successes <= r.trials);
                assert_eq!(r.per_level_queries.len(), l as usize);
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let c = config(Algorithm::Mclaw, 2, 8..10);
        let records = run_sweep(&c).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, records);
    }
}
