//! Experiment orchestration: parameter sweeps with CSV output, exponent
//! fits, the exponent and SHA3-512 tables, and the validation suites.

mod fit;
mod report;
mod sweep;
mod tables;
mod validate;

use thiserror::Error;

use crate::claw::ClawError;
use crate::grover::GroverError;
use crate::oracle::OracleError;
use crate::stats::StatsError;

pub use fit::{fit_exponent, fit_tolerance, ols, theory_exponent, FitResult, MIN_FIT_POINTS};
pub use report::{render_fit, render_sweep_table, wilson_interval};
pub use sweep::{
    configured_workers, max_range_size, read_csv, run_sweep, run_trial, write_csv, Algorithm,
    SweepConfig, SweepRecord, TrialOutcome, CSV_COLUMNS, CSV_SCHEMA_VERSION, MIN_TRIALS,
    TABLE_MEMORY_BUDGET, WORKERS_ENV,
};
pub use tables::{
    bound_table, bound_table_csv, render_bound_table, render_sha3_table, sha3_table, ExponentRow,
    SHA3_512_BITS,
};
pub use validate::{
    backend_grid, bbht_mean_queries, max_backend_gap, validate, validate_all, Check, Suite,
    ValidationReport, BACKEND_TOLERANCE, BBHT_GRID, BBHT_SLACK, BBHT_TRIALS, GOOD_EVENT_GRID,
    GOOD_EVENT_TRIALS, GRID_VERSION, HYPERGEOM_GRID, HYPERGEOM_TRIALS,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown algorithm {0:?} (expected bht, hsx, mclaw or collision)")]
    UnknownAlgorithm(String),
    #[error("unknown suite {0:?} (expected grover, bbht, lemmas or claws)")]
    UnknownSuite(String),
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "N = {n} is infeasible for l = {l}: the limit is {max_n} and one trial would hold {bytes} bytes of tables"
    )]
    Infeasible { n: u32, l: u32, max_n: u32, bytes: u64 },
    #[error("an exponent fit needs at least {min} records, got {got}")]
    TooFewPoints { got: usize, min: usize },
    #[error("records of a fit must share algorithm and l and span at least two N")]
    MixedRecords,
    #[error("no trial succeeded at N = {n}")]
    NoSuccessfulTrials { n: u32 },
    #[error("malformed sweep CSV: {0}")]
    InvalidCsv(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Claw(#[from] ClawError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Grover(#[from] GroverError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}
