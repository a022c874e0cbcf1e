//! Claw and collision finders.
//!
//! - [`bht_claw`]: one list of images, one preimage search.
//! - [`hsx_collision`]: the recursive finder that rebuilds its lists of
//!   `(l-1)`-collisions from scratch for every extension.
//! - [`mclaw`]: the level-by-level finder that extends lists in place and
//!   reuses each level's list across all searches of the next level.
//! - [`collision_from_claw`]: turns an l-claw finder into an l-collision
//!   finder by partitioning one domain into disjoint cells.

mod bht;
pub mod exponent;
mod hsx;
mod mclaw;
mod params;

use thiserror::Error;

use crate::oracle::{FunctionValues, OracleError};

pub use bht::{bht_claw, default_list_size};
pub use exponent::{hsx_exponent, mclaw_exponent};
pub use hsx::hsx_collision;
pub use mclaw::{collision_from_claw, mclaw, mclaw_traced, LevelSnapshot};
pub use params::{
    build_params, default_c_n, sha3_bound_table, MclawParams, CAPACITY_FACTOR, QLIMIT_CONSTANT,
};

#[derive(Debug, Error)]
pub enum ClawError {
    #[error("l must lie in 2..={max}, got {0}", max = params::MAX_L)]
    InvalidL(u32),
    #[error("range size must be at least 2, got {0}")]
    InvalidRange(f64),
    #[error("c_N must be a finite value >= 1, got {0}")]
    InvalidCn(f64),
    #[error("k must be at least 2, got {0}")]
    InvalidK(u32),
    #[error("level {level} capacity {capacity} exceeds the range size {range_size}")]
    CapacityExceedsRange {
        level: u32,
        capacity: f64,
        range_size: f64,
    },
    #[error("expected {expected} functions, got {got}")]
    FunctionCount { expected: u32, got: usize },
    #[error("function {index} has range {got}, expected {expected}")]
    RangeMismatch { index: usize, expected: f64, got: u32 },
    #[error("function {index} has domain {domain_size}, below |Y|/c_N = {min}")]
    DomainTooSmall {
        index: usize,
        domain_size: u32,
        min: f64,
    },
    #[error("level 1 needs {needed} fresh inputs but the domain holds {available}")]
    NotEnoughFreshInputs { needed: u64, available: u64 },
    #[error("ledger limit {ledger} exceeds Qlimit_k = {qlimit}")]
    LedgerAboveQlimit { ledger: u64, qlimit: f64 },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `(x_1, ..., x_l, y)` with `f_i(x_i) = y`; `x_i` indexes the domain of
/// the i-th function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClawTuple {
    pub xs: Vec<u32>,
    pub y: u32,
}

/// `(x_1, ..., x_l, y)` with pairwise distinct `x_i` and `f(x_i) = y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollisionTuple {
    pub xs: Vec<u32>,
    pub y: u32,
}

/// Outcome of one run of a finder.
///
/// `solution` is `None` exactly when the ledger aborted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgoResult<T> {
    pub solution: Option<T>,
    pub total_queries: u64,
    /// Queries spent building level `i + 1`.
    pub per_level_queries: Vec<u64>,
    pub trial_seed: u64,
}

impl<T> AlgoResult<T> {
    pub fn succeeded(&self) -> bool {
        self.solution.is_some()
    }

    pub(crate) fn map<U>(self, f: impl FnOnce(T) -> U) -> AlgoResult<U> {
        AlgoResult {
            solution: self.solution.map(f),
            total_queries: self.total_queries,
            per_level_queries: self.per_level_queries,
            trial_seed: self.trial_seed,
        }
    }
}

/// Checks `functions[i](xs[i]) == y` for every `i`, by table lookup.
pub fn verify_claw<F: FunctionValues>(tuple: &ClawTuple, functions: &[F]) -> bool {
    tuple.xs.len() == functions.len()
        && tuple
            .xs
            .iter()
            .zip(functions)
            .all(|(&x, f)| x < f.domain_size() && f.value(x) == tuple.y)
}

/// Checks `f(x_i) == y` for every `i` and that the `x_i` are pairwise
/// distinct.
pub fn verify_collision<F: FunctionValues + ?Sized>(tuple: &CollisionTuple, f: &F) -> bool {
    let images_match = tuple
        .xs
        .iter()
        .all(|&x| x < f.domain_size() && f.value(x) == tuple.y);
    let distinct = tuple
        .xs
        .iter()
        .enumerate()
        .all(|(i, x)| !tuple.xs[..i].contains(x));
    images_match && distinct
}
