//! Grover search outcomes in the query model.
//!
//! Success probabilities come from the amplitude-amplification closed form.
//! [`bbht_search`] drives the randomized schedule for an unknown number of
//! marked items, sampling each measurement from that closed form rather than
//! evolving a state. [`statevector_grover`] evolves an explicit amplitude
//! vector and exists to cross-check the closed form at small sizes.

use std::collections::BTreeSet;

use log::debug;
use rand::Rng;
use thiserror::Error;

use crate::oracle::QueryLedger;

/// Largest search space the state-vector backend will allocate.
pub const STATEVECTOR_MAX_SIZE: u64 = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroverError {
    #[error("search space must contain at least one item")]
    EmptySpace,
    #[error("marked count {marked} exceeds search space size {size}")]
    TooManyMarked { size: u64, marked: u64 },
    #[error("success probability is identically zero with no marked items")]
    NoMarkedItems,
    #[error("state-vector backend limit is {limit} items, requested {size}")]
    BackendLimit { size: u64, limit: u64 },
    #[error("marked set holds {got} indices but the space declares {expected}")]
    MarkedSetMismatch { expected: u64, got: u64 },
    #[error("marked index {index} lies outside a space of size {size}")]
    MarkedOutOfRange { index: u64, size: u64 },
    #[error("growth factor must exceed 1, got {0}")]
    InvalidGrowth(f64),
}

/// `n` items of which `t` are marked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchSpace {
    size: u64,
    marked_count: u64,
}

impl SearchSpace {
    pub fn new(size: u64, marked_count: u64) -> Result<Self, GroverError> {
        if size == 0 {
            return Err(GroverError::EmptySpace);
        }
        if marked_count > size {
            return Err(GroverError::TooManyMarked {
                size,
                marked: marked_count,
            });
        }
        Ok(Self { size, marked_count })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn marked_count(&self) -> u64 {
        self.marked_count
    }

    pub fn marked_fraction(&self) -> f64 {
        self.marked_count as f64 / self.size as f64
    }

    /// Whether `t/n < 17/81`, the regime where the BBHT bound applies.
    pub fn within_bbht_regime(&self) -> bool {
        (self.marked_count as u128) * 81 < (self.size as u128) * 17
    }

    /// `4n / sqrt((n - t) t)`, the bound on expected BBHT queries.
    pub fn bbht_query_bound(&self) -> f64 {
        let n = self.size as f64;
        let t = self.marked_count as f64;
        4.0 * n / ((n - t) * t).sqrt()
    }
}

/// Probability that measuring after `iterations` Grover iterations yields a
/// marked item: `sin^2((2j + 1) * asin(sqrt(t / n)))`.
pub fn grover_success_prob(space: SearchSpace, iterations: u64) -> Result<f64, GroverError> {
    if space.marked_count == 0 {
        return Err(GroverError::NoMarkedItems);
    }
    if iterations == 0 {
        return Ok(space.marked_fraction());
    }
    let theta = space.marked_fraction().sqrt().asin();
    let angle = (2.0 * iterations as f64 + 1.0) * theta;
    Ok(angle.sin().powi(2).clamp(0.0, 1.0))
}

/// Runs `iterations` rounds of sign-flip and inversion-about-the-mean on an
/// explicit amplitude vector and returns the probability mass on `marked`.
pub fn statevector_grover(
    space: SearchSpace,
    marked: &BTreeSet<u64>,
    iterations: u64,
) -> Result<f64, GroverError> {
    let n = space.size;
    if n > STATEVECTOR_MAX_SIZE {
        return Err(GroverError::BackendLimit {
            size: n,
            limit: STATEVECTOR_MAX_SIZE,
        });
    }
    if marked.len() as u64 != space.marked_count {
        return Err(GroverError::MarkedSetMismatch {
            expected: space.marked_count,
            got: marked.len() as u64,
        });
    }
    if let Some(&index) = marked.iter().find(|&&i| i >= n) {
        return Err(GroverError::MarkedOutOfRange { index, size: n });
    }

    let n = n as usize;
    let mut amps = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..iterations {
        for &i in marked {
            amps[i as usize] = -amps[i as usize];
        }
        let mean = amps.iter().sum::<f64>() / n as f64;
        for a in amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }
    Ok(marked.iter().map(|&i| amps[i as usize].powi(2)).sum())
}

/// Constants of the BBHT exponential schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BbhtSchedule {
    growth_factor: f64,
    initial_bound: f64,
    cap: f64,
}

impl BbhtSchedule {
    /// Growth factor used by [`BbhtSchedule::for_space`].
    pub const DEFAULT_GROWTH: f64 = 6.0 / 5.0;

    /// `λ = 6/5`, `m₀ = 1`, capped at `sqrt(n)`.
    pub fn for_space(space: SearchSpace) -> Self {
        Self {
            growth_factor: Self::DEFAULT_GROWTH,
            initial_bound: 1.0,
            cap: (space.size as f64).sqrt(),
        }
    }

    pub fn with_growth(space: SearchSpace, growth_factor: f64) -> Result<Self, GroverError> {
        if !(growth_factor > 1.0) {
            return Err(GroverError::InvalidGrowth(growth_factor));
        }
        Ok(Self {
            growth_factor,
            ..Self::for_space(space)
        })
    }

    pub fn growth_factor(&self) -> f64 {
        self.growth_factor
    }

    pub fn initial_bound(&self) -> f64 {
        self.initial_bound
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    /// The bound that follows `m` after a failed round.
    pub fn next_bound(&self, m: f64) -> f64 {
        (self.growth_factor * m).min(self.cap)
    }
}

/// Result of one BBHT run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroverOutcome<T> {
    pub found: Option<T>,
    /// Queries this run added to the ledger.
    pub queries_charged: u64,
    pub rounds: u64,
}

/// A search problem that BBHT can be run against.
///
/// The simulation never enumerates the unmarked items: a successful
/// measurement is resolved by drawing a uniform marked item.
pub trait SearchOracle {
    type Item;

    fn space(&self) -> SearchSpace;

    /// Underlying-function queries needed for one predicate evaluation.
    fn cost_per_evaluation(&self) -> u64 {
        1
    }

    fn sample_marked<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Item;

    fn is_marked(&self, item: &Self::Item) -> bool;
}

/// BBHT search for an unknown number of marked items.
///
/// Each round draws `j` uniformly from `0..floor(m)`, charges `j` Grover
/// iterations plus one test of the measured candidate, and succeeds with the
/// closed-form probability. On failure `m` grows by the schedule's factor up
/// to its cap. With no marked items the loop only ends when the ledger
/// aborts.
pub fn bbht_search<O, R>(
    oracle: &O,
    ledger: &mut QueryLedger,
    rng: &mut R,
    schedule: &BbhtSchedule,
) -> GroverOutcome<O::Item>
where
    O: SearchOracle,
    R: Rng + ?Sized,
{
    let space = oracle.space();
    if space.marked_count > 0 && !space.within_bbht_regime() {
        debug!(
            "BBHT run outside its analysed regime: t/n = {}/{} >= 17/81",
            space.marked_count, space.size
        );
    }
    let cost = oracle.cost_per_evaluation();
    let start = ledger.count();
    let mut m = schedule.initial_bound;
    let mut rounds = 0;

    let found = loop {
        let range = (m.floor() as u64).max(1);
        let j = rng.random_range(0..range);
        rounds += 1;
        if ledger.charge(j * cost).is_err() {
            break None;
        }
        let p = if space.marked_count == 0 {
            0.0
        } else {
            grover_success_prob(space, j).expect("marked count is positive")
        };
        let success = rng.random_bool(p);
        if ledger.charge(cost).is_err() {
            break None;
        }
        if success {
            let item = oracle.sample_marked(rng);
            debug_assert!(oracle.is_marked(&item));
            break Some(item);
        }
        m = schedule.next_bound(m);
    };

    GroverOutcome {
        found,
        queries_charged: ledger.count() - start,
        rounds,
    }
}

/// Abstract search space whose marked items are `0..t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefixMarked(pub SearchSpace);

impl SearchOracle for PrefixMarked {
    type Item = u64;

    fn space(&self) -> SearchSpace {
        self.0
    }

    fn sample_marked<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.0.marked_count)
    }

    fn is_marked(&self, item: &u64) -> bool {
        *item < self.0.marked_count
    }
}

/// Exact expected number of queries of [`bbht_search`] with unit cost and
/// no query limit, summed round by round until the probability of still
/// running drops below `1e-16`.
pub fn bbht_expected_queries(space: SearchSpace, schedule: &BbhtSchedule) -> Result<f64, GroverError> {
    if space.marked_count == 0 {
        return Err(GroverError::NoMarkedItems);
    }
    let mut alive = 1.0;
    let mut expected = 0.0;
    let mut m = schedule.initial_bound;
    while alive > 1e-16 {
        let range = (m.floor() as u64).max(1);
        // j uniform on 0..range costs j + 1 queries
        expected += alive * (range as f64 + 1.0) / 2.0;
        let mut fail = 0.0;
        for j in 0..range {
            fail += 1.0 - grover_success_prob(space, j)?;
        }
        alive *= fail / range as f64;
        m = schedule.next_bound(m);
    }
    Ok(expected)
}
