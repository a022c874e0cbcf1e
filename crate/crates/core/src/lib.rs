//! Query-model simulation of quantum multiclaw and multicollision search.
//!
//! Algorithms are simulated at the level of oracle queries: every Grover
//! run is resolved by sampling its measurement from the exact closed-form
//! success probability, and every query is charged to a [`QueryLedger`]
//! with a hard limit. Random functions are explicit tables with an exact
//! inverse index, so marked counts and preimages are known exactly.
//!
//! - [`grover`]: closed-form Grover probabilities, the BBHT driver and a
//!   small state-vector backend for cross-checks.
//! - [`oracle`]: random function tables, the query ledger, image lists and
//!   the inflated preimage search.
//! - [`claw`]: the BHT, HSX and Mclaw finders, their parameter schedules,
//!   exponents and concrete bounds.
//! - [`stats`]: empirical checks of the concentration lemmas behind the
//!   success-probability analysis.
//! - [`harness`]: sweeps, exponent fits, bound tables and validation suites.

// `!(x >= min)` is used on purpose: it rejects NaN along with small values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod claw;
pub mod grover;
pub mod harness;
pub mod oracle;
pub mod rng;
pub mod stats;

pub use oracle::QueryLedger;
pub use rng::TrialRng;
