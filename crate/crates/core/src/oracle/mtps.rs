use rand::Rng;

use super::{Aborted, FunctionTable, FunctionValues, ImageList, QueryLedger};
use crate::grover::{bbht_search, BbhtSchedule, SearchOracle, SearchSpace};

/// Copies of the domain in the inflated search space.
pub const INFLATION: u64 = 5;

/// Queries to `f` per evaluation of the inflated predicate.
pub const PREDICATE_COST: u64 = 2;

/// The predicate `F(α, x) = [α = 1 and f(x) ∈ L']` on `{1..5} × X`.
///
/// Marked items all have `α = 1`, so they are identified with their `x`.
/// The marked count `|f⁻¹(L')|` is read exactly off the inverse index.
pub struct InflatedPreimageOracle<'a> {
    f: &'a FunctionTable,
    targets: &'a ImageList,
    marked: u64,
}

impl<'a> InflatedPreimageOracle<'a> {
    pub fn new(f: &'a FunctionTable, targets: &'a ImageList) -> Self {
        let marked = targets
            .ys()
            .map(|y| f.preimage_count(y) as u64)
            .sum();
        Self { f, targets, marked }
    }

    /// `|f⁻¹(L')|`.
    pub fn preimage_count(&self) -> u64 {
        self.marked
    }

    /// `9 sqrt(5 |X| / |f⁻¹(L')|)`, the bound on expected queries to `f`.
    pub fn query_bound(&self) -> f64 {
        9.0 * (INFLATION as f64 * self.f.domain_size() as f64 / self.marked as f64).sqrt()
    }
}

impl SearchOracle for InflatedPreimageOracle<'_> {
    type Item = u32;

    fn space(&self) -> SearchSpace {
        SearchSpace::new(INFLATION * self.f.domain_size() as u64, self.marked)
            .expect("marked preimages never exceed the inflated space")
    }

    fn cost_per_evaluation(&self) -> u64 {
        PREDICATE_COST
    }

    fn sample_marked<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let mut r = rng.random_range(0..self.marked);
        for y in self.targets.ys() {
            let pre = self.f.preimages(y);
            if r < pre.len() as u64 {
                return pre[r as usize];
            }
            r -= pre.len() as u64;
        }
        unreachable!("marked count matches the inverse index")
    }

    fn is_marked(&self, x: &u32) -> bool {
        self.targets.contains(self.f.value(*x))
    }
}

/// Finds `x` with `f(x) ∈ L'` by running BBHT on the five-fold inflated
/// predicate, two queries to `f` per predicate evaluation.
///
/// With `f⁻¹(L') = ∅` the search only ends when the ledger aborts.
pub fn mtps<R: Rng + ?Sized>(
    f: &FunctionTable,
    targets: &ImageList,
    ledger: &mut QueryLedger,
    rng: &mut R,
) -> Result<u32, Aborted> {
    let oracle = InflatedPreimageOracle::new(f, targets);
    let schedule = BbhtSchedule::for_space(oracle.space());
    bbht_search(&oracle, ledger, rng, &schedule)
        .found
        .ok_or(Aborted)
}
