use std::ops::Range;

use super::{AlgoResult, ClawError, ClawTuple};
use crate::oracle::{mtps, Aborted, FunctionTable, FunctionValues, ImageList, QueryLedger};
use crate::rng::TrialRng;

/// `ceil(N^(1/3))`.
pub fn default_list_size(range_size: u32) -> u64 {
    ((range_size as f64).log2() / 3.0).exp2().ceil() as u64
}

/// Queries `f` on every input in `inputs` and keeps one record per image.
pub(crate) fn build_first_level(
    f: &FunctionTable,
    inputs: Range<u32>,
    ledger: &mut QueryLedger,
) -> Result<ImageList, Aborted> {
    let mut list = ImageList::new();
    for x in inputs {
        let y = f.query(x, ledger)?;
        list.insert(vec![x], y);
    }
    Ok(list)
}

/// Finds `x` with `f(x) ∈ L'` and joins it onto the matching record.
pub(crate) fn extend_one(
    f: &FunctionTable,
    list: &ImageList,
    ledger: &mut QueryLedger,
    rng: &mut TrialRng,
) -> Result<(Vec<u32>, u32), Aborted> {
    let x = mtps(f, list, ledger, rng)?;
    let y = f.value(x);
    let mut xs = list
        .get(y)
        .expect("preimage search only returns inputs mapping into the list")
        .to_vec();
    xs.push(x);
    Ok((xs, y))
}

/// Finds a 2-claw for `f1, f2`.
///
/// Queries `f1` on its first `t1` inputs (default `ceil(N^(1/3))`), then
/// searches `f2` for an input whose image appears in that list.
pub fn bht_claw(
    f1: &FunctionTable,
    f2: &FunctionTable,
    t1: Option<u64>,
    ledger: &mut QueryLedger,
    rng: &mut TrialRng,
) -> Result<AlgoResult<ClawTuple>, ClawError> {
    let t1 = t1.unwrap_or_else(|| default_list_size(f1.range_size()));
    if t1 > f1.domain_size() as u64 || t1 == 0 {
        return Err(ClawError::NotEnoughFreshInputs {
            needed: t1,
            available: f1.domain_size() as u64,
        });
    }
    let start = ledger.count();
    let mut per_level = vec![0u64; 2];
    let solution = match build_first_level(f1, 0..t1 as u32, ledger) {
        Ok(list) => {
            per_level[0] = ledger.count() - start;
            let found = extend_one(f2, &list, ledger, rng).ok();
            per_level[1] = ledger.count() - start - per_level[0];
            found.map(|(xs, y)| ClawTuple { xs, y })
        }
        Err(Aborted) => {
            per_level[0] = ledger.count() - start;
            None
        }
    };

    Ok(AlgoResult {
        solution,
        total_queries: ledger.count() - start,
        per_level_queries: per_level,
        trial_seed: rng.seed(),
    })
}
