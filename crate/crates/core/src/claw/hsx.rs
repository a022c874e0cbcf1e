use super::bht::{build_first_level, extend_one};
use super::{AlgoResult, ClawError, CollisionTuple};
use crate::oracle::{partition_domain, Aborted, FunctionTable, FunctionValues, ImageList, QueryLedger};
use crate::rng::TrialRng;

struct Recursion<'a> {
    cells: Vec<FunctionTable>,
    log2_range: f64,
    next_fresh: u32,
    per_level: Vec<u64>,
    ledger: &'a mut QueryLedger,
    rng: &'a mut TrialRng,
}

impl Recursion<'_> {
    /// `ceil(N^(1/3^(m-1)))`, the number of `(m-1)`-collisions collected
    /// before extending to an m-collision (`m = 2` gives the BHT list size).
    fn list_size(&self, m: u32) -> u64 {
        (self.log2_range / 3f64.powi(m as i32 - 1)).exp2().ceil() as u64
    }

    fn charged<T>(&mut self, level: u32, f: impl FnOnce(&mut Self) -> Result<T, Aborted>) -> Result<T, Aborted> {
        let before = self.ledger.count();
        let out = f(self);
        self.per_level[level as usize - 1] += self.ledger.count() - before;
        out
    }

    /// An m-collision whose `j`-th input lies in cell `j`.
    fn find(&mut self, m: u32) -> Result<Result<(Vec<u32>, u32), Aborted>, ClawError> {
        let list = if m == 2 {
            let t1 = self.list_size(2);
            let start = self.next_fresh;
            let end = start as u64 + t1;
            if end > self.cells[0].domain_size() as u64 {
                return Err(ClawError::NotEnoughFreshInputs {
                    needed: end,
                    available: self.cells[0].domain_size() as u64,
                });
            }
            self.next_fresh = end as u32;
            match self.charged(1, |s| build_first_level(&s.cells[0], start..end as u32, s.ledger)) {
                Ok(list) => list,
                Err(a) => return Ok(Err(a)),
            }
        } else {
            let mut list = ImageList::new();
            for _ in 0..self.list_size(m) {
                match self.find(m - 1)? {
                    Ok((xs, y)) => {
                        list.insert(xs, y);
                    }
                    Err(a) => return Ok(Err(a)),
                }
            }
            list
        };
        Ok(self.charged(m, |s| extend_one(&s.cells[m as usize - 1], &list, s.ledger, s.rng)))
    }
}

/// Finds an l-collision of `f` with the recursive HSX strategy.
///
/// The first `l * N` inputs are split into `l` cells of size `N`. An
/// m-collision is built by collecting `ceil(N^(1/3^(m-1)))` independent
/// `(m-1)`-collisions from scratch and extending one of them with a
/// preimage search in cell `m`; at `m = 2` this is the BHT finder on cells 1
/// and 2. Every BHT list uses inputs of cell 1 not used before.
pub fn hsx_collision<F: FunctionValues + ?Sized>(
    f: &F,
    l: u32,
    ledger: &mut QueryLedger,
    rng: &mut TrialRng,
) -> Result<AlgoResult<CollisionTuple>, ClawError> {
    if l < 2 {
        return Err(ClawError::InvalidL(l));
    }
    let n = f.range_size();
    if (f.domain_size() as u64) < l as u64 * n as u64 {
        return Err(ClawError::DomainTooSmall {
            index: 0,
            domain_size: f.domain_size(),
            min: l as f64 * n as f64,
        });
    }
    let start = ledger.count();
    let trial_seed = rng.seed();
    let mut rec = Recursion {
        cells: partition_domain(f, l, n)?,
        log2_range: (n as f64).log2(),
        next_fresh: 0,
        per_level: vec![0; l as usize],
        ledger,
        rng,
    };
    let found = rec.find(l)?;
    let per_level_queries = rec.per_level;
    Ok(AlgoResult {
        solution: found.ok().map(|(xs, y)| CollisionTuple {
            xs: xs
                .into_iter()
                .enumerate()
                .map(|(i, x)| i as u32 * n + x)
                .collect(),
            y,
        }),
        total_queries: ledger.count() - start,
        per_level_queries,
        trial_seed,
    })
}
