use super::bht::build_first_level;
use super::{AlgoResult, ClawError, ClawTuple, CollisionTuple, MclawParams};
use crate::oracle::{mtps, partition_domain, FunctionTable, FunctionValues, QueryLedger};
use crate::rng::TrialRng;

/// State of the lists just before level `level` starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelSnapshot {
    pub level: u32,
    /// `|Im(f_i) ∩ L'_{i-1}|`, with `L'_0 = Y`.
    pub overlap: u64,
    /// `|L'_{i-1}|` (the range size at level 1).
    pub previous_len: u64,
}

fn check_inputs(
    functions: &[FunctionTable],
    params: &MclawParams,
    ledger: &QueryLedger,
) -> Result<(), ClawError> {
    if functions.len() != params.l() as usize {
        return Err(ClawError::FunctionCount {
            expected: params.l(),
            got: functions.len(),
        });
    }
    let n = params.range_size();
    for (index, f) in functions.iter().enumerate() {
        if f.range_size() as f64 != n {
            return Err(ClawError::RangeMismatch {
                index,
                expected: n,
                got: f.range_size(),
            });
        }
        let min = n / params.c_n();
        if (f.domain_size() as f64) < min {
            return Err(ClawError::DomainTooSmall {
                index,
                domain_size: f.domain_size(),
                min,
            });
        }
    }
    let needed = params.capacity(1);
    if needed > functions[0].domain_size() as u64 {
        return Err(ClawError::NotEnoughFreshInputs {
            needed,
            available: functions[0].domain_size() as u64,
        });
    }
    if ledger.limit() as f64 > params.qlimit() {
        return Err(ClawError::LedgerAboveQlimit {
            ledger: ledger.limit(),
            qlimit: params.qlimit(),
        });
    }
    Ok(())
}

fn run(
    functions: &[FunctionTable],
    params: &MclawParams,
    ledger: &mut QueryLedger,
    rng: &mut TrialRng,
    mut trace: Option<&mut Vec<LevelSnapshot>>,
) -> Result<AlgoResult<ClawTuple>, ClawError> {
    check_inputs(functions, params, ledger)?;
    let l = params.l();
    let start = ledger.count();
    let mut per_level = vec![0u64; l as usize];
    let mut level_start = start;
    let trial_seed = rng.seed();
    let result = |solution, ledger: &QueryLedger, per_level| AlgoResult {
        solution,
        total_queries: ledger.count() - start,
        per_level_queries: per_level,
        trial_seed,
    };

    // Level 1: fresh inputs x_1, x_2, ... of X_1 in enumeration order.
    let f1 = &functions[0];
    if let Some(t) = trace.as_deref_mut() {
        t.push(LevelSnapshot {
            level: 1,
            overlap: f1.image_size() as u64,
            previous_len: f1.range_size() as u64,
        });
    }
    let mut current = match build_first_level(f1, 0..params.capacity(1) as u32, ledger) {
        Ok(list) => list,
        Err(_) => {
            per_level[0] = ledger.count() - level_start;
            return Ok(result(None, ledger, per_level));
        }
    };
    per_level[0] = ledger.count() - level_start;

    for i in 2..=l {
        let f = &functions[i as usize - 1];
        let mut previous = std::mem::take(&mut current);
        level_start = ledger.count();
        if let Some(t) = trace.as_deref_mut() {
            t.push(LevelSnapshot {
                level: i,
                overlap: previous.ys().filter(|&y| f.preimage_count(y) > 0).count() as u64,
                previous_len: previous.len() as u64,
            });
        }
        for _ in 0..params.capacity(i) {
            let x = match mtps(f, &previous, ledger, rng) {
                Ok(x) => x,
                Err(_) => {
                    per_level[i as usize - 1] = ledger.count() - level_start;
                    return Ok(result(None, ledger, per_level));
                }
            };
            let y = f.value(x);
            let mut xs = previous
                .remove(y)
                .expect("preimage search only returns inputs mapping into the list");
            xs.push(x);
            current.insert(xs, y);
        }
        per_level[i as usize - 1] = ledger.count() - level_start;
        debug_assert!(current.is_consistent_with(functions));
    }

    let solution = current
        .first()
        .map(|(xs, y)| ClawTuple { xs: xs.to_vec(), y });
    Ok(result(solution, ledger, per_level))
}

/// Finds an l-claw for `f_1, ..., f_l` with `Mclaw_k`.
///
/// Level 1 queries `f_1` on `ceil(4 c_N N_1)` fresh inputs. Each level
/// `i >= 2` runs the preimage search on `f_i` against the images of level
/// `i - 1` `ceil(4 c_N N_i)` times; every hit extends the matching record,
/// which moves from level `i - 1` to level `i`. The run stops with no
/// solution as soon as the ledger aborts.
///
/// The ledger limit must not exceed `Qlimit_k`; use
/// [`MclawParams::ledger_limit`] for a fresh ledger.
pub fn mclaw(
    functions: &[FunctionTable],
    params: &MclawParams,
    ledger: &mut QueryLedger,
    rng: &mut TrialRng,
) -> Result<AlgoResult<ClawTuple>, ClawError> {
    run(functions, params, ledger, rng, None)
}

/// [`mclaw`], additionally recording a [`LevelSnapshot`] as each level
/// starts. Levels never reached because of an abort have no snapshot.
pub fn mclaw_traced(
    functions: &[FunctionTable],
    params: &MclawParams,
    ledger: &mut QueryLedger,
    rng: &mut TrialRng,
) -> Result<(AlgoResult<ClawTuple>, Vec<LevelSnapshot>), ClawError> {
    let mut trace = Vec::with_capacity(params.l() as usize);
    let result = run(functions, params, ledger, rng, Some(&mut trace))?;
    Ok((result, trace))
}

/// Finds an l-collision of `f` by running [`mclaw`] on `l` disjoint cells of
/// its domain. Cell `i` covers inputs `[i s, (i + 1) s)` with
/// `s = min(|X| / l, |Y|)`, so the inputs of the claw are distinct.
pub fn collision_from_claw<F: FunctionValues + ?Sized>(
    f: &F,
    params: &MclawParams,
    ledger: &mut QueryLedger,
    rng: &mut TrialRng,
) -> Result<AlgoResult<CollisionTuple>, ClawError> {
    let l = params.l();
    let cell = (f.domain_size() / l).min(f.range_size());
    if cell == 0 {
        return Err(ClawError::DomainTooSmall {
            index: 0,
            domain_size: f.domain_size(),
            min: l as f64 * params.range_size() / params.c_n(),
        });
    }
    let cells = partition_domain(f, l, cell)?;
    let result = mclaw(&cells, params, ledger, rng)?;
    Ok(result.map(|claw| CollisionTuple {
        xs: claw
            .xs
            .iter()
            .enumerate()
            .map(|(i, &x)| i as u32 * cell + x)
            .collect(),
        y: claw.y,
    }))
}
