use std::fmt;

use super::exponent::mclaw_exponent_parts;
use super::ClawError;

/// Constant in the query limit `k * 169 * l * c_N^(3/2) * N^e`.
pub const QLIMIT_CONSTANT: f64 = 169.0;

/// Level `i` keeps `ceil(4 c_N N_i)` records.
pub const CAPACITY_FACTOR: f64 = 4.0;

/// Largest `l` accepted; keeps `2^l` exact in an `f64`.
pub const MAX_L: u32 = 52;

/// Parameters of `Mclaw_k` for `l` functions into a range of size `N`.
///
/// The list-size schedule `N_i` is kept real-valued; only the level
/// capacities `ceil(4 c_N N_i)` are integers. `N` is held as an `f64` so
/// that cryptographic sizes such as `2^512` can be evaluated in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct MclawParams {
    l: u32,
    range_size: f64,
    log2_range: f64,
    c_n: f64,
    k: u32,
    schedule: Vec<f64>,
    capacities: Vec<f64>,
    log2_qlimit: f64,
}

impl MclawParams {
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn range_size(&self) -> f64 {
        self.range_size
    }

    pub fn log2_range(&self) -> f64 {
        self.log2_range
    }

    pub fn c_n(&self) -> f64 {
        self.c_n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `N_0, ..., N_l`, with `N_0 = N / (4 c_N)` and
    /// `N_i = N^((2^(l-i) - 1) / (2^l - 1))`.
    pub fn schedule(&self) -> &[f64] {
        &self.schedule
    }

    /// `N_i` for `i` in `0..=l`.
    pub fn list_size(&self, i: u32) -> f64 {
        self.schedule[i as usize]
    }

    /// `ceil(4 c_N N_i)` for `i` in `1..=l`, saturating at `u64::MAX`.
    pub fn capacity(&self, i: u32) -> u64 {
        assert!((1..=self.l).contains(&i), "levels run from 1 to l");
        self.capacities[i as usize - 1] as u64
    }

    pub fn capacities(&self) -> Vec<u64> {
        (1..=self.l).map(|i| self.capacity(i)).collect()
    }

    /// `log2(ceil(4 c_N N_i))` for `i` in `1..=l`; exact where the integer
    /// capacity saturates.
    pub fn log2_capacities(&self) -> Vec<f64> {
        self.capacities.iter().map(|c| c.log2()).collect()
    }

    /// `Qlimit_k = k * 169 * l * c_N^(3/2) * N^((2^(l-1) - 1) / (2^l - 1))`.
    pub fn qlimit(&self) -> f64 {
        self.log2_qlimit.exp2()
    }

    pub fn log2_qlimit(&self) -> f64 {
        self.log2_qlimit
    }

    /// The largest integer query count not exceeding `Qlimit_k`.
    pub fn ledger_limit(&self) -> u64 {
        (self.qlimit().floor() as u64).max(1)
    }
}

impl fmt::Display for MclawParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let capacities: Vec<String> = self
            .capacities
            .iter()
            .map(|&c| {
                if c < 2f64.powi(53) {
                    format!("{c}")
                } else {
                    format!("2^{:.3}", c.log2())
                }
            })
            .collect();
        write!(
            f,
            "l={} N=2^{:.3} c_N={} k={} capacities=[{}] Qlimit=2^{:.3}",
            self.l,
            self.log2_range,
            self.c_n,
            self.k,
            capacities.join(", "),
            self.log2_qlimit
        )
    }
}

/// Builds the schedule, capacities and query limit.
///
/// Fails when a capacity would exceed `N`, i.e. `c_N` is far outside the
/// regime where the list sizes make sense.
pub fn build_params(l: u32, range_size: f64, c_n: f64, k: u32) -> Result<MclawParams, ClawError> {
    if !(2..=MAX_L).contains(&l) {
        return Err(ClawError::InvalidL(l));
    }
    if !(range_size >= 2.0) || !range_size.is_finite() {
        return Err(ClawError::InvalidRange(range_size));
    }
    if !(c_n >= 1.0) || !c_n.is_finite() {
        return Err(ClawError::InvalidCn(c_n));
    }
    if k < 2 {
        return Err(ClawError::InvalidK(k));
    }

    let log2_range = range_size.log2();
    let den = (2f64).powi(l as i32) - 1.0;
    let mut schedule = Vec::with_capacity(l as usize + 1);
    schedule.push(range_size / (CAPACITY_FACTOR * c_n));
    for i in 1..=l {
        let num = (2f64).powi((l - i) as i32) - 1.0;
        // multiply before dividing so that log2(N) = den * m yields an exact power
        schedule.push((log2_range * num / den).exp2());
    }
    let mut capacities = Vec::with_capacity(l as usize);
    for i in 1..=l {
        let cap = (CAPACITY_FACTOR * c_n * schedule[i as usize]).ceil();
        if cap > range_size {
            return Err(ClawError::CapacityExceedsRange {
                level: i,
                capacity: cap,
                range_size,
            });
        }
        capacities.push(cap);
    }

    let (num, den) = mclaw_exponent_parts(l);
    let log2_qlimit = (k as f64 * QLIMIT_CONSTANT * l as f64).log2()
        + 1.5 * c_n.log2()
        + log2_range * num / den;

    Ok(MclawParams {
        l,
        range_size,
        log2_range,
        c_n,
        k,
        schedule,
        capacities,
        log2_qlimit,
    })
}

/// `c_N = max(1, max_i |Y| / |X_i|)`.
pub fn default_c_n(range_size: u32, domain_sizes: &[u32]) -> f64 {
    domain_sizes
        .iter()
        .map(|&d| range_size as f64 / d as f64)
        .fold(1.0, f64::max)
}

/// `ceil(log2(Qlimit_k))` for each `l`, evaluated in log space.
pub fn sha3_bound_table(
    ls: impl IntoIterator<Item = u32>,
    k: u32,
    log2_range: f64,
    c_n: f64,
) -> Result<Vec<(u32, u32)>, ClawError> {
    ls.into_iter()
        .map(|l| {
            let p = build_params(l, log2_range.exp2(), c_n, k)?;
            Ok((l, p.log2_qlimit().ceil() as u32))
        })
        .collect()
}
