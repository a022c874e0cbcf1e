use std::fmt;

/// Returned by [`QueryLedger::charge`] once the query limit has been reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Aborted;

impl fmt::Display for Aborted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("query limit reached")
    }
}

impl std::error::Error for Aborted {}

/// Monotone query counter with a hard limit.
///
/// The ledger aborts the moment the count reaches the limit. After that no
/// further queries are charged, so `count() <= limit()` holds on every run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryLedger {
    count: u64,
    limit: u64,
    aborted: bool,
}

impl QueryLedger {
    /// # Panics
    ///
    /// Panics if `limit` is zero.
    pub fn new(limit: u64) -> Self {
        assert!(limit > 0, "query limit must be positive");
        Self {
            count: 0,
            limit,
            aborted: false,
        }
    }

    /// A ledger that will never realistically abort.
    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.count
    }

    pub fn is_aborted(&self) -> bool {
        self.aborted
    }

    /// Charges `amount` queries.
    ///
    /// The count is capped at the limit; reaching the limit aborts the ledger
    /// and returns `Err(Aborted)`. Charging an aborted ledger leaves the count
    /// unchanged. A zero amount only reports the current state.
    pub fn charge(&mut self, amount: u64) -> Result<(), Aborted> {
        if self.aborted {
            return Err(Aborted);
        }
        let next = self.count.saturating_add(amount);
        if next >= self.limit {
            self.count = self.limit;
            self.aborted = true;
            Err(Aborted)
        } else {
            self.count = next;
            Ok(())
        }
    }
}
