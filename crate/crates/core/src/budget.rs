use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Default node budget for backtracking searches.
pub const DEFAULT_NODES: u64 = 100_000_000;

/// Node counter shared by one search (possibly across worker threads).
///
/// The verdict of a search never depends on the budget unless the budget runs
/// out, in which case the caller gets [`Error::Timeout`].
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            deadline: None,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn with_deadline(mut self, after: Duration) -> Self {
        self.deadline = Some(Instant::now() + after);
        self
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Charges `n` nodes.
    #[inline]
    pub fn charge(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            return Err(Error::Timeout { nodes: self.limit });
        }
        if let Some(deadline) = self.deadline {
            // checking the clock every node is too slow
            if (before >> 12) != (before.saturating_add(n) >> 12) && Instant::now() > deadline {
                return Err(Error::Timeout { nodes: before });
            }
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_NODES)
    }
}
