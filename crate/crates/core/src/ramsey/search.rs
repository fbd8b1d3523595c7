use serde::{Deserialize, Serialize};

use super::kernel::{search_order, EdgeOrder, Outcome, KERNEL_LIMIT};
use super::target::{avoids_both, Target};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::TwoColouring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyQuery {
    pub red: Target,
    pub blue: Target,
    /// Orders tried run from `lo` to `hi` inclusive.
    pub lo: usize,
    pub hi: usize,
    pub order: EdgeOrder,
}

impl RamseyQuery {
    pub fn new(red: Target, blue: Target) -> Self {
        let lo = red.min_order().min(blue.min_order()).saturating_sub(1).max(1);
        RamseyQuery {
            red,
            blue,
            lo,
            hi: KERNEL_LIMIT,
            order: EdgeOrder::Colex,
        }
    }

    pub fn symmetric(t: Target) -> Self {
        Self::new(t.clone(), t)
    }

    pub fn with_range(mut self, lo: usize, hi: usize) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn with_order(mut self, order: EdgeOrder) -> Self {
        self.order = order;
        self
    }

    /// Canonical key of the query, ignoring range and edge order.
    pub fn key(&self) -> String {
        format!("r({};{})", self.red.key(), self.blue.key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RamseyStatus {
    Exact,
    Bracketed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderVerdict {
    Avoiding,
    Forced,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub n: usize,
    pub verdict: OrderVerdict,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyResult {
    pub value: Option<usize>,
    /// The number is at least `lo` ...
    pub lo: usize,
    /// ... and at most `hi` when known.
    pub hi: Option<usize>,
    pub status: RamseyStatus,
    /// Colouring on `lo − 1` vertices avoiding both targets.
    pub lower_witness: Option<TwoColouring>,
    pub records: Vec<OrderRecord>,
    /// Why the search stopped early, for bracketed results.
    pub stopped: Option<String>,
}

impl RamseyResult {
    pub fn nodes(&self) -> u64 {
        self.records.iter().map(|r| r.nodes).sum()
    }

    /// Copy without node counts, for comparisons across thread counts.
    pub fn verdicts(&self) -> RamseyResult {
        let mut out = self.clone();
        for r in &mut out.records {
            r.nodes = 0;
        }
        out
    }
}

struct Driver<'a> {
    q: &'a RamseyQuery,
    budget: &'a Budget,
    records: Vec<OrderRecord>,
    lower: usize,
    witness: Option<TwoColouring>,
    upper: Option<usize>,
}

impl Driver<'_> {
    /// `Ok(None)` when the budget ran out at this order.
    fn probe(&mut self, n: usize) -> Result<Option<bool>> {
        let before = self.budget.used();
        match search_order(n, &self.q.red, &self.q.blue, self.q.order, true, self.budget) {
            Ok((Outcome::Avoiding(col), stats)) => {
                if !avoids_both(&col, &self.q.red, &self.q.blue, &Budget::unlimited())? {
                    return Err(Error::ConstructionFailed(format!("search witness on {n} vertices fails the avoidance check")));
                }
                self.records.push(OrderRecord {
                    n,
                    verdict: OrderVerdict::Avoiding,
                    nodes: stats.nodes,
                });
                if n + 1 > self.lower {
                    self.lower = n + 1;
                    self.witness = Some(col);
                }
                Ok(Some(true))
            }
            Ok((Outcome::Forced, stats)) => {
                self.records.push(OrderRecord {
                    n,
                    verdict: OrderVerdict::Forced,
                    nodes: stats.nodes,
                });
                self.upper = Some(self.upper.map_or(n, |u| u.min(n)));
                Ok(Some(false))
            }
            Err(Error::Timeout { .. }) | Err(Error::BudgetExhausted { .. }) => {
                self.records.push(OrderRecord {
                    n,
                    verdict: OrderVerdict::Unknown,
                    nodes: self.budget.used() - before,
                });
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn finish(self, stopped: Option<String>) -> RamseyResult {
        let exact = self.upper == Some(self.lower);
        RamseyResult {
            value: exact.then_some(self.lower),
            lo: self.lower,
            hi: self.upper,
            status: if exact { RamseyStatus::Exact } else { RamseyStatus::Bracketed },
            lower_witness: self.witness,
            records: self.records,
            stopped,
        }
    }
}

/// Exact Ramsey number of the query by complete search over orders
/// `lo..=hi`. Budget exhaustion yields a bracket instead of an error.
pub fn ramsey_search(q: &RamseyQuery, budget: &Budget) -> Result<RamseyResult> {
    if q.lo > q.hi {
        return Err(Error::Precondition(format!("empty search range [{}, {}]", q.lo, q.hi)));
    }
    if q.hi > KERNEL_LIMIT {
        return Err(Error::SizeLimit {
            what: "ramsey search range",
            got: q.hi,
            limit: KERNEL_LIMIT,
        });
    }
    let mut d = Driver {
        q,
        budget,
        records: Vec::new(),
        lower: 1,
        witness: Some(TwoColouring::monochromatic(0, crate::graph::Colour::Red)),
        upper: None,
    };
    // upward from lo
    let mut n = q.lo;
    loop {
        match d.probe(n)? {
            None => return Ok(d.finish(Some(format!("budget exhausted at order {n}")))),
            Some(true) => {
                if n == q.hi {
                    return Ok(d.finish(Some(format!("range ends at {n}"))));
                }
                n += 1;
            }
            Some(false) => break,
        }
    }
    // forced at the first order tried: walk down to the last avoiding one
    while d.upper.is_some() && d.lower < d.upper.unwrap() {
        let m = d.upper.unwrap() - 1;
        if m < d.lower {
            break;
        }
        if d.probe(m)?.is_none() { return Ok(d.finish(Some(format!("budget exhausted at order {m}")))) }
        if m == 0 {
            break;
        }
    }
    Ok(d.finish(None))
}
