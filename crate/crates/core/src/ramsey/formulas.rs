use serde::{Deserialize, Serialize};

use super::search::{ramsey_search, RamseyQuery, RamseyStatus};
use super::target::Target;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::iso::{derived_families, GraphFamily};
use crate::pattern::PatternGraph;

/// A predicted number, or the reason it could not be evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicted {
    Value(i64),
    Symbolic(String),
}

impl Predicted {
    pub fn value(&self) -> Option<i64> {
        match self {
            Predicted::Value(v) => Some(*v),
            Predicted::Symbolic(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sandwich {
    /// `r(𝒟_c(H), 𝒟(H))`.
    pub lower_family: usize,
    /// `r(𝒟_c'(H), 𝒟'(H))`.
    pub upper_family: usize,
    /// Bounds on `r(nH) − (2k − α)n`.
    pub lower: i64,
    pub upper: i64,
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaRecord {
    pub k: usize,
    pub alpha: usize,
    pub n: usize,
    /// `(2k − α)n`.
    pub linear: i64,
    /// Some vertex has its neighbourhood inside a maximum independent set.
    pub special_case: bool,
    /// `(2k − α)n − 1` when `special_case` holds; valid only for large `n`.
    pub special_prediction: Option<i64>,
    /// `r(𝒟(G), H)` when `G` was given.
    pub family_number: Option<Predicted>,
    /// `n|H| + r(𝒟(G), H) − 1` when `G` was given.
    pub asymmetric: Option<Predicted>,
    pub sandwich: Predicted,
    pub sandwich_detail: Option<Sandwich>,
}

/// Exact `r(red, blue)` for two families, or `Undecidable` when the search
/// stops early.
pub fn family_ramsey(red: &GraphFamily, blue: &Target, budget: &Budget) -> Result<usize> {
    let q = RamseyQuery::new(Target::family(red.clone())?, blue.clone()).with_range(1, super::KERNEL_LIMIT);
    let r = ramsey_search(&q, budget)?;
    match (r.status, r.value) {
        (RamseyStatus::Exact, Some(v)) => Ok(v),
        _ => Err(Error::Undecidable(format!("{} only bracketed: lo {}, hi {:?}", q.key(), r.lo, r.hi))),
    }
}

/// Endpoints `r(𝒟_c(H), 𝒟(H)) − 2` and `r(𝒟_c'(H), 𝒟'(H)) − 2` bounding
/// `r(nH) − (2k − α)n` for connected `H` and large `n`.
pub fn bounds_sandwich(h: &PatternGraph, budget: &Budget) -> Result<Sandwich> {
    if !h.graph.is_connected() {
        return Err(Error::Precondition("the sandwich bounds need a connected pattern".into()));
    }
    let d = derived_families(&h.graph);
    let lower_family = family_ramsey(&d.d_c, &Target::family(d.d.clone())?, budget)?;
    let upper_family = family_ramsey(&d.d_c_prime, &Target::family(d.d_prime.clone())?, budget)?;
    let lower = lower_family as i64 - 2;
    let upper = upper_family as i64 - 2;
    Ok(Sandwich {
        lower_family,
        upper_family,
        lower,
        upper,
        tight: lower == upper,
    })
}

/// Predicted values for `r(nH)` and, when `g` is given, `r(G, nH)`.
/// Family numbers that the search cannot settle are left symbolic.
pub fn evaluate_formulas(h: &PatternGraph, n: usize, g: Option<&PatternGraph>, budget: &Budget) -> Result<FormulaRecord> {
    let (k, alpha) = (h.k, h.alpha);
    let linear = ((2 * k - alpha) * n) as i64;
    let special_case = h.has_neighbourhood_in_max_independent();
    let (family_number, asymmetric) = match g {
        None => (None, None),
        Some(g) => {
            let d = derived_families(&g.graph).d;
            match family_ramsey(&d, &Target::single(h.clone()), budget) {
                Ok(v) => (
                    Some(Predicted::Value(v as i64)),
                    Some(Predicted::Value((n * k) as i64 + v as i64 - 1)),
                ),
                Err(Error::Undecidable(why)) => (
                    Some(Predicted::Symbolic(format!("r(D(G), H): {why}"))),
                    Some(Predicted::Symbolic(format!("{} + r(D(G), H) - 1", n * k))),
                ),
                Err(e) => return Err(e),
            }
        }
    };
    let (sandwich, sandwich_detail) = match bounds_sandwich(h, budget) {
        Ok(s) if s.tight => (Predicted::Value(linear + s.lower), Some(s)),
        Ok(s) => (
            Predicted::Symbolic(format!("between {} and {}", linear + s.lower, linear + s.upper)),
            Some(s),
        ),
        Err(Error::Undecidable(why)) | Err(Error::Precondition(why)) => (Predicted::Symbolic(why), None),
        Err(e) => return Err(e),
    };
    Ok(FormulaRecord {
        k,
        alpha,
        n,
        linear,
        special_case,
        special_prediction: special_case.then_some(linear - 1),
        family_number,
        asymmetric,
        sandwich,
        sandwich_detail,
    })
}
