use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::embed::{Embedding, Search};
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};
use crate::iso::{canonical_key, GraphFamily};
use crate::pattern::PatternGraph;
use crate::tiling::find_disjoint_mono;

/// What a colour class must avoid: `n` disjoint copies of one pattern, or
/// any member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Packing { pattern: PatternGraph, n: usize },
    Family { family: GraphFamily },
}

impl Target {
    pub fn single(h: PatternGraph) -> Self {
        Target::Packing { pattern: h, n: 1 }
    }

    pub fn packing(h: PatternGraph, n: usize) -> Self {
        Target::Packing { pattern: h, n }
    }

    pub fn family(family: GraphFamily) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::Precondition("target family is empty".into()));
        }
        Ok(Target::Family { family })
    }

    /// Canonical description, equal for isomorphic targets.
    pub fn key(&self) -> String {
        match self {
            Target::Packing { pattern, n } => format!("{n}x[{}]", canonical_key(&pattern.graph)),
            Target::Family { family } => format!("family[{}]", family.keys().join("|")),
        }
    }

    /// Members of the family, or the single pattern of a packing.
    pub fn graphs(&self) -> Vec<&SimpleGraph> {
        match self {
            Target::Packing { pattern, .. } => vec![&pattern.graph],
            Target::Family { family } => family.members().iter().collect(),
        }
    }

    /// Smallest number of vertices a copy of the target needs.
    pub fn min_order(&self) -> usize {
        match self {
            Target::Packing { pattern, n } => pattern.k * n,
            Target::Family { family } => family.members().iter().map(|g| g.order()).min().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Avoidance {
    pub avoids: bool,
    /// Copies forming the violation, when there is one.
    pub witness: Vec<Embedding>,
}

/// Whether colour class `colour` of `col` avoids `target`, by a complete
/// search on the whole colouring.
pub fn colouring_avoids(col: &TwoColouring, target: &Target, colour: Colour, budget: &Budget) -> Result<Avoidance> {
    match target {
        Target::Packing { pattern, n } => {
            let found = find_disjoint_mono(col, pattern, *n, colour, budget)?;
            Ok(match found {
                Some(t) => Avoidance { avoids: false, witness: t.copies },
                None => Avoidance { avoids: true, witness: Vec::new() },
            })
        }
        Target::Family { family } => {
            for g in family.members() {
                if let Some(m) = Search::new(col.class(colour), g).first(budget)? {
                    return Ok(Avoidance {
                        avoids: false,
                        witness: vec![Embedding::new(m, Some(colour))],
                    });
                }
            }
            Ok(Avoidance { avoids: true, witness: Vec::new() })
        }
    }
}

/// Both colours avoid their targets.
pub fn avoids_both(col: &TwoColouring, red: &Target, blue: &Target, budget: &Budget) -> Result<bool> {
    Ok(colouring_avoids(col, red, Colour::Red, budget)?.avoids && colouring_avoids(col, blue, Colour::Blue, budget)?.avoids)
}
