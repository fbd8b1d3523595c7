//! Exact combinatorics for Ramsey numbers of disjoint copies of sparse graphs:
//! embeddings, tilings, absorbers, ties, explicit colourings and an exact
//! Ramsey-number search engine, each paired with an exhaustive verifier.

pub mod bitset;
pub mod budget;
pub mod error;
pub mod graph;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Colour, SimpleGraph, TwoColouring};
pub mod iso;
pub mod pattern;

pub use iso::{derived_families, DerivedFamilies, GraphFamily};
pub use pattern::PatternGraph;
pub mod ledger;
pub use ledger::{param_ledger, ParamLedger};
pub mod density;
pub mod embed;
pub use embed::{AliasedEmbedding, Embedding};
pub mod matching;
pub mod tiling;
pub use tiling::Tiling;
pub mod absorb;
pub mod cli;
pub mod constructions;
pub mod ramsey;
pub mod ties;
