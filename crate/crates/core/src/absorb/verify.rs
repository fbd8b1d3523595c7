use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::{binomial, for_each_subset, VertexSet};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::pattern::PatternGraph;
use crate::tiling::{find_tiling, Tiling};

pub const DEFAULT_SUBSET_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetWitness {
    pub subset: VertexSet,
    pub tiling: Tiling,
}

/// An absorber `A` for reservoir `U` with radius `r`, checked over every
/// `R ⊆ U` with `|R| ≤ r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorberCertificate {
    pub absorber: VertexSet,
    pub reservoir: VertexSet,
    pub radius: usize,
    pub pattern: SimpleGraph,
    pub host_order: usize,
    pub host_digest: String,
    pub subsets_checked: u64,
    pub witnesses_stored: bool,
    pub witnesses: Vec<SubsetWitness>,
}

impl AbsorberCertificate {
    /// Drops the per-subset log; re-run [`verify_absorber`] to recover it.
    pub fn elide_witnesses(&mut self) {
        self.witnesses.clear();
        self.witnesses_stored = false;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AbsorberVerdict {
    Certified(AbsorberCertificate),
    Failed { subset: VertexSet, subsets_checked: u64 },
}

impl AbsorberVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, AbsorberVerdict::Certified(_))
    }

    pub fn certificate(&self) -> Option<&AbsorberCertificate> {
        match self {
            AbsorberVerdict::Certified(c) => Some(c),
            AbsorberVerdict::Failed { .. } => None,
        }
    }
}

/// SHA-256 of the text form of `host`, as stored in certificates.
pub fn host_digest(host: &SimpleGraph) -> String {
    Sha256::digest(host.to_text().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// All `R ⊆ U` with `|R| ≤ r`, ordered by size and then lexicographically.
fn subsets_up_to(u: VertexSet, r: usize) -> Vec<VertexSet> {
    let pool = u.to_vec();
    let mut out = Vec::new();
    for size in 0..=r.min(pool.len()) {
        for_each_subset(&pool, size, |s| {
            out.push(s.iter().collect());
            true
        });
    }
    out
}

/// Exhaustive absorption check with the default subset limit.
pub fn verify_absorber(
    host: &SimpleGraph,
    a: VertexSet,
    u: VertexSet,
    r: usize,
    h: &PatternGraph,
    budget: &Budget,
) -> Result<AbsorberVerdict> {
    verify_absorber_with_limit(host, a, u, r, h, DEFAULT_SUBSET_LIMIT, budget)
}

pub fn verify_absorber_with_limit(
    host: &SimpleGraph,
    a: VertexSet,
    u: VertexSet,
    r: usize,
    h: &PatternGraph,
    limit: u64,
    budget: &Budget,
) -> Result<AbsorberVerdict> {
    if !(a | u).is_subset(&host.vertices()) {
        return Err(Error::Precondition("A and U must lie inside the host".into()));
    }
    if !a.is_disjoint(&u) {
        return Err(Error::Precondition("A and U must be disjoint".into()));
    }
    let total: u64 = (0..=r.min(u.len())).map(|i| binomial(u.len(), i)).fold(0u64, u64::saturating_add);
    if total > limit {
        return Err(Error::SizeLimit {
            what: "absorber subsets",
            got: total.min(usize::MAX as u64) as usize,
            limit: limit as usize,
        });
    }
    let subsets = subsets_up_to(u, r);
    let results: Vec<Result<Option<Tiling>>> = subsets
        .par_iter()
        .map(|&rset| find_tiling(host, h, a | rset, false, budget))
        .collect();
    let mut witnesses = Vec::with_capacity(subsets.len());
    for (i, (subset, res)) in subsets.iter().zip(results).enumerate() {
        match res? {
            Some(tiling) => witnesses.push(SubsetWitness { subset: *subset, tiling }),
            None => {
                return Ok(AbsorberVerdict::Failed {
                    subset: *subset,
                    subsets_checked: i as u64 + 1,
                })
            }
        }
    }
    Ok(AbsorberVerdict::Certified(AbsorberCertificate {
        absorber: a,
        reservoir: u,
        radius: r,
        pattern: h.graph.clone(),
        host_order: host.order(),
        host_digest: host_digest(host),
        subsets_checked: witnesses.len() as u64,
        witnesses_stored: true,
        witnesses,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorb::build_local_absorber;
    use crate::tiling::check_tiling;

    #[test]
    fn radius_zero_on_two_triangles() {
        let mut g = SimpleGraph::complete(3).disjoint_union(&SimpleGraph::complete(3));
        let g9 = {
            let mut big = SimpleGraph::empty(9);
            for (x, y) in g.edges() {
                big.add_edge(x, y);
            }
            for w in 6..9 {
                for v in 0..9 {
                    if v != w {
                        big.add_edge(w, v);
                    }
                }
            }
            big
        };
        g = g9;
        let h = PatternGraph::complete(3);
        let v = verify_absorber(&g, VertexSet::range(0, 6), VertexSet::range(6, 9), 0, &h, &Budget::default()).unwrap();
        let c = v.certificate().unwrap();
        assert_eq!(c.subsets_checked, 1);
        assert_eq!(c.witnesses[0].subset, VertexSet::EMPTY);
    }

    #[test]
    fn local_absorber_as_absorber() {
        let h = PatternGraph::complete(3);
        let b = Budget::default();
        let la = build_local_absorber(&h, &b).unwrap();
        // intermediate sizes pass through the leftover allowance
        let v = verify_absorber(&la.graph, la.core, la.external, 3, &h, &b).unwrap();
        let c = v.certificate().unwrap();
        assert_eq!(c.subsets_checked, 8);
        for w in &c.witnesses {
            let leftover = (la.core.len() + w.subset.len()) % 3;
            assert!(check_tiling(&la.graph, &h.graph, la.core | w.subset, &w.tiling, leftover));
        }
        let v0 = verify_absorber(&la.graph, la.core, la.external, 0, &h, &b).unwrap();
        assert!(v0.is_certified());
        let full = find_tiling(&la.graph, &h, la.core | la.external, true, &b).unwrap().unwrap();
        assert!(check_tiling(&la.graph, &h.graph, la.core | la.external, &full, 0));
    }

    #[test]
    fn subsets_are_ordered() {
        let s = subsets_up_to(VertexSet::from_iter([2usize, 5, 7]), 2);
        let sizes: Vec<usize> = s.iter().map(|x| x.len()).collect();
        assert_eq!(sizes, vec![0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(s[4], VertexSet::from_iter([2usize, 5]));
    }

    #[test]
    fn overlapping_sets_rejected() {
        let g = SimpleGraph::complete(6);
        let h = PatternGraph::complete(3);
        let r = verify_absorber(&g, VertexSet::range(0, 4), VertexSet::range(3, 6), 1, &h, &Budget::default());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn size_limit() {
        let g = SimpleGraph::complete(60);
        let h = PatternGraph::complete(3);
        let r = verify_absorber(&g, VertexSet::range(0, 3), VertexSet::range(3, 60), 4, &h, &Budget::default());
        assert!(matches!(r, Err(Error::SizeLimit { .. })));
    }
}
