use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::pattern::PatternGraph;
use crate::tiling::{find_tiling, Tiling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitcherVerdict {
    pub ok: bool,
    /// Perfect tiling of `S − u`, if any.
    pub without_u: Option<Tiling>,
    /// Perfect tiling of `S − v`, if any.
    pub without_v: Option<Tiling>,
}

/// Both `S − u` and `S − v` have perfect H-tilings. When `|S| − 1` is not a
/// multiple of `k` neither can, and the verdict is negative.
pub fn verify_switcher(s: &SimpleGraph, u: usize, v: usize, h: &PatternGraph, budget: &Budget) -> Result<SwitcherVerdict> {
    let n = s.order();
    if u >= n || v >= n || u == v {
        return Err(Error::Precondition("u and v must be distinct vertices of S".into()));
    }
    if !(n - 1).is_multiple_of(h.k) {
        return Ok(SwitcherVerdict { ok: false, without_u: None, without_v: None });
    }
    let mut minus_u = s.vertices();
    minus_u.remove(u);
    let mut minus_v = s.vertices();
    minus_v.remove(v);
    let without_u = find_tiling(s, h, minus_u, true, budget)?;
    let without_v = find_tiling(s, h, minus_v, true, budget)?;
    Ok(SwitcherVerdict {
        ok: without_u.is_some() && without_v.is_some(),
        without_u,
        without_v,
    })
}

/// A `uv`-switcher that passed [`verify_switcher`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Switcher {
    pub graph: SimpleGraph,
    pub u: usize,
    pub v: usize,
    pub verdict: SwitcherVerdict,
}

/// Vertex of `H` that gets doubled in the gadgets: the lowest-index vertex of
/// maximum degree.
fn doubled_vertex(h: &PatternGraph) -> usize {
    (0..h.k)
        .max_by_key(|&v| (h.graph.degree(v), std::cmp::Reverse(v)))
        .expect("non-empty pattern")
}

/// Gadget on `k + 1` vertices: `H − w` on vertices `2..=k`, and `u = 0`,
/// `v = 1` both joined to the images of `N_H(w)`. Deleting either end leaves
/// a copy of `H`.
pub fn build_switcher(h: &PatternGraph, budget: &Budget) -> Result<Switcher> {
    let w = doubled_vertex(h);
    let mut g = SimpleGraph::empty(h.k + 1);
    let slot = |p: usize| if p < w { p + 2 } else { p + 1 };
    for (a, b) in h.graph.edges() {
        if a != w && b != w {
            g.add_edge(slot(a), slot(b));
        }
    }
    for p in h.graph.neighbours(w).iter() {
        g.add_edge(0, slot(p));
        g.add_edge(1, slot(p));
    }
    let verdict = verify_switcher(&g, 0, 1, h, budget)?;
    if !verdict.ok {
        return Err(Error::ConstructionFailed("switcher gadget lacks a tiling".into()));
    }
    Ok(Switcher { graph: g, u: 0, v: 1, verdict })
}

/// Local absorber for an external set `X` of `k` vertices.
///
/// Vertices: `X = 0..k`, a copy `Y` of `H` on `k..2k`, then for each `i` an
/// interior `W_i` (a copy of `H − w`, `k − 1` vertices) with both `x_i` and
/// `y_i` joined to the images of `N_H(w)`. `L_X = Y ∪ ⋃ W_i` tiles as
/// `{y_i} ∪ W_i`; `L_X ∪ X` tiles as `Y` plus `{x_i} ∪ W_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalAbsorber {
    pub graph: SimpleGraph,
    pub external: VertexSet,
    pub core: VertexSet,
    pub core_tiling: Tiling,
    pub full_tiling: Tiling,
}

pub fn build_local_absorber(h: &PatternGraph, budget: &Budget) -> Result<LocalAbsorber> {
    let k = h.k;
    let w = doubled_vertex(h);
    let total = k + k + k * (k - 1);
    if total > crate::bitset::MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "local absorber",
            got: total,
            limit: crate::bitset::MAX_VERTICES,
        });
    }
    let mut g = SimpleGraph::empty(total);
    for (a, b) in h.graph.edges() {
        g.add_edge(k + a, k + b);
    }
    let others: Vec<usize> = (0..k).filter(|&p| p != w).collect();
    for i in 0..k {
        let base = 2 * k + i * (k - 1);
        let slot = |p: usize| base + others.iter().position(|&q| q == p).expect("p != w");
        for (a, b) in h.graph.edges() {
            if a != w && b != w {
                g.add_edge(slot(a), slot(b));
            }
        }
        for p in h.graph.neighbours(w).iter() {
            g.add_edge(i, slot(p));
            g.add_edge(k + i, slot(p));
        }
    }
    let external = VertexSet::range(0, k);
    let core = VertexSet::range(k, total);
    let core_tiling = find_tiling(&g, h, core, true, budget)?
        .ok_or_else(|| Error::ConstructionFailed("L_X has no perfect tiling".into()))?;
    let full_tiling = find_tiling(&g, h, core | external, true, budget)?
        .ok_or_else(|| Error::ConstructionFailed("L_X with X has no perfect tiling".into()))?;
    Ok(LocalAbsorber {
        graph: g,
        external,
        core,
        core_tiling,
        full_tiling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::check_tiling;

    #[test]
    fn switcher_examples() {
        let b = Budget::default();
        let k5 = SimpleGraph::complete(5);
        assert!(verify_switcher(&k5, 0, 3, &PatternGraph::complete(4), &b).unwrap().ok);
        let k4 = SimpleGraph::complete(4);
        assert!(verify_switcher(&k4, 1, 2, &PatternGraph::complete(3), &b).unwrap().ok);
        let c5 = SimpleGraph::cycle(5);
        assert!(!verify_switcher(&c5, 0, 1, &PatternGraph::complete(3), &b).unwrap().ok);
        assert!(verify_switcher(&c5, 0, 1, &PatternGraph::complete(2), &b).unwrap().ok);
        assert!(verify_switcher(&c5, 0, 2, &PatternGraph::complete(2), &b).unwrap().ok);
        let c7 = SimpleGraph::cycle(7);
        assert!(!verify_switcher(&c7, 0, 3, &PatternGraph::complete(3), &b).unwrap().ok);
    }

    #[test]
    fn gadget_for_k4_is_k5_minus_edge() {
        let s = build_switcher(&PatternGraph::complete(4), &Budget::default()).unwrap();
        let mut expect = SimpleGraph::complete(5);
        expect.remove_edge(0, 1);
        assert_eq!(s.graph, expect);
    }

    #[test]
    fn gadgets_for_assorted_patterns() {
        let b = Budget::default();
        for h in [
            PatternGraph::complete(2),
            PatternGraph::path(3),
            PatternGraph::cycle(5),
            PatternGraph::new(SimpleGraph::petersen()).unwrap(),
        ] {
            assert!(build_switcher(&h, &b).unwrap().verdict.ok);
        }
    }

    #[test]
    fn local_absorbers() {
        let b = Budget::default();
        for k in 2..=4 {
            let h = PatternGraph::complete(k);
            let la = build_local_absorber(&h, &b).unwrap();
            assert_eq!(la.core.len(), k * k);
            assert!(check_tiling(&la.graph, &h.graph, la.core, &la.core_tiling, 0));
            assert!(check_tiling(&la.graph, &h.graph, la.core | la.external, &la.full_tiling, 0));
        }
        let p3 = PatternGraph::path(3);
        assert!(build_local_absorber(&p3, &b).is_ok());
    }
}
