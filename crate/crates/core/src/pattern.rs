//! Pattern graphs with cached parameters, exact independent-set solvers.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest order accepted by the exact independent-set solvers.
pub const EXACT_LIMIT: usize = 64;

fn check_limit(g: &SimpleGraph) -> Result<()> {
    if g.order() > EXACT_LIMIT {
        return Err(Error::SizeLimit {
            what: "exact independent set",
            got: g.order(),
            limit: EXACT_LIMIT,
        });
    }
    Ok(())
}

/// Maximum independent set within `pool`, by branch and bound.
///
/// Degree-0 and degree-1 vertices are taken greedily; otherwise the search
/// branches on a vertex of maximum degree. The returned witness is the
/// lexicographically first optimum found under this deterministic order.
fn max_independent_in(g: &SimpleGraph, pool: VertexSet) -> VertexSet {
    fn go(g: &SimpleGraph, mut pool: VertexSet, mut cur: VertexSet, best: &mut VertexSet) {
        loop {
            if cur.len() + pool.len() <= best.len() {
                return;
            }
            // vertices of degree <= 1 in the pool can always be taken
            let forced = pool.iter().find(|&v| (g.neighbours(v) & pool).len() <= 1);
            match forced {
                Some(v) => {
                    cur.insert(v);
                    pool -= g.neighbours(v);
                    pool.remove(v);
                }
                None => break,
            }
        }
        if pool.is_empty() {
            if cur.len() > best.len() {
                *best = cur;
            }
            return;
        }
        let v = pool
            .iter()
            .max_by_key(|&v| ((g.neighbours(v) & pool).len(), std::cmp::Reverse(v)))
            .expect("pool non-empty");
        let mut with = cur;
        with.insert(v);
        let mut rest = pool - g.neighbours(v);
        rest.remove(v);
        go(g, rest, with, best);
        let mut without = pool;
        without.remove(v);
        go(g, without, cur, best);
    }
    let mut best = VertexSet::EMPTY;
    go(g, pool, VertexSet::EMPTY, &mut best);
    best
}

/// Independence number and a maximum independent set.
pub fn independence_number(g: &SimpleGraph) -> Result<(usize, VertexSet)> {
    check_limit(g)?;
    let w = max_independent_in(g, g.vertices());
    Ok((w.len(), w))
}

/// A maximum set of vertices with pairwise distance at least three.
pub fn two_independent_set(g: &SimpleGraph) -> Result<VertexSet> {
    check_limit(g)?;
    Ok(max_independent_in(&g.square(), g.vertices()))
}

/// All maximal independent sets (Bron–Kerbosch with pivoting on the complement),
/// sorted.
pub fn maximal_independent_sets(g: &SimpleGraph) -> Vec<VertexSet> {
    fn go(
        g: &SimpleGraph,
        r: VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        // pivot maximising |P \ N(u)| in the complement, i.e. |P ∩ N(u)| in g
        let pivot = (p | x)
            .iter()
            .max_by_key(|&u| (g.neighbours(u) & p).len())
            .expect("non-empty");
        let mut pivot_non_nbrs = p - g.neighbours(pivot);
        pivot_non_nbrs.remove(pivot);
        let branch = p - pivot_non_nbrs;
        for v in branch.iter() {
            let nb = g.neighbours(v);
            let mut r2 = r;
            r2.insert(v);
            let mut p2 = p - nb;
            p2.remove(v);
            let mut x2 = x - nb;
            x2.remove(v);
            go(g, r2, p2, x2, out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    if g.order() == 0 {
        out.push(VertexSet::EMPTY);
        return out;
    }
    go(g, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut out);
    out.sort_by_key(|s| s.to_vec());
    out
}

/// All maximum independent sets, sorted.
pub fn maximum_independent_sets(g: &SimpleGraph) -> Vec<VertexSet> {
    let all = maximal_independent_sets(g);
    let alpha = all.iter().map(|s| s.len()).max().unwrap_or(0);
    all.into_iter().filter(|s| s.len() == alpha).collect()
}

/// A small target graph `H` with its parameters computed once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternGraph {
    pub graph: SimpleGraph,
    pub k: usize,
    pub max_degree: usize,
    pub alpha: usize,
    pub max_ind_set: VertexSet,
    pub two_ind_set: VertexSet,
}

impl PatternGraph {
    pub fn new(graph: SimpleGraph) -> Result<PatternGraph> {
        if graph.order() == 0 {
            return Err(Error::Precondition("pattern graph must have a vertex".into()));
        }
        let (alpha, max_ind_set) = independence_number(&graph)?;
        let two_ind_set = two_independent_set(&graph)?;
        let k = graph.order();
        let max_degree = graph.max_degree();
        debug_assert!(graph.is_independent(max_ind_set));
        if max_degree >= 1 && graph.is_isolated_free() {
            let d = max_degree + 1;
            assert!(
                alpha * d >= k && alpha * d <= (d - 1) * k,
                "independence number {alpha} outside its degree bounds"
            );
        }
        if max_degree >= 2 {
            assert!(two_ind_set.len() * max_degree.pow(3) >= k);
        }
        Ok(PatternGraph {
            graph,
            k,
            max_degree,
            alpha,
            max_ind_set,
            two_ind_set,
        })
    }

    pub fn complete(n: usize) -> PatternGraph {
        Self::new(SimpleGraph::complete(n)).expect("valid pattern")
    }

    pub fn path(n: usize) -> PatternGraph {
        Self::new(SimpleGraph::path(n)).expect("valid pattern")
    }

    pub fn cycle(n: usize) -> PatternGraph {
        Self::new(SimpleGraph::cycle(n)).expect("valid pattern")
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// `H − I` for the cached maximum independent set `I`.
    pub fn core_vertices(&self) -> VertexSet {
        self.graph.vertices() - self.max_ind_set
    }

    /// True when some vertex has its whole neighbourhood inside a maximum
    /// independent set.
    pub fn has_neighbourhood_in_max_independent(&self) -> bool {
        let maxima = maximum_independent_sets(&self.graph);
        (0..self.k).any(|v| {
            let nb = self.graph.neighbours(v);
            maxima.iter().any(|s| nb.is_subset(s))
        })
    }
}
