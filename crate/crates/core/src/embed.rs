//! Subgraph search (backtracking over bitset candidate sets) and the greedy and
//! candidate-set embedding procedures.

use num_rational::{BigRational, Rational64};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::density::{is_bi_dense, DensityMode};
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};
use crate::pattern::PatternGraph;

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub host_map: Vec<usize>,
    /// Colour class the copy lives in; `None` for an uncoloured host.
    pub colour: Option<Colour>,
}

impl Embedding {
    pub fn new(host_map: Vec<usize>, colour: Option<Colour>) -> Self {
        Embedding { host_map, colour }
    }

    pub fn image(&self) -> VertexSet {
        self.host_map.iter().collect()
    }

    /// `v_pattern -> v_host`, one per line.
    pub fn to_lines(&self) -> String {
        self.host_map
            .iter()
            .enumerate()
            .map(|(p, h)| format!("{p} -> {h}\n"))
            .collect()
    }

    /// The same copy with `image(v)` replaced by `u`.
    pub fn substituted(&self, v: usize, u: usize) -> Embedding {
        let mut map = self.host_map.clone();
        map[v] = u;
        Embedding::new(map, self.colour)
    }
}

/// Independent validity check: injective, in range, every pattern edge present.
pub fn is_valid_map(host: &SimpleGraph, pattern: &SimpleGraph, map: &[usize]) -> bool {
    if map.len() != pattern.order() || map.iter().any(|&h| h >= host.order()) {
        return false;
    }
    let mut seen = VertexSet::EMPTY;
    for &h in map {
        if seen.contains(h) {
            return false;
        }
        seen.insert(h);
    }
    pattern.edges().iter().all(|&(a, b)| host.has_edge(map[a], map[b]))
}

/// Validity of a coloured embedding in a colouring (its own colour class).
pub fn is_valid_in(col: &TwoColouring, pattern: &SimpleGraph, e: &Embedding) -> bool {
    match e.colour {
        Some(c) => is_valid_map(col.class(c), pattern, &e.host_map),
        None => false,
    }
}

/// Backtracking search for copies of `pattern` in `host`.
///
/// Each pattern vertex has a candidate set; the search fixes pattern vertices
/// in `order`, intersecting candidate sets with neighbourhoods of images of
/// already placed neighbours, and forward-checks unplaced neighbours. With
/// symmetry breaking on, among host vertices that are interchangeable (same
/// neighbourhood apart from each other and same candidate-set memberships)
/// only the smallest unused one is ever tried; this preserves existence but
/// not the full list of copies.
#[derive(Clone, Debug)]
pub struct Search<'a> {
    host: &'a SimpleGraph,
    pattern: &'a SimpleGraph,
    cands: Vec<VertexSet>,
    order: Vec<usize>,
    symmetry: bool,
}

/// Pattern order: start at a vertex of maximum degree, then repeatedly the
/// vertex with most already placed neighbours, ties by degree then index.
pub fn connectivity_order(pattern: &SimpleGraph, last: VertexSet) -> Vec<usize> {
    let k = pattern.order();
    let mut placed = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(k);
    for phase in [pattern.vertices() - last, last] {
        let mut left = phase;
        while !left.is_empty() {
            let v = left
                .iter()
                .max_by_key(|&v| {
                    (
                        (pattern.neighbours(v) & placed).len(),
                        pattern.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("non-empty");
            order.push(v);
            placed.insert(v);
            left.remove(v);
        }
    }
    order
}

impl<'a> Search<'a> {
    pub fn new(host: &'a SimpleGraph, pattern: &'a SimpleGraph) -> Self {
        let cands = (0..pattern.order())
            .map(|p| {
                let d = pattern.degree(p);
                (0..host.order()).filter(|&v| host.degree(v) >= d).collect()
            })
            .collect();
        Search {
            host,
            pattern,
            cands,
            order: connectivity_order(pattern, VertexSet::EMPTY),
            symmetry: true,
        }
    }

    /// Restricts all images to `set`.
    pub fn within(mut self, set: VertexSet) -> Self {
        for c in &mut self.cands {
            *c &= set;
        }
        self
    }

    /// Restricts the image of pattern vertex `p` to `set`.
    pub fn restrict(mut self, p: usize, set: VertexSet) -> Self {
        self.cands[p] &= set;
        self
    }

    pub fn with_order(mut self, order: Vec<usize>) -> Self {
        assert_eq!(order.len(), self.pattern.order());
        self.order = order;
        self
    }

    pub fn symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn candidates(&self, p: usize) -> VertexSet {
        self.cands[p]
    }

    /// For each host vertex, the smaller vertices interchangeable with it.
    fn lower_twins(&self) -> Vec<VertexSet> {
        let n = self.host.order();
        let mut out = vec![VertexSet::EMPTY; n];
        if !self.symmetry {
            return out;
        }
        let relevant: VertexSet = self.cands.iter().fold(VertexSet::EMPTY, |a, &c| a | c);
        let member: Vec<Vec<bool>> = (0..n)
            .map(|v| self.cands.iter().map(|c| c.contains(v)).collect())
            .collect();
        let verts = relevant.to_vec();
        for (i, &v) in verts.iter().enumerate() {
            for &u in &verts[..i] {
                if member[u] != member[v] {
                    continue;
                }
                let mut a = self.host.neighbours(u);
                let mut b = self.host.neighbours(v);
                a.remove(v);
                b.remove(u);
                if a == b {
                    out[v].insert(u);
                }
            }
        }
        out
    }

    fn domain(&self, p: usize, map: &[usize], placed: VertexSet, used: VertexSet) -> VertexSet {
        let mut d = self.cands[p] - used;
        for q in (self.pattern.neighbours(p) & placed).iter() {
            d &= self.host.neighbours(map[q]);
        }
        d
    }

    fn go<F>(
        &self,
        depth: usize,
        map: &mut Vec<usize>,
        placed: VertexSet,
        used: VertexSet,
        twins: &[VertexSet],
        budget: &Budget,
        f: &mut F,
    ) -> Result<bool>
    where
        F: FnMut(&[usize]) -> bool,
    {
        if depth == self.order.len() {
            return Ok(f(map));
        }
        let p = self.order[depth];
        let dom = self.domain(p, map, placed, used);
        for v in dom.iter() {
            if !twins[v].is_subset(&used) {
                continue;
            }
            budget.charge(1)?;
            map[p] = v;
            let mut placed2 = placed;
            placed2.insert(p);
            let mut used2 = used;
            used2.insert(v);
            // forward check unplaced neighbours
            let dead = (self.pattern.neighbours(p) - placed2)
                .iter()
                .any(|q| self.domain(q, map, placed2, used2).is_empty());
            if dead {
                continue;
            }
            if !self.go(depth + 1, map, placed2, used2, twins, budget, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Calls `f` on each copy found (as a pattern→host map); stops when `f`
    /// returns false. With symmetry breaking on, only representatives are
    /// visited.
    pub fn for_each<F>(&self, budget: &Budget, mut f: F) -> Result<()>
    where
        F: FnMut(&[usize]) -> bool,
    {
        let twins = self.lower_twins();
        let mut map = vec![usize::MAX; self.pattern.order()];
        self.go(0, &mut map, VertexSet::EMPTY, VertexSet::EMPTY, &twins, budget, &mut f)?;
        Ok(())
    }

    /// First copy in search order, or `None` when there is none.
    pub fn first(&self, budget: &Budget) -> Result<Option<Vec<usize>>> {
        let mut out = None;
        self.for_each(budget, |m| {
            out = Some(m.to_vec());
            false
        })?;
        Ok(out)
    }

    /// Like [`Search::first`] but explores the branches of the first pattern
    /// vertex in parallel. The answer is the one the sequential search would
    /// return, whatever the thread count.
    pub fn first_parallel(&self, budget: &Budget) -> Result<Option<Vec<usize>>> {
        if self.order.is_empty() {
            return self.first(budget);
        }
        let twins = self.lower_twins();
        let p = self.order[0];
        let roots: Vec<usize> = self.cands[p]
            .iter()
            .filter(|&v| twins[v].is_empty())
            .collect();
        let results: Vec<Result<Option<Vec<usize>>>> = roots
            .par_iter()
            .map(|&v| {
                let sub = self.clone().restrict(p, VertexSet::singleton(v));
                let mut map = vec![usize::MAX; self.pattern.order()];
                let mut out = None;
                sub.go(0, &mut map, VertexSet::EMPTY, VertexSet::EMPTY, &twins, budget, &mut |m: &[usize]| {
                    out = Some(m.to_vec());
                    false
                })?;
                Ok(out)
            })
            .collect();
        for r in results {
            if let Some(m) = r? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Number of copies (as injective maps), symmetry breaking off.
    pub fn count(self, budget: &Budget) -> Result<u64> {
        let mut c = 0;
        self.symmetry(false).for_each(budget, |_| {
            c += 1;
            true
        })?;
        Ok(c)
    }
}

/// A copy of `H` in colour `colour`, or `None` after a complete search.
pub fn find_mono_copy(
    col: &TwoColouring,
    h: &PatternGraph,
    colour: Colour,
    budget: &Budget,
) -> Result<Option<Embedding>> {
    let found = Search::new(col.class(colour), &h.graph).first(budget)?;
    Ok(found.map(|m| Embedding::new(m, Some(colour))))
}

/// Same as [`find_mono_copy`] restricted to the vertex set `within`.
pub fn find_mono_copy_within(
    col: &TwoColouring,
    h: &PatternGraph,
    colour: Colour,
    within: VertexSet,
    budget: &Budget,
) -> Result<Option<Embedding>> {
    let found = Search::new(col.class(colour), &h.graph).within(within).first(budget)?;
    Ok(found.map(|m| Embedding::new(m, Some(colour))))
}

/// Greedy embedding into a host of order at least `4k` and
/// density at least `1 − 1/(8Δ)`.
///
/// Only vertices missing at most `(n−1)/(4Δ)` edges are used; the density
/// bound leaves at least half the host of this kind, and each placement then
/// has at least `n/4 − k + 1 > 0` options.
pub fn greedy_embed(g: &SimpleGraph, h: &PatternGraph) -> Result<Embedding> {
    let n = g.order();
    let k = h.k;
    if n < 4 * k {
        return Err(Error::HypothesisFails(format!("host order {n} < 4k = {}", 4 * k)));
    }
    let delta = h.max_degree;
    if delta > 0 {
        let dens = g.density();
        let need = num_rational::Ratio::new(8 * delta as u64 - 1, 8 * delta as u64);
        if dens < need {
            return Err(Error::HypothesisFails(format!("density {dens} < {need}")));
        }
    }
    let good: VertexSet = if delta == 0 {
        g.vertices()
    } else {
        (0..n)
            .filter(|&v| 4 * delta * (n - 1 - g.degree(v)) < n)
            .collect()
    };
    let order = connectivity_order(&h.graph, VertexSet::EMPTY);
    let mut map = vec![usize::MAX; k];
    let mut placed = VertexSet::EMPTY;
    let mut used = VertexSet::EMPTY;
    for &p in &order {
        let mut dom = good - used;
        for q in (h.graph.neighbours(p) & placed).iter() {
            dom &= g.neighbours(map[q]);
        }
        let v = dom.first().ok_or(Error::InternalExhaustion { vertex: p })?;
        map[p] = v;
        placed.insert(p);
        used.insert(v);
    }
    debug_assert!(is_valid_map(g, &h.graph, &map));
    Ok(Embedding::new(map, None))
}

/// Embedding with alias sets for the images of an independent set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasedEmbedding {
    pub base: Embedding,
    /// `(i, aliases of image(i))` for each `i` in the independent set.
    pub aliases: Vec<(usize, VertexSet)>,
}

/// All host vertices outside the copy that can replace `image(v)`.
pub fn alias_set(host: &SimpleGraph, pattern: &SimpleGraph, map: &[usize], v: usize) -> VertexSet {
    let image: VertexSet = map.iter().collect();
    let mut out = host.vertices() - image;
    for w in pattern.neighbours(v).iter() {
        out &= host.neighbours(map[w]);
    }
    out
}

fn rat(x: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Checks `γ^{Δ−r}|V_i| − 2rε|G| ≥ k` for all `r ≤ Δ` and all `i`.
pub fn candidate_precondition(
    n: usize,
    h: &PatternGraph,
    targets: &[VertexSet],
    gamma: Rational64,
    eps: Rational64,
) -> std::result::Result<(), String> {
    let g = rat(gamma);
    let e = rat(eps);
    let k = BigRational::from(BigInt::from(h.k));
    let nn = BigRational::from(BigInt::from(n));
    for r in 0..=h.max_degree {
        let factor: BigRational = Pow::pow(&g, (h.max_degree - r) as u32);
        for (i, t) in targets.iter().enumerate() {
            let lhs = &factor * BigRational::from(BigInt::from(t.len()))
                - BigRational::from(BigInt::from(2 * r)) * &e * &nn;
            if lhs < k {
                return Err(format!("r={r}, i={i}: {lhs} < {k}"));
            }
        }
    }
    Ok(())
}

/// Candidate-set embedding of `H` into `G` with image of `i` in `targets[i]`,
/// the independent set `ind` placed last, returning for each `i` in `ind` the
/// exact set of aliases of its image inside `targets[i]`.
///
/// Each vertex goes to the lowest-index unused candidate that keeps at least a
/// `γ` fraction of every unplaced neighbour's candidate set.
pub fn candidate_embed(
    g: &SimpleGraph,
    h: &PatternGraph,
    targets: &[VertexSet],
    ind: VertexSet,
    gamma: Rational64,
    eps: Rational64,
) -> Result<AliasedEmbedding> {
    let k = h.k;
    if targets.len() != k {
        return Err(Error::Precondition(format!("need {k} target sets, got {}", targets.len())));
    }
    if !h.graph.is_independent(ind) || !ind.is_subset(&h.graph.vertices()) {
        return Err(Error::Precondition(format!("{ind} is not independent in H")));
    }
    candidate_precondition(g.order(), h, targets, gamma, eps).map_err(Error::HypothesisFails)?;
    let two_gamma = (gamma * Rational64::from_integer(2)).min(Rational64::one());
    let verdict = is_bi_dense(g, eps, two_gamma, DensityMode::Exact)?;
    if !verdict.holds {
        return Err(Error::HypothesisFails(format!("host is not bi-({eps},{two_gamma})-dense")));
    }
    embed_with_candidates(g, h, targets, ind, gamma)
}

/// The embedding procedure of [`candidate_embed`] without the hypothesis checks.
pub fn embed_with_candidates(
    g: &SimpleGraph,
    h: &PatternGraph,
    targets: &[VertexSet],
    ind: VertexSet,
    gamma: Rational64,
) -> Result<AliasedEmbedding> {
    let k = h.k;
    let order = connectivity_order(&h.graph, ind);
    let mut cand: Vec<VertexSet> = targets.to_vec();
    let mut map = vec![usize::MAX; k];
    let mut placed = VertexSet::EMPTY;
    let mut used = VertexSet::EMPTY;
    let (gn, gd) = (*gamma.numer(), *gamma.denom());
    for &i in &order {
        let open: Vec<usize> = (h.graph.neighbours(i) - placed).iter().collect();
        let choice = (cand[i] - used).iter().find(|&v| {
            open.iter().all(|&j| {
                let hit = (g.neighbours(v) & cand[j]).len() as i64;
                hit * gd >= gn * cand[j].len() as i64
            })
        });
        let v = choice.ok_or(Error::InternalExhaustion { vertex: i })?;
        map[i] = v;
        placed.insert(i);
        used.insert(v);
        for &j in &open {
            cand[j] &= g.neighbours(v);
        }
    }
    if !is_valid_map(g, &h.graph, &map) {
        return Err(Error::ConstructionFailed("candidate embedding invalid".into()));
    }
    let aliases: Vec<(usize, VertexSet)> = ind
        .iter()
        .map(|i| (i, alias_set(g, &h.graph, &map, i) & targets[i]))
        .collect();
    for (i, set) in &aliases {
        for u in set.iter() {
            let mut m = map.clone();
            m[*i] = u;
            if !is_valid_map(g, &h.graph, &m) {
                return Err(Error::ConstructionFailed(format!("alias {u} of {i} fails substitution")));
            }
        }
    }
    Ok(AliasedEmbedding {
        base: Embedding::new(map, None),
        aliases,
    })
}
