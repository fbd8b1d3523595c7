//! H-tilings, perfect tilings and disjoint monochromatic packings.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::embed::{is_valid_map, Embedding, Search};
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};
use crate::pattern::PatternGraph;

/// Vertex-disjoint copies plus the uncovered part of the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub copies: Vec<Embedding>,
    pub leftover: VertexSet,
}

impl Tiling {
    pub fn covered(&self) -> VertexSet {
        self.copies.iter().fold(VertexSet::EMPTY, |a, c| a | c.image())
    }
}

/// Checks copies are valid in `host`, pairwise disjoint, inside `target`, and
/// that `leftover` is exactly the rest of `target`, of size at most
/// `max_leftover`.
pub fn check_tiling(host: &SimpleGraph, h: &SimpleGraph, target: VertexSet, t: &Tiling, max_leftover: usize) -> bool {
    let mut covered = VertexSet::EMPTY;
    for c in &t.copies {
        if !is_valid_map(host, h, &c.host_map) {
            return false;
        }
        let img = c.image();
        if !img.is_disjoint(&covered) || !img.is_subset(&target) {
            return false;
        }
        covered |= img;
    }
    t.leftover == target - covered && t.leftover.len() <= max_leftover
}

/// For each vertex of `within`, the smaller vertices of `within` with the same
/// neighbourhood inside `within` (apart from each other).
fn twin_classes(host: &SimpleGraph, within: VertexSet) -> Vec<VertexSet> {
    let verts = within.to_vec();
    let mut out = vec![VertexSet::EMPTY; host.order()];
    for (i, &v) in verts.iter().enumerate() {
        let mut nv = host.neighbours(v) & within;
        nv.remove(v);
        for &u in &verts[..i] {
            let mut nu = host.neighbours(u) & within;
            nu.remove(u);
            let (mut a, mut b) = (nu, nv);
            a.remove(v);
            b.remove(u);
            if a == b {
                out[v].insert(u);
            }
        }
    }
    out
}

/// Exact packing search: `copies` disjoint copies of `h` inside `target`.
struct Packer<'a> {
    host: SimpleGraph,
    h: &'a SimpleGraph,
    k: usize,
    twins: Vec<VertexSet>,
    budget: &'a Budget,
    failed: HashSet<(VertexSet, usize)>,
}

const MEMO_LIMIT: usize = 1 << 21;

impl<'a> Packer<'a> {
    fn new(host: &SimpleGraph, h: &'a SimpleGraph, target: VertexSet, budget: &'a Budget) -> Self {
        let host = host.restricted(target);
        let twins = twin_classes(&host, target);
        Packer {
            host,
            h,
            k: h.order(),
            twins,
            budget,
            failed: HashSet::new(),
        }
    }

    /// Distinct vertex sets of copies containing `p` inside `free`, each with
    /// one map, in deterministic order.
    fn copies_through(&self, p: usize, free: VertexSet) -> Result<Vec<Vec<usize>>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for a in 0..self.k {
            if self.host.degree(p) < self.h.degree(a) {
                continue;
            }
            let s = Search::new(&self.host, self.h)
                .within(free)
                .restrict(a, VertexSet::singleton(p));
            s.for_each(self.budget, |m| {
                let set: VertexSet = m.iter().collect();
                if seen.insert(set) {
                    out.push(m.to_vec());
                }
                true
            })?;
        }
        Ok(out)
    }

    /// Lowest uncovered vertex is covered by a copy or skipped (together with
    /// its uncovered twins) while skips remain.
    fn solve(&mut self, free: VertexSet, need: usize, skips: usize, out: &mut Vec<Vec<usize>>) -> Result<bool> {
        if need == 0 {
            return Ok(true);
        }
        if free.len() < need * self.k {
            return Ok(false);
        }
        if self.failed.contains(&(free, skips)) {
            return Ok(false);
        }
        self.budget.charge(1)?;
        let p = free.first().expect("free is non-empty");
        for m in self.copies_through(p, free)? {
            let img: VertexSet = m.iter().collect();
            if self.solve(free - img, need - 1, skips, out)? {
                out.push(m);
                return Ok(true);
            }
        }
        let mut class = self.twins_of(p) & free;
        class.insert(p);
        if class.len() <= skips && self.solve(free - class, need, skips - class.len(), out)? {
            return Ok(true);
        }
        if self.failed.len() < MEMO_LIMIT {
            self.failed.insert((free, skips));
        }
        Ok(false)
    }

    /// `p` together with all vertices it is a lower twin of.
    fn twins_of(&self, p: usize) -> VertexSet {
        let mut cls = self.twins[p];
        for (v, lower) in self.twins.iter().enumerate() {
            if lower.contains(p) {
                cls.insert(v);
            }
        }
        cls
    }
}

/// Searches for `need` disjoint copies of `h` in `host[target]`, leaving at
/// most `skips` vertices of `target` uncovered. Top-level branches run in
/// parallel when `parallel` is set; the result does not depend on it.
pub fn pack(
    host: &SimpleGraph,
    h: &SimpleGraph,
    target: VertexSet,
    need: usize,
    skips: usize,
    budget: &Budget,
    parallel: bool,
) -> Result<Option<Vec<Vec<usize>>>> {
    if need == 0 {
        return Ok(Some(Vec::new()));
    }
    if target.len() < need * h.order() {
        return Ok(None);
    }
    if need == 1 {
        let restricted = host.restricted(target);
        let s = Search::new(&restricted, h).within(target);
        let found = if parallel { s.first_parallel(budget)? } else { s.first(budget)? };
        return Ok(found.map(|m| vec![m]));
    }
    let root = Packer::new(host, h, target, budget);
    let mut found = None;
    if parallel {
        let p = target.first().expect("non-empty");
        let branches = root.copies_through(p, target)?;
        let hit = branches
            .par_iter()
            .map(|m| -> Result<Option<Vec<Vec<usize>>>> {
                let mut sub = Packer::new(host, h, target, budget);
                let img: VertexSet = m.iter().collect();
                let mut out = Vec::new();
                if sub.solve(target - img, need - 1, skips, &mut out)? {
                    out.push(m.clone());
                    return Ok(Some(out));
                }
                Ok(None)
            })
            .collect::<Vec<_>>();
        for r in hit {
            if let Some(v) = r? {
                found = Some(v);
                break;
            }
        }
        if found.is_none() {
            // remaining option: skip the pivot's twin class
            let mut sub = Packer::new(host, h, target, budget);
            let mut class = sub.twins_of(p) & target;
            class.insert(p);
            let mut out = Vec::new();
            if class.len() <= skips && sub.solve(target - class, need, skips - class.len(), &mut out)? {
                found = Some(out);
            }
        }
    } else {
        let mut root = root;
        let mut out = Vec::new();
        if root.solve(target, need, skips, &mut out)? {
            found = Some(out);
        }
    }
    Ok(found.map(|mut v| {
        v.reverse();
        v
    }))
}

fn to_tiling(maps: Vec<Vec<usize>>, target: VertexSet, colour: Option<Colour>) -> Tiling {
    let copies: Vec<Embedding> = maps.into_iter().map(|m| Embedding::new(m, colour)).collect();
    let covered = copies.iter().fold(VertexSet::EMPTY, |a, c| a | c.image());
    Tiling {
        copies,
        leftover: target - covered,
    }
}

/// An H-tiling of `host[target]` (perfect: no leftover; otherwise at most
/// `|target| mod k` leftover vertices), or `None` when none exists.
pub fn find_tiling(
    host: &SimpleGraph,
    h: &PatternGraph,
    target: VertexSet,
    perfect: bool,
    budget: &Budget,
) -> Result<Option<Tiling>> {
    if !target.is_subset(&host.vertices()) {
        return Err(Error::Precondition("target is not inside the host".into()));
    }
    let k = h.k;
    if perfect && !target.len().is_multiple_of(k) {
        return Err(Error::Precondition(format!(
            "perfect tiling needs |target| = {} divisible by {k}",
            target.len()
        )));
    }
    let need = target.len() / k;
    let skips = target.len() % k;
    let found = pack(host, &h.graph, target, need, skips, budget, false)?;
    Ok(found.map(|m| to_tiling(m, target, None)))
}

/// Tiling of a colour class of a colouring.
pub fn find_tiling_in(
    col: &TwoColouring,
    colour: Colour,
    h: &PatternGraph,
    target: VertexSet,
    perfect: bool,
    budget: &Budget,
) -> Result<Option<Tiling>> {
    Ok(find_tiling(col.class(colour), h, target, perfect, budget)?.map(|mut t| {
        for c in &mut t.copies {
            c.colour = Some(colour);
        }
        t
    }))
}

/// `n` pairwise disjoint copies of `h` in the given colour, or `None`.
pub fn find_disjoint_mono(
    col: &TwoColouring,
    h: &PatternGraph,
    n: usize,
    colour: Colour,
    budget: &Budget,
) -> Result<Option<Tiling>> {
    find_disjoint_mono_within(col, h, n, colour, col.vertices(), budget)
}

pub fn find_disjoint_mono_within(
    col: &TwoColouring,
    h: &PatternGraph,
    n: usize,
    colour: Colour,
    within: VertexSet,
    budget: &Budget,
) -> Result<Option<Tiling>> {
    let size = within.len();
    if size < n * h.k {
        return Ok(None);
    }
    let found = pack(col.class(colour), &h.graph, within, n, size - n * h.k, budget, true)?;
    Ok(found.map(|m| to_tiling(m, within, Some(colour))))
}

/// Exact alias set of `image(v)` for a copy in a colouring.
pub fn alias_set_in(col: &TwoColouring, h: &PatternGraph, copy: &Embedding, v: usize) -> VertexSet {
    let colour = copy.colour.expect("coloured copy");
    crate::embed::alias_set(col.class(colour), &h.graph, &copy.host_map, v)
}

pub use crate::embed::alias_set;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Colour::*;
    use rand::{Rng, SeedableRng};

    fn random_graph(n: usize, p: f64, seed: u64) -> SimpleGraph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// All vertex sets of copies, then every combination of `n` of them.
    fn naive_pack(host: &SimpleGraph, h: &SimpleGraph, n: usize) -> bool {
        let mut sets = HashSet::new();
        Search::new(host, h).symmetry(false).for_each(&Budget::default(), |m| {
            sets.insert(m.iter().collect::<VertexSet>());
            true
        }).unwrap();
        let sets: Vec<VertexSet> = sets.into_iter().collect();
        fn go(sets: &[VertexSet], start: usize, used: VertexSet, left: usize) -> bool {
            if left == 0 {
                return true;
            }
            (start..sets.len()).any(|i| sets[i].is_disjoint(&used) && go(sets, i + 1, used | sets[i], left - 1))
        }
        go(&sets, 0, VertexSet::EMPTY, n)
    }

    #[test]
    fn tiling_examples() {
        let b = Budget::default();
        let k6 = SimpleGraph::complete(6);
        let t = find_tiling(&k6, &PatternGraph::complete(3), k6.vertices(), true, &b).unwrap().unwrap();
        assert_eq!(t.copies.len(), 2);
        assert!(check_tiling(&k6, &SimpleGraph::complete(3), k6.vertices(), &t, 0));

        let c6 = SimpleGraph::cycle(6);
        let t = find_tiling(&c6, &PatternGraph::path(3), c6.vertices(), true, &b).unwrap().unwrap();
        assert!(check_tiling(&c6, &SimpleGraph::path(3), c6.vertices(), &t, 0));

        let k7 = SimpleGraph::complete(7);
        assert!(find_tiling(&k7, &PatternGraph::complete(3), k7.vertices(), true, &b).is_err());
        let t = find_tiling(&k7, &PatternGraph::complete(3), k7.vertices(), false, &b).unwrap().unwrap();
        assert_eq!(t.leftover.len(), 1);

        let two_paths = SimpleGraph::path(3).disjoint_union(&SimpleGraph::complete(3));
        assert!(find_tiling(&two_paths, &PatternGraph::complete(3), two_paths.vertices(), true, &b).unwrap().is_none());
    }

    #[test]
    fn packing_examples() {
        let b = Budget::default();
        let k3 = PatternGraph::complete(3);
        let red9 = TwoColouring::monochromatic(9, Red);
        let t = find_disjoint_mono(&red9, &k3, 3, Red, &b).unwrap().unwrap();
        assert!(check_tiling(red9.red(), &k3.graph, red9.vertices(), &t, 0));
        let blue5 = TwoColouring::monochromatic(5, Blue);
        assert!(find_disjoint_mono(&blue5, &k3, 2, Blue, &b).unwrap().is_none());
    }

    #[test]
    fn packing_matches_naive_oracle() {
        let b = Budget::default();
        for seed in 0..150u64 {
            let n = 4 + seed as usize % 9;
            let host = random_graph(n, 0.55, seed);
            let (h, copies) = match seed % 3 {
                0 => (SimpleGraph::complete(3), 2),
                1 => (SimpleGraph::path(3), 1 + (seed as usize % 4)),
                _ => (SimpleGraph::complete(2), 1 + (seed as usize % 6)),
            };
            if copies * h.order() > n {
                continue;
            }
            let fast = pack(&host, &h, host.vertices(), copies, n - copies * h.order(), &b, seed % 2 == 0).unwrap();
            assert_eq!(fast.is_some(), naive_pack(&host, &h, copies), "seed {seed}");
        }
    }

    #[test]
    fn packing_is_monotone() {
        let b = Budget::default();
        let k3 = PatternGraph::complete(3);
        for seed in 0..40u64 {
            let col = TwoColouring::from_red(random_graph(11, 0.5, seed));
            for c in Colour::BOTH {
                let mut prev_none = false;
                for n in 1..=3 {
                    let none = find_disjoint_mono(&col, &k3, n, c, &b).unwrap().is_none();
                    assert!(!prev_none || none);
                    prev_none = none;
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let b = Budget::default();
        for seed in 0..40u64 {
            let host = random_graph(12, 0.6, seed);
            let h = SimpleGraph::complete(3);
            let a = pack(&host, &h, host.vertices(), 3, 3, &b, false).unwrap();
            let c = pack(&host, &h, host.vertices(), 3, 3, &b, true).unwrap();
            assert_eq!(a.is_some(), c.is_some());
            let again = pack(&host, &h, host.vertices(), 3, 3, &b, true).unwrap();
            assert_eq!(c, again);
        }
    }

    #[test]
    fn alias_examples() {
        let k6 = SimpleGraph::complete(6);
        let tri = vec![0, 1, 2];
        assert_eq!(alias_set(&k6, &SimpleGraph::complete(3), &tri, 1).to_vec(), vec![3, 4, 5]);
        let c6 = SimpleGraph::cycle(6);
        let p3 = SimpleGraph::path(3);
        let copy = vec![0, 1, 2];
        for leaf in [0, 2] {
            let brute: Vec<usize> = (3..6)
                .filter(|&u| {
                    let mut m = copy.clone();
                    m[leaf] = u;
                    is_valid_map(&c6, &p3, &m)
                })
                .collect();
            assert_eq!(alias_set(&c6, &p3, &copy, leaf).to_vec(), brute);
        }
    }
}
