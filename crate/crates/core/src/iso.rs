//! Canonical forms for small graphs and isomorphism-deduplicated families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::SimpleGraph;
use crate::pattern::maximal_independent_sets;

/// Refines an ordered partition until it is equitable. Cells are split by
/// neighbour counts into every cell; the new cell order depends only on those
/// counts, so the result is isomorphism-invariant.
fn refine(g: &SimpleGraph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<VertexSet> = cells.iter().map(|c| c.iter().collect()).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let sig = masks.iter().map(|m| (g.neighbours(v) & *m).len()).collect();
                groups.entry(sig).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Upper-triangle adjacency bits of `g` under the vertex order `order`.
fn certificate(g: &SimpleGraph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut bits = vec![0u64; (n * n).div_ceil(64).max(1)];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bits[idx / 64] |= 1 << (idx % 64);
            }
            idx += 1;
        }
    }
    bits
}

fn search(g: &SimpleGraph, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = certificate(g, &order);
        // maximise so that dense structure sorts first; any fixed rule works
        if best.as_ref().is_none_or(|(b, _)| cert > *b) {
            *best = Some((cert, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // twins (same neighbourhood apart from each other) give equivalent branches
        let twin = tried.iter().any(|&u| {
            let mut a = g.neighbours(u);
            let mut b = g.neighbours(v);
            a.remove(v);
            b.remove(u);
            a == b
        });
        if twin {
            continue;
        }
        tried.push(v);
        let mut split = cells[..target].to_vec();
        split.push(vec![v]);
        split.push(cell.iter().copied().filter(|&u| u != v).collect());
        split.extend_from_slice(&cells[target + 1..]);
        search(g, split, best);
    }
}

/// Canonical vertex order of a graph (refinement + individualisation).
pub fn canonical_order(g: &SimpleGraph) -> Vec<usize> {
    if g.order() == 0 {
        return Vec::new();
    }
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..g.order() {
        by_degree.entry(g.degree(v)).or_default().push(v);
    }
    let mut best = None;
    search(g, by_degree.into_values().collect(), &mut best);
    best.expect("search reaches a leaf").1
}

/// Canonical relabelling: isomorphic graphs map to identical graphs.
///
/// Components are canonised separately and placed in sorted order, which
/// keeps the search small for graphs with many isomorphic components.
pub fn canonical_graph(g: &SimpleGraph) -> SimpleGraph {
    let mut parts: Vec<SimpleGraph> = g
        .components()
        .into_iter()
        .map(|c| {
            let (sub, _) = g.induced(c);
            let order = canonical_order(&sub);
            let mut perm = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                perm[old] = new;
            }
            sub.permuted(&perm)
        })
        .collect();
    parts.sort_by_key(|p| (std::cmp::Reverse(p.order()), p.edges()));
    parts
        .iter()
        .fold(SimpleGraph::empty(0), |acc, p| acc.disjoint_union(p))
}

/// Compact string key of the canonical graph.
pub fn canonical_key(g: &SimpleGraph) -> String {
    let c = canonical_graph(g);
    let mut key = format!("{}:", c.order());
    for (i, (u, v)) in c.edges().into_iter().enumerate() {
        if i > 0 {
            key.push(',');
        }
        key.push_str(&format!("{u}-{v}"));
    }
    key
}

pub fn is_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_graph(a) == canonical_graph(b)
}

/// A set of graphs with no two members isomorphic, stored canonically and
/// sorted by key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFamily {
    members: Vec<SimpleGraph>,
}

impl GraphFamily {
    pub fn empty() -> Self {
        GraphFamily { members: Vec::new() }
    }

    pub fn new<I: IntoIterator<Item = SimpleGraph>>(graphs: I) -> Self {
        let mut by_key: BTreeMap<String, SimpleGraph> = BTreeMap::new();
        for g in graphs {
            let c = canonical_graph(&g);
            by_key.entry(canonical_key(&c)).or_insert(c);
        }
        GraphFamily {
            members: by_key.into_values().collect(),
        }
    }

    pub fn singleton(g: SimpleGraph) -> Self {
        Self::new([g])
    }

    pub fn members(&self) -> &[SimpleGraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &SimpleGraph) -> bool {
        self.members.iter().any(|m| is_isomorphic(m, g))
    }

    /// Every member of `self` is isomorphic to a member of `other`.
    pub fn is_subfamily_of(&self, other: &GraphFamily) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    pub fn keys(&self) -> Vec<String> {
        self.members.iter().map(canonical_key).collect()
    }
}

/// Families obtained from `g` by deleting independent sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedFamilies {
    /// `G − S` over maximal independent sets `S`.
    pub d: GraphFamily,
    /// `G − S` over maximum independent sets `S`.
    pub d_prime: GraphFamily,
    /// Connected components of members of `d`.
    pub d_c: GraphFamily,
    /// Connected components of members of `d_prime`.
    pub d_c_prime: GraphFamily,
}

fn component_family(f: &GraphFamily) -> GraphFamily {
    GraphFamily::new(f.members().iter().flat_map(|m| {
        m.components()
            .into_iter()
            .map(|c| m.induced(c).0)
            .collect::<Vec<_>>()
    }))
}

pub fn derived_families(g: &SimpleGraph) -> DerivedFamilies {
    assert!(g.order() > 0, "derived families need a non-empty graph");
    let maximal = maximal_independent_sets(g);
    let alpha = maximal.iter().map(|s| s.len()).max().unwrap_or(0);
    let d = GraphFamily::new(maximal.iter().map(|&s| g.remove_vertices(s)));
    let d_prime = GraphFamily::new(
        maximal
            .iter()
            .filter(|s| s.len() == alpha)
            .map(|&s| g.remove_vertices(s)),
    );
    let d_c = component_family(&d);
    let d_c_prime = component_family(&d_prime);
    DerivedFamilies {
        d,
        d_prime,
        d_c,
        d_c_prime,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> SimpleGraph {
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

    fn brute_iso(a: &SimpleGraph, b: &SimpleGraph) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        a.order() == b.order() && perms(a.order()).iter().any(|p| &a.permuted(p) == b)
    }

    #[test]
    fn relabelling_preserves_key() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..14);
            let g = random_graph(n, rng.gen_range(0.1..0.9), &mut rng);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_key(&g), canonical_key(&g.permuted(&perm)));
        }
        let p = SimpleGraph::petersen();
        assert_eq!(canonical_key(&p), canonical_key(&p.permuted(&[3, 1, 4, 0, 5, 9, 2, 6, 8, 7])));
    }

    #[test]
    fn matches_permutation_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..7);
            let a = random_graph(n, 0.5, &mut rng);
            let b = random_graph(n, 0.5, &mut rng);
            assert_eq!(is_isomorphic(&a, &b), brute_iso(&a, &b), "{a:?} {b:?}");
        }
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        let k = SimpleGraph::complete(20);
        assert_eq!(canonical_graph(&k), k);
        let c = SimpleGraph::cycle(20);
        assert!(is_isomorphic(&c, &c.permuted(&(0..20).rev().collect::<Vec<_>>())));
        let m = SimpleGraph::complete(2).times(10);
        assert_eq!(GraphFamily::new([m.clone(), m]).len(), 1);
    }

    #[test]
    fn derived_family_examples() {
        let k3 = derived_families(&SimpleGraph::complete(3));
        assert_eq!(k3.d, GraphFamily::singleton(SimpleGraph::complete(2)));
        assert_eq!(k3.d_prime, k3.d);
        assert_eq!(k3.d_c, k3.d);

        let p3 = derived_families(&SimpleGraph::path(3));
        let expect = GraphFamily::new([SimpleGraph::empty(2), SimpleGraph::empty(1)]);
        assert_eq!(p3.d, expect);
        assert_eq!(p3.d_prime, GraphFamily::singleton(SimpleGraph::empty(1)));

        let c4 = derived_families(&SimpleGraph::cycle(4));
        assert_eq!(c4.d_prime, GraphFamily::singleton(SimpleGraph::empty(2)));
        assert_eq!(c4.d_c_prime, GraphFamily::singleton(SimpleGraph::empty(1)));
    }

    #[test]
    fn derived_family_orders_and_inclusion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..10);
            let g = random_graph(n, 0.4, &mut rng);
            let fam = derived_families(&g);
            let sizes: Vec<usize> = maximal_independent_sets(&g).iter().map(|s| n - s.len()).collect();
            assert!(fam.d.members().iter().all(|m| sizes.contains(&m.order())));
            assert!(fam.d_prime.is_subfamily_of(&fam.d));
            assert!(fam.d_c_prime.is_subfamily_of(&fam.d_c));
        }
    }
}
