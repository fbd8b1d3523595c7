use crate::bitset::VertexSet;
use crate::graph::SimpleGraph;

/// Small triangle absorber with radius 2 for an independent reservoir.
///
/// Vertices `0..6` form `U`. For each `u_i` there is a triangle
/// `s_i p_i q_i` with `u_i` joined to `p_i, q_i`; the `s_i` form a clique
/// and an extra vertex `c` is joined to every `s_i`. Returns `(graph, A, U)`
/// with `|A| = 19`.
pub fn toy_triangle_absorber() -> (SimpleGraph, VertexSet, VertexSet) {
    let m = 6;
    let n = m + 3 * m + 1;
    let c = n - 1;
    let s = |i: usize| m + 3 * i;
    let mut g = SimpleGraph::empty(n);
    for i in 0..m {
        let (si, p, q) = (s(i), s(i) + 1, s(i) + 2);
        g.add_edge(si, p);
        g.add_edge(si, q);
        g.add_edge(p, q);
        g.add_edge(i, p);
        g.add_edge(i, q);
        g.add_edge(c, si);
        for j in i + 1..m {
            g.add_edge(si, s(j));
        }
    }
    (g, VertexSet::range(m, n), VertexSet::range(0, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorb::{verify_absorber, AbsorberVerdict};
    use crate::budget::Budget;
    use crate::pattern::PatternGraph;

    #[test]
    fn certified_over_22_subsets() {
        let (g, a, u) = toy_triangle_absorber();
        let h = PatternGraph::complete(3);
        let v = verify_absorber(&g, a, u, 2, &h, &Budget::default()).unwrap();
        assert_eq!(v.certificate().unwrap().subsets_checked, 22);
    }

    #[test]
    fn single_edge_mutation_caught() {
        let (mut g, a, u) = toy_triangle_absorber();
        g.remove_edge(24, 6);
        let h = PatternGraph::complete(3);
        match verify_absorber(&g, a, u, 2, &h, &Budget::default()).unwrap() {
            AbsorberVerdict::Failed { subset, .. } => {
                assert_eq!(subset.len(), 2);
                assert!(subset.contains(0));
            }
            AbsorberVerdict::Certified(_) => panic!("mutation not detected"),
        }
    }

    #[test]
    fn monotone_in_radius() {
        let (g, a, u) = toy_triangle_absorber();
        let h = PatternGraph::complete(3);
        for r in 0..=2 {
            assert!(verify_absorber(&g, a, u, r, &h, &Budget::default()).unwrap().is_certified());
        }
    }
}
