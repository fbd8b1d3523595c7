//! Maximum bipartite matching (augmenting paths over bitset adjacency).

use crate::bitset::VertexSet;

/// Maximum matching between left vertices `0..adj.len()` and right vertices
/// named by the bits of `adj[i]`. Returns the partner of each left vertex.
///
/// Left vertices are processed in order and augmenting paths explore right
/// vertices in ascending order, so the result is deterministic.
pub fn max_matching(adj: &[VertexSet]) -> Vec<Option<usize>> {
    let right_len = adj
        .iter()
        .filter_map(|s| s.last())
        .max()
        .map_or(0, |m| m + 1);
    let mut owner: Vec<Option<usize>> = vec![None; right_len];
    let mut partner: Vec<Option<usize>> = vec![None; adj.len()];

    fn augment(
        u: usize,
        adj: &[VertexSet],
        owner: &mut [Option<usize>],
        partner: &mut [Option<usize>],
        seen: &mut VertexSet,
    ) -> bool {
        for r in (adj[u] - *seen).iter() {
            seen.insert(r);
            let free = match owner[r] {
                None => true,
                Some(w) => augment(w, adj, owner, partner, seen),
            };
            if free {
                owner[r] = Some(u);
                partner[u] = Some(r);
                return true;
            }
        }
        false
    }

    for u in 0..adj.len() {
        let mut seen = VertexSet::EMPTY;
        augment(u, adj, &mut owner, &mut partner, &mut seen);
    }
    partner
}

pub fn matching_size(adj: &[VertexSet]) -> usize {
    max_matching(adj).iter().filter(|p| p.is_some()).count()
}

/// A matching saturating every left vertex, if one exists.
pub fn saturating_matching(adj: &[VertexSet]) -> Option<Vec<usize>> {
    max_matching(adj).into_iter().collect()
}
