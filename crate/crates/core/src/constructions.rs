//! Explicit colourings and pattern graphs.

pub use crate::ramsey::{bounds_sandwich, Sandwich};
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};
use crate::pattern::{independence_number, PatternGraph};

/// Vertex classes of a structured colouring, numbered `R`, then `B`, then `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub r: VertexSet,
    pub b: VertexSet,
    pub e: VertexSet,
}

impl Partition {
    pub fn blocks(r: usize, b: usize, e: usize) -> Partition {
        Partition {
            r: VertexSet::range(0, r),
            b: VertexSet::range(r, r + b),
            e: VertexSet::range(r + b, r + b + e),
        }
    }

    pub fn all(&self) -> VertexSet {
        self.r | self.b | self.e
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    LowerBound,
    Prop1,
    HkPattern,
}

/// Parameters and derived block sizes of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub k: usize,
    pub alpha: usize,
    pub n: Option<usize>,
    pub ell: Option<usize>,
    pub r_size: usize,
    pub b_size: usize,
    pub e_size: usize,
}

impl ConstructionSpec {
    pub fn total(&self) -> usize {
        self.r_size + self.b_size + self.e_size
    }
}

/// Red clique `R` of order `(k−α)n − 1`, blue clique `B` of order `kn − 1`,
/// all `[R, B]` edges red.
pub fn lower_bound_colouring(h: &PatternGraph, n: usize) -> Result<(TwoColouring, Partition, ConstructionSpec)> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if !h.graph.is_isolated_free() {
        return Err(Error::Precondition("pattern has an isolated vertex".into()));
    }
    let (k, alpha) = (h.k, h.alpha);
    let r = (k - alpha) * n - 1;
    let b = k * n - 1;
    let total = r + b;
    if total > crate::bitset::MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "lower-bound colouring",
            got: total,
            limit: crate::bitset::MAX_VERTICES,
        });
    }
    let part = Partition::blocks(r, b, 0);
    let mut col = TwoColouring::monochromatic(total, Colour::Red);
    col.set_within(part.b, Colour::Blue);
    let spec = ConstructionSpec {
        kind: ConstructionKind::LowerBound,
        k,
        alpha,
        n: Some(n),
        ell: None,
        r_size: r,
        b_size: b,
        e_size: 0,
    };
    debug_assert_eq!(total, (2 * k - alpha) * n - 2);
    Ok((col, part, spec))
}

/// Square of the cycle on `3ℓ + 4` vertices with the edges inside the
/// neighbourhood of vertex 0 removed. Recomputed `Δ` and `α` must be 4 and `ℓ + 3`.
pub fn build_hk(ell: usize) -> Result<PatternGraph> {
    if ell < 4 {
        return Err(Error::Precondition(format!("ell = {ell} < 4")));
    }
    let k = 3 * ell + 4;
    let mut g = SimpleGraph::cycle(k).square();
    let nb = g.neighbours(0).to_vec();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            g.remove_edge(a, b);
        }
    }
    let p = PatternGraph::new(g)?;
    if p.max_degree != 4 {
        return Err(Error::ParameterMismatch(format!("max degree {} != 4", p.max_degree)));
    }
    if p.alpha != ell + 3 {
        return Err(Error::ParameterMismatch(format!("alpha {} != {}", p.alpha, ell + 3)));
    }
    Ok(p)
}

/// Red clique `R` of order `(k−α−2)n − 1`, blue clique `B` of order `kn − 1`
/// and blue clique `E` of order `ℓ`, with `[E,R]` blue, `[E,B]` and `[R,B]` red,
/// for the pattern `H_k`, `k = 3ℓ + 4`.
pub fn prop1_colouring(ell: usize, n: usize) -> Result<(TwoColouring, Partition, ConstructionSpec)> {
    if ell < 4 {
        return Err(Error::Precondition(format!("ell = {ell} < 4")));
    }
    if n == 0 || 2 * (n + 1) > ell {
        return Err(Error::Precondition(format!("need 1 <= n <= ell/2 - 1, got n = {n}, ell = {ell}")));
    }
    let k = 3 * ell + 4;
    let alpha = ell + 3;
    let r = (k - alpha - 2) * n - 1;
    let b = k * n - 1;
    let total = r + b + ell;
    if total > crate::bitset::MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "prop1 colouring",
            got: total,
            limit: crate::bitset::MAX_VERTICES,
        });
    }
    assert!(total + 1 >= (2 * k - alpha) * n);
    let part = Partition::blocks(r, b, ell);
    let mut col = TwoColouring::monochromatic(total, Colour::Red);
    col.set_within(part.b, Colour::Blue);
    col.set_within(part.e, Colour::Blue);
    col.set_between(part.e, part.r, Colour::Blue);
    let spec = ConstructionSpec {
        kind: ConstructionKind::Prop1,
        k,
        alpha,
        n: Some(n),
        ell: Some(ell),
        r_size: r,
        b_size: b,
        e_size: ell,
    };
    Ok((col, part, spec))
}

/// Largest number of vertices of a red copy of `h` that can avoid `R` in a
/// prop1 colouring: an independent set `I` sent to `B` plus the vertices whose
/// whole neighbourhood lies in `I` (at most `e_cap` of them) sent to `E`.
pub fn max_red_outside_r(h: &PatternGraph, e_cap: usize) -> usize {
    fn go(h: &PatternGraph, next: usize, i: VertexSet, e_cap: usize, best: &mut usize) {
        if next == h.k {
            let hanging = (0..h.k)
                .filter(|&v| !i.contains(v) && h.graph.neighbours(v).is_subset(&i))
                .count();
            *best = (*best).max(i.len() + hanging.min(e_cap));
            return;
        }
        go(h, next + 1, i, e_cap, best);
        if h.graph.neighbours(next).is_disjoint(&i) {
            let mut with = i;
            with.insert(next);
            go(h, next + 1, with, e_cap, best);
        }
    }
    let mut best = 0;
    go(h, 0, VertexSet::EMPTY, e_cap, &mut best);
    best
}

/// Outcome of the component-counting argument for a prop1 colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralVerdict {
    /// Colour pattern of the blocks is as constructed.
    pub layout_ok: bool,
    /// Most disjoint blue copies the blue components allow.
    pub blue_capacity: usize,
    /// Most disjoint red copies the `R`-intersection bound allows.
    pub red_capacity: usize,
    /// Largest red copy part outside `R`.
    pub red_outside_r: usize,
    /// Neither capacity reaches `n`.
    pub no_mono_n_copies: bool,
}

/// Structural bound on monochromatic packings in a prop1 colouring.
///
/// Blue: `B` is a blue component and `E ∪ R` is the other one. Inside `E ∪ R`
/// the part in `R` is blue-independent, so a connected copy needs at least
/// `k − α` vertices of `E`; with `|E| < k − α` all blue copies sit in `B`.
/// Red: a copy meets `R` in at least `k − max_red_outside_r` vertices.
pub fn prop1_structural_check(col: &TwoColouring, part: &Partition, h: &PatternGraph, n: usize) -> StructuralVerdict {
    let mono_within = |s: VertexSet, c: Colour| {
        s.iter().all(|v| {
            let mut rest = s;
            rest.remove(v);
            rest.is_subset(&col.class(c).neighbours(v))
        })
    };
    let cross = |x: VertexSet, y: VertexSet, c: Colour| x.iter().all(|v| y.is_subset(&col.class(c).neighbours(v)));
    let layout_ok = part.all() == col.vertices()
        && mono_within(part.r, Colour::Red)
        && mono_within(part.b, Colour::Blue)
        && mono_within(part.e, Colour::Blue)
        && cross(part.e, part.r, Colour::Blue)
        && cross(part.e, part.b, Colour::Red)
        && cross(part.r, part.b, Colour::Red);
    let k = h.k;
    let connected = h.graph.is_connected();
    let blue_capacity = if connected && part.e.len() < k - h.alpha {
        part.b.len() / k
    } else {
        usize::MAX
    };
    let outside = max_red_outside_r(h, part.e.len());
    let red_capacity = if outside >= k { usize::MAX } else { part.r.len() / (k - outside) };
    StructuralVerdict {
        layout_ok,
        blue_capacity,
        red_capacity,
        red_outside_r: outside,
        no_mono_n_copies: layout_ok && blue_capacity < n && red_capacity < n,
    }
}

/// Independence number recomputed from scratch (used to cross-check `H_k`).
pub fn recompute_alpha(h: &PatternGraph) -> Result<usize> {
    Ok(independence_number(&h.graph)?.0)
}
