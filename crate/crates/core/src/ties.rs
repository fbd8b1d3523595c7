//! H-ties, H-joins, tie search between a red-heavy and a blue-heavy side, and
//! the clique ladder.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bitset::{binomial, for_each_subset, VertexSet};
use crate::budget::Budget;
use crate::embed::{find_mono_copy_within, Embedding, Search};
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};
use crate::ledger::param_ledger;
use crate::pattern::PatternGraph;

/// Most pattern-subset pairs enumerated by the sparsest-pair search.
const PAIR_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tie {
    pub vertices: VertexSet,
    pub red_copy: Embedding,
    pub blue_copy: Embedding,
    /// Vertices in both copies; always `α(H)` of them.
    pub overlap: VertexSet,
    pub red_edges: Vec<(usize, usize)>,
    pub blue_edges: Vec<(usize, usize)>,
}

impl Tie {
    /// Red copy minus the overlap.
    pub fn red_part(&self) -> VertexSet {
        self.red_copy.image() - self.overlap
    }

    pub fn blue_part(&self) -> VertexSet {
        self.blue_copy.image() - self.overlap
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieRejection {
    Size { expected: usize, got: usize },
    MissingRedCopy,
    MissingBlueCopy,
    /// Red and blue copies exist but no pair covers every vertex.
    NoSpanningPair,
    NotMinimal { edge: (usize, usize) },
}

impl std::fmt::Display for TieRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TieRejection::Size { expected, got } => write!(f, "size: expected {expected} vertices, got {got}"),
            TieRejection::MissingRedCopy => write!(f, "missing red copy"),
            TieRejection::MissingBlueCopy => write!(f, "missing blue copy"),
            TieRejection::NoSpanningPair => write!(f, "no red/blue pair spans the set"),
            TieRejection::NotMinimal { edge } => write!(f, "not minimal: edge {}-{} is redundant", edge.0, edge.1),
        }
    }
}

fn copy_edges(h: &SimpleGraph, map: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = h
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (map[a], map[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Distinct vertex sets of copies of `h` in `host[within]`, one map each,
/// in discovery order.
fn distinct_copies(host: &SimpleGraph, h: &SimpleGraph, within: VertexSet, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    Search::new(host, h).within(within).symmetry(false).for_each(budget, |m| {
        let img: VertexSet = m.iter().collect();
        if seen.insert(img) {
            out.push(m.to_vec());
        }
        true
    })?;
    Ok(out)
}

/// True when the coloured graph made of `red` and `blue` edges still has a
/// copy of `h` in `colour` after deleting `edge` from it.
fn survives_deletion(n: usize, edges: &[(usize, usize)], edge: (usize, usize), h: &SimpleGraph, within: VertexSet, budget: &Budget) -> Result<bool> {
    let kept: Vec<(usize, usize)> = edges.iter().copied().filter(|&e| e != edge).collect();
    let g = SimpleGraph::from_edges(n, &kept);
    Ok(Search::new(&g, h).within(within).first(budget)?.is_some())
}

/// Accepts `S` when `|S| = 2k − α` and some red and blue copy of `H` inside
/// `S` together cover `S`. The tie's coloured edges are exactly the edges of
/// the two witness copies; deleting any one of them destroys a copy.
pub fn is_tie(col: &TwoColouring, s: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<std::result::Result<Tie, TieRejection>> {
    let k = h.k;
    let expected = 2 * k - h.alpha;
    if s.len() != expected {
        return Ok(Err(TieRejection::Size { expected, got: s.len() }));
    }
    let reds = distinct_copies(col.red(), &h.graph, s, budget)?;
    if reds.is_empty() {
        return Ok(Err(TieRejection::MissingRedCopy));
    }
    let blues = distinct_copies(col.blue(), &h.graph, s, budget)?;
    if blues.is_empty() {
        return Ok(Err(TieRejection::MissingBlueCopy));
    }
    for r in &reds {
        let ri: VertexSet = r.iter().collect();
        for b in &blues {
            let bi: VertexSet = b.iter().collect();
            if ri | bi != s {
                continue;
            }
            let red_edges = copy_edges(&h.graph, r);
            let blue_edges = copy_edges(&h.graph, b);
            let n = col.order();
            for &e in &red_edges {
                if survives_deletion(n, &red_edges, e, &h.graph, s, budget)? {
                    return Ok(Err(TieRejection::NotMinimal { edge: e }));
                }
            }
            for &e in &blue_edges {
                if survives_deletion(n, &blue_edges, e, &h.graph, s, budget)? {
                    return Ok(Err(TieRejection::NotMinimal { edge: e }));
                }
            }
            return Ok(Ok(Tie {
                vertices: s,
                red_copy: Embedding::new(r.clone(), Some(Colour::Red)),
                blue_copy: Embedding::new(b.clone(), Some(Colour::Blue)),
                overlap: ri & bi,
                red_edges,
                blue_edges,
            }));
        }
    }
    Ok(Err(TieRejection::NoSpanningPair))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieMode {
    Direct,
    Guided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieSource {
    Direct,
    /// Guided case split, sparse colour across `[R, B]`.
    GuidedSparse(Colour),
    /// Guided case split, both colours dense across: red `H − I` joined to a blue `H`.
    GuidedJoin,
    /// Guided mode failed and the direct search answered.
    GuidedFallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundTie {
    pub tie: Tie,
    pub source: TieSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[derive(Default)]
pub struct TieOptions {
    /// Minimum `|R|` and `|B|`; `None` means `4k`.
    pub floor: Option<usize>,
}


fn check_sides(col: &TwoColouring, r: VertexSet, b: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<()> {
    if !r.is_disjoint(&b) {
        return Err(Error::OverlappingSets((r & b).first().expect("non-empty")));
    }
    if !(r | b).is_subset(&col.vertices()) {
        return Err(Error::Precondition("R and B must be vertices of the colouring".into()));
    }
    if let Some(c) = find_mono_copy_within(col, h, Colour::Blue, r, budget)? {
        return Err(Error::Precondition(format!("R contains a blue copy of H at {:?}", c.host_map)));
    }
    if let Some(c) = find_mono_copy_within(col, h, Colour::Red, b, budget)? {
        return Err(Error::Precondition(format!("B contains a red copy of H at {:?}", c.host_map)));
    }
    Ok(())
}

/// An H-tie whose red part lies in `R` and blue part in `B`.
///
/// Direct mode searches two shapes exhaustively: a blue `H` in `B` with a red
/// `H` made of `k − α` vertices of `R` and `α` vertices of the blue copy, and
/// the mirror image (red `H` in `R`, blue `H` through `k − α` vertices of
/// `B`). Guided mode follows the density case split and falls back to the
/// direct search when its steps do not produce a tie.
pub fn find_tie(
    col: &TwoColouring,
    r: VertexSet,
    b: VertexSet,
    h: &PatternGraph,
    mode: TieMode,
    opts: TieOptions,
    budget: &Budget,
) -> Result<FoundTie> {
    let floor = opts.floor.unwrap_or(4 * h.k);
    if r.len() < floor || b.len() < floor {
        return Err(Error::Precondition(format!(
            "|R| = {}, |B| = {} below the floor {floor}",
            r.len(),
            b.len()
        )));
    }
    check_sides(col, r, b, h, budget)?;
    if mode == TieMode::Guided {
        if let Some(found) = guided(col, r, b, h, budget)? {
            return Ok(found);
        }
    }
    let tie = direct(col, r, b, h, budget)?.ok_or(Error::NoneFound)?;
    Ok(FoundTie {
        tie,
        source: if mode == TieMode::Direct { TieSource::Direct } else { TieSource::GuidedFallback },
    })
}

fn validated(col: &TwoColouring, red: &[usize], blue: &[usize], h: &PatternGraph, budget: &Budget) -> Result<Option<Tie>> {
    let s: VertexSet = red.iter().chain(blue).collect();
    match is_tie(col, s, h, budget)? {
        Ok(t) => Ok(Some(t)),
        Err(_) => Ok(None),
    }
}

/// Full copy in colour `full` inside `full_side`; the other copy uses
/// `k − α` vertices of `part_side` and `α` vertices of the full copy.
fn direct_shape(
    col: &TwoColouring,
    full: Colour,
    full_side: VertexSet,
    part_side: VertexSet,
    h: &PatternGraph,
    budget: &Budget,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let k = h.k;
    let alpha = h.alpha;
    let pattern: Vec<usize> = (0..k).collect();
    let mut pattern_subsets = Vec::new();
    for_each_subset(&pattern, alpha, |q| {
        pattern_subsets.push(q.to_vec());
        true
    });
    let part_colour = full.other();
    for fmap in distinct_copies(col.class(full), &h.graph, full_side, budget)? {
        let mut sorted = fmap.clone();
        sorted.sort_unstable();
        let mut overlaps = Vec::new();
        for_each_subset(&sorted, alpha, |o| {
            overlaps.push(o.iter().collect::<VertexSet>());
            true
        });
        for o in overlaps {
            for q in &pattern_subsets {
                let mut s = Search::new(col.class(part_colour), &h.graph)
                    .within(part_side | o)
                    .symmetry(false);
                for p in 0..k {
                    s = if q.contains(&p) { s.restrict(p, o) } else { s.restrict(p, part_side) };
                }
                if let Some(pmap) = s.first(budget)? {
                    return Ok(Some((fmap, pmap)));
                }
            }
        }
    }
    Ok(None)
}

fn direct(col: &TwoColouring, r: VertexSet, b: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<Option<Tie>> {
    if let Some((blue, red)) = direct_shape(col, Colour::Blue, b, r, h, budget)? {
        if let Some(t) = validated(col, &red, &blue, h, budget)? {
            return Ok(Some(t));
        }
    }
    if let Some((red, blue)) = direct_shape(col, Colour::Red, r, b, h, budget)? {
        if let Some(t) = validated(col, &red, &blue, h, budget)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn below(edges: usize, pairs: usize, gamma: Rational64) -> bool {
    Rational64::from_integer(edges as i64) < gamma * Rational64::from_integer(pairs as i64)
}

/// Sparsest pair `X ⊆ R`, `Y ⊆ B` with `|X| = tr`, `|Y| = tb` in `colour`:
/// for fixed `X` the best `Y` takes the `tb` vertices of lowest degree.
fn sparsest_cross_pair(
    g: &SimpleGraph,
    r: VertexSet,
    b: VertexSet,
    tr: usize,
    tb: usize,
    budget: &Budget,
) -> Result<(VertexSet, VertexSet, usize)> {
    let count = binomial(r.len(), tr);
    if count > PAIR_LIMIT {
        return Err(Error::SizeLimit {
            what: "cross-density subsets",
            got: count.min(usize::MAX as u64) as usize,
            limit: PAIR_LIMIT as usize,
        });
    }
    let mut best: Option<(VertexSet, VertexSet, usize)> = None;
    let mut err = None;
    for_each_subset(&r.to_vec(), tr, |xs| {
        if let Err(e) = budget.charge(1) {
            err = Some(e);
            return false;
        }
        let x: VertexSet = xs.iter().collect();
        let mut degs: Vec<(usize, usize)> = b.iter().map(|v| ((g.neighbours(v) & x).len(), v)).collect();
        degs.sort_unstable();
        let e: usize = degs[..tb].iter().map(|d| d.0).sum();
        if best.as_ref().is_none_or(|bst| e < bst.2) {
            best = Some((x, degs[..tb].iter().map(|d| d.1).collect(), e));
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(best.expect("non-empty sides"))
}

fn guided(col: &TwoColouring, r: VertexSet, b: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<Option<FoundTie>> {
    let delta = h.max_degree.max(1);
    let gamma = Rational64::new(1, 32 * delta as i64);
    let paper_eps = param_ledger(delta as u64, h.k as u64)?.tie_epsilon_prime;
    let floor = BigRational::new(BigInt::from(1), BigInt::from(r.len().min(b.len())));
    let eps = if paper_eps > floor { paper_eps } else { floor };
    let side = |n: usize| -> usize {
        let t = (eps.clone() * BigRational::from_integer(BigInt::from(n))).ceil();
        t.to_integer().to_usize().unwrap_or(n).clamp(1, n)
    };
    let (tr, tb) = (side(r.len()), side(b.len()));
    for sparse in Colour::BOTH {
        let g = col.class(sparse);
        let (x, y, e) = sparsest_cross_pair(g, r, b, tr, tb, budget)?;
        if !below(e, tr * tb, gamma * 2) {
            continue;
        }
        // sparse in `sparse`: the full copy of that colour sits on its own
        // side, the other colour's H − I on the opposite side
        let (full_side, part_side, f1, p1) = match sparse {
            Colour::Red => (r, b, x, y),
            Colour::Blue => (b, r, y, x),
        };
        if let Some(tie) = sparse_case(col, sparse, full_side, part_side, f1, p1, gamma, h, budget)? {
            return Ok(Some(FoundTie {
                tie,
                source: TieSource::GuidedSparse(sparse),
            }));
        }
    }
    if let Some(tie) = join_case(col, r, b, h, budget)? {
        return Ok(Some(FoundTie {
            tie,
            source: TieSource::GuidedJoin,
        }));
    }
    Ok(None)
}

/// Grows `(f1, p1)` greedily towards `2k` vertices each while the density
/// in colour `c` stays below `2γ`.
fn enlarge(
    g: &SimpleGraph,
    full_side: VertexSet,
    part_side: VertexSet,
    mut f1: VertexSet,
    mut p1: VertexSet,
    gamma: Rational64,
    k: usize,
) -> (VertexSet, VertexSet) {
    let target_f = full_side.len().min(2 * k);
    let target_p = part_side.len().min(2 * k);
    let (mut grow_f, mut grow_p) = (true, true);
    while (grow_f && f1.len() < target_f) || (grow_p && p1.len() < target_p) {
        if grow_p && p1.len() < target_p {
            let v = (part_side - p1)
                .iter()
                .min_by_key(|&v| ((g.neighbours(v) & f1).len(), v))
                .expect("room left");
            let mut next = p1;
            next.insert(v);
            if below(g.edges_between(f1, next), f1.len() * next.len(), gamma * 2) {
                p1 = next;
            } else {
                grow_p = false;
            }
        } else {
            grow_p = false;
        }
        if grow_f && f1.len() < target_f {
            let v = (full_side - f1)
                .iter()
                .min_by_key(|&v| ((g.neighbours(v) & p1).len(), v))
                .expect("room left");
            let mut next = f1;
            next.insert(v);
            if below(g.edges_between(next, p1), next.len() * p1.len(), gamma * 2) {
                f1 = next;
            } else {
                grow_f = false;
            }
        } else {
            grow_f = false;
        }
    }
    (f1, p1)
}

/// Copy of `H − I` in the part colour among vertices of `p1` with few
/// `sparse`-coloured neighbours in `f1`, then a `sparse`-coloured `H` in the
/// full side whose `I`-vertices lie in the part-coloured common
/// neighbourhoods.
#[allow(clippy::too_many_arguments)]
fn sparse_case(
    col: &TwoColouring,
    sparse: Colour,
    full_side: VertexSet,
    part_side: VertexSet,
    f1: VertexSet,
    p1: VertexSet,
    gamma: Rational64,
    h: &PatternGraph,
    budget: &Budget,
) -> Result<Option<Tie>> {
    let gs = col.class(sparse);
    let gp = col.class(sparse.other());
    let (f1, p1) = enlarge(gs, full_side, part_side, f1, p1, gamma, h.k);
    let limit = gamma * 4 * Rational64::from_integer(f1.len() as i64);
    let p2: VertexSet = p1
        .iter()
        .filter(|&v| Rational64::from_integer((gs.neighbours(v) & f1).len() as i64) <= limit)
        .collect();
    let ind = h.max_ind_set;
    let core = h.core_vertices();
    let (core_graph, core_map) = h.graph.induced(core);
    for cmap in distinct_copies(gp, &core_graph, p2, budget)?.into_iter().take(64) {
        let mut image = vec![usize::MAX; h.k];
        for (j, &v) in cmap.iter().enumerate() {
            image[core_map[j]] = v;
        }
        for pool in [f1, full_side] {
            let mut s = Search::new(gs, &h.graph).within(full_side).symmetry(false);
            for p in 0..h.k {
                if ind.contains(p) {
                    let mut v_i = full_side;
                    for q in h.graph.neighbours(p).iter() {
                        v_i &= gp.neighbours(image[q]);
                    }
                    s = s.restrict(p, v_i);
                } else {
                    s = s.restrict(p, pool);
                }
            }
            if let Some(fmap) = s.first(budget)? {
                let mut other = image.clone();
                for i in ind.iter() {
                    other[i] = fmap[i];
                }
                let (red, blue) = match sparse {
                    Colour::Red => (fmap, other),
                    Colour::Blue => (other, fmap),
                };
                if let Some(t) = validated(col, &red, &blue, h, budget)? {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

/// Red `H − I` in `R` joined in red to a blue `H` in `B`; the `I`-vertices
/// of the red copy are taken from the blue copy.
fn join_case(col: &TwoColouring, r: VertexSet, b: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<Option<Tie>> {
    let ind = h.max_ind_set;
    let (core_graph, core_map) = h.graph.induced(h.core_vertices());
    for cmap in distinct_copies(col.red(), &core_graph, r, budget)? {
        let mut common = b;
        for &v in &cmap {
            common &= col.red().neighbours(v);
        }
        let Some(blue) = Search::new(col.blue(), &h.graph).within(common).first(budget)? else { continue };
        let mut sorted = blue.clone();
        sorted.sort_unstable();
        let mut red = vec![usize::MAX; h.k];
        for (j, &v) in cmap.iter().enumerate() {
            red[core_map[j]] = v;
        }
        for (i, &v) in ind.iter().zip(&sorted) {
            red[i] = v;
        }
        if let Some(t) = validated(col, &red, &blue, h, budget)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Join {
    pub red_copy: Embedding,
    pub blue_copy: Embedding,
}

pub fn is_join(col: &TwoColouring, j: &Join, h: &PatternGraph) -> bool {
    let (ri, bi) = (j.red_copy.image(), j.blue_copy.image());
    crate::embed::is_valid_map(col.red(), &h.graph, &j.red_copy.host_map)
        && crate::embed::is_valid_map(col.blue(), &h.graph, &j.blue_copy.host_map)
        && ri.is_disjoint(&bi)
        && ri.iter().all(|v| bi.is_subset(&col.red().neighbours(v)))
}

/// Red `H` in `R` and blue `H` in `B` with every pair between them red.
pub fn find_join(col: &TwoColouring, r: VertexSet, b: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<Option<Join>> {
    if r.len() < h.k || b.len() < h.k {
        return Ok(None);
    }
    if !r.is_disjoint(&b) {
        return Err(Error::OverlappingSets((r & b).first().expect("non-empty")));
    }
    for red in distinct_copies(col.red(), &h.graph, r, budget)? {
        let mut common = b;
        for &v in &red {
            common &= col.red().neighbours(v);
        }
        if let Some(blue) = Search::new(col.blue(), &h.graph).within(common).first(budget)? {
            let j = Join {
                red_copy: Embedding::new(red, Some(Colour::Red)),
                blue_copy: Embedding::new(blue, Some(Colour::Blue)),
            };
            debug_assert!(is_join(col, &j, h));
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Output of the clique ladder: cliques `L_r ⊆ R`, `L_b ⊆ B` of order
/// `⌈√m/2⌉` and `S_r ⊆ R`, `S_b ⊆ B` of order `⌈√m/4⌉`, and the residual sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder {
    pub l_r: Vec<usize>,
    pub l_b: Vec<usize>,
    pub s_r: Vec<usize>,
    pub s_b: Vec<usize>,
    pub r2: VertexSet,
    pub b2: VertexSet,
    pub r4: VertexSet,
    pub b4: VertexSet,
}

/// Smallest `c` with `(d·c)² ≥ m`, i.e. `⌈√m/d⌉`.
pub fn ceil_sqrt_over(m: usize, d: usize) -> usize {
    let mut c = 0;
    while (d * c) * (d * c) < m {
        c += 1;
    }
    c
}

struct Phase {
    /// Pick from `R` (red clique) or `B` (blue clique).
    from_r: bool,
    /// Colour towards the opposite side.
    across: Colour,
    size: usize,
}

/// Iterated grab of vertices with at least a `1/(2k+2)` share of the current
/// sides in the required colours; each grab shrinks both sides to the
/// grabbed vertex's neighbourhoods. Steps are numbered from 1 across all
/// four phases.
pub fn clique_ladder(col: &TwoColouring, r: VertexSet, b: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<Ladder> {
    check_sides(col, r, b, h, budget)?;
    let m = h.edge_count();
    let (big, small) = (ceil_sqrt_over(m, 2), ceil_sqrt_over(m, 4));
    let share = 2 * h.k + 2;
    let phases = [
        Phase { from_r: true, across: Colour::Blue, size: big },
        Phase { from_r: false, across: Colour::Red, size: big },
        Phase { from_r: true, across: Colour::Red, size: small },
        Phase { from_r: false, across: Colour::Blue, size: small },
    ];
    let (mut r0, mut b0) = (r, b);
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut marks = Vec::new();
    let mut step = 0;
    for ph in &phases {
        let mut clique = Vec::new();
        for _ in 0..ph.size {
            step += 1;
            budget.charge(1)?;
            let (own, own_colour, other) = if ph.from_r { (r0, Colour::Red, b0) } else { (b0, Colour::Blue, r0) };
            let pick = own.iter().find(|&v| {
                let inside = (col.class(own_colour).neighbours(v) & own).len();
                let across = (col.class(ph.across).neighbours(v) & other).len();
                inside * share >= own.len() && across * share >= other.len()
            });
            let Some(v) = pick else { return Err(Error::LadderStuck { step }) };
            clique.push(v);
            let own_next = col.class(own_colour).neighbours(v) & own;
            let other_next = col.class(ph.across).neighbours(v) & other;
            if ph.from_r {
                r0 = own_next;
                b0 = other_next;
            } else {
                b0 = own_next;
                r0 = other_next;
            }
        }
        cliques.push(clique);
        marks.push((r0, b0));
    }
    let ladder = Ladder {
        l_r: cliques[0].clone(),
        l_b: cliques[1].clone(),
        s_r: cliques[2].clone(),
        s_b: cliques[3].clone(),
        r2: marks[1].0,
        b2: marks[1].1,
        r4: marks[3].0,
        b4: marks[3].1,
    };
    if !check_ladder(col, r, b, &ladder) {
        return Err(Error::ConstructionFailed("ladder failed re-verification".into()));
    }
    Ok(ladder)
}

fn all_coloured(col: &TwoColouring, xs: &[usize], set: VertexSet, c: Colour) -> bool {
    xs.iter().all(|&v| (set - VertexSet::singleton(v)).is_subset(&col.class(c).neighbours(v)))
}

/// Clique and cross-colour properties of a ladder.
pub fn check_ladder(col: &TwoColouring, r: VertexSet, b: VertexSet, l: &Ladder) -> bool {
    let set = |xs: &[usize]| xs.iter().collect::<VertexSet>();
    let (lr, lb, sr, sb) = (set(&l.l_r), set(&l.l_b), set(&l.s_r), set(&l.s_b));
    lr.is_subset(&r)
        && sr.is_subset(&r)
        && lb.is_subset(&b)
        && sb.is_subset(&b)
        && col.red().is_clique(lr)
        && col.red().is_clique(sr)
        && col.blue().is_clique(lb)
        && col.blue().is_clique(sb)
        && all_coloured(col, &l.l_r, l.r2, Colour::Red)
        && all_coloured(col, &l.l_b, l.r2, Colour::Red)
        && all_coloured(col, &l.l_r, l.b2, Colour::Blue)
        && all_coloured(col, &l.l_b, l.b2, Colour::Blue)
        && all_coloured(col, &l.s_r, l.r4, Colour::Red)
        && all_coloured(col, &l.s_r, l.b4, Colour::Red)
        && all_coloured(col, &l.s_b, l.r4, Colour::Blue)
        && all_coloured(col, &l.s_b, l.b4, Colour::Blue)
}
