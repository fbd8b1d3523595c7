use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::search::{ramsey_search, RamseyQuery, RamseyStatus};
use super::target::Target;
use super::KERNEL_LIMIT;
use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::constructions::Partition;
use crate::embed::Search;
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};
use crate::pattern::PatternGraph;
use crate::ties::{is_tie, Tie};

/// `R`, `B`, `E` of a candidate critical colouring.
pub type CriticalPartition = Partition;

/// Distinct copy vertex sets kept per colour in the tie sweep.
pub const SWEEP_SET_LIMIT: usize = 200_000;
/// Red/blue set pairs examined in the tie sweep.
pub const SWEEP_PAIR_LIMIT: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BulletStatus {
    Pass,
    Fail,
    Unverifiable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bullet {
    pub index: usize,
    pub status: BulletStatus,
    pub detail: String,
    /// First offending edge for the colour bullets.
    pub edge: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalReport {
    pub ok: bool,
    pub bullets: Vec<Bullet>,
    /// `r(H)` used for the size bullet, when known.
    pub ramsey_h: Option<usize>,
    pub tie: Option<Tie>,
    pub tie_candidates: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct CriticalOptions {
    /// Known value of `r(H)`; otherwise computed when `k` is small enough.
    pub ramsey_h: Option<usize>,
    /// Node budget for computing `r(H)`.
    pub ramsey_nodes: u64,
}

impl Default for CriticalOptions {
    fn default() -> Self {
        CriticalOptions {
            ramsey_h: None,
            ramsey_nodes: 50_000_000,
        }
    }
}

fn bullet(index: usize, status: BulletStatus, detail: String, edge: Option<(usize, usize)>) -> Bullet {
    Bullet { index, status, detail, edge }
}

fn first_off(col: &TwoColouring, x: VertexSet, y: VertexSet, want: Colour) -> Option<(usize, usize)> {
    for u in x.iter() {
        for v in y.iter() {
            if u != v && col.colour(u, v) != want {
                return Some((u.min(v), u.max(v)));
            }
        }
    }
    None
}

fn size_bullet(part: &Partition, h: &PatternGraph, rh: Option<usize>) -> Bullet {
    let (r, b, e) = (part.r.len(), part.b.len(), part.e.len());
    let need = h.k * (e + 1);
    if r < need || b < need {
        return bullet(1, BulletStatus::Fail, format!("|R| = {r}, |B| = {b}, need at least k(|E|+1) = {need}"), None);
    }
    match rh {
        None => bullet(1, BulletStatus::Unverifiable, format!("|R|, |B| >= {need}; r(H) unknown, |E| = {e} unchecked"), None),
        Some(v) if e <= v => bullet(1, BulletStatus::Pass, format!("|E| = {e} <= r(H) = {v}; |R| = {r}, |B| = {b} >= {need}"), None),
        Some(v) => bullet(1, BulletStatus::Fail, format!("|E| = {e} > r(H) = {v}"), None),
    }
}

fn interior_bullet(col: &TwoColouring, part: &Partition) -> Bullet {
    if let Some(e) = first_off(col, part.r, part.r, Colour::Red) {
        return bullet(2, BulletStatus::Fail, format!("edge {e:?} inside R is blue"), Some(e));
    }
    if let Some(e) = first_off(col, part.b, part.b, Colour::Blue) {
        return bullet(2, BulletStatus::Fail, format!("edge {e:?} inside B is red"), Some(e));
    }
    bullet(2, BulletStatus::Pass, "R red, B blue".into(), None)
}

fn cross_bullet(col: &TwoColouring, part: &Partition) -> Bullet {
    let first = part.r.first().zip(part.b.first()).map(|(u, v)| col.colour(u, v));
    if let Some(c) = first {
        if let Some(e) = first_off(col, part.r, part.b, c) {
            return bullet(3, BulletStatus::Fail, format!("[R,B] not uniform at {e:?}"), Some(e));
        }
    }
    if let Some(e) = first_off(col, part.r, part.e, Colour::Blue) {
        return bullet(3, BulletStatus::Fail, format!("edge {e:?} in [R,E] is red"), Some(e));
    }
    if let Some(e) = first_off(col, part.b, part.e, Colour::Red) {
        return bullet(3, BulletStatus::Fail, format!("edge {e:?} in [B,E] is blue"), Some(e));
    }
    let cross = first.map_or("empty".to_string(), |c| format!("{c:?}").to_lowercase());
    bullet(3, BulletStatus::Pass, format!("[R,B] {cross}, [R,E] blue, [B,E] red"), None)
}

fn copy_sets(g: &SimpleGraph, h: &SimpleGraph, budget: &Budget) -> Result<Vec<VertexSet>> {
    // twin symmetry keeps the emptiness test cheap
    if Search::new(g, h).first(budget)?.is_none() {
        return Ok(Vec::new());
    }
    let mut sets = BTreeSet::new();
    let mut over = false;
    Search::new(g, h).symmetry(false).for_each(budget, |m| {
        sets.insert(m.iter().copied().collect::<VertexSet>());
        over = sets.len() > SWEEP_SET_LIMIT;
        !over
    })?;
    if over {
        return Err(Error::SizeLimit {
            what: "tie sweep copy sets",
            got: sets.len(),
            limit: SWEEP_SET_LIMIT,
        });
    }
    Ok(sets.into_iter().collect())
}

/// Every `(2k − α)`-set meeting `E` that is the union of a red and a blue
/// copy is tested with the tie checker; other sets cannot be ties.
fn tie_sweep(col: &TwoColouring, e: VertexSet, h: &PatternGraph, budget: &Budget) -> Result<(Option<Tie>, u64)> {
    if e.is_empty() {
        return Ok((None, 0));
    }
    let size = 2 * h.k - h.alpha;
    let reds = copy_sets(col.red(), &h.graph, budget)?;
    if reds.is_empty() {
        return Ok((None, 0));
    }
    let blues = copy_sets(col.blue(), &h.graph, budget)?;
    let pairs = reds.len() as u64 * blues.len() as u64;
    if pairs > SWEEP_PAIR_LIMIT {
        return Err(Error::SizeLimit {
            what: "tie sweep pairs",
            got: pairs.min(usize::MAX as u64) as usize,
            limit: SWEEP_PAIR_LIMIT as usize,
        });
    }
    let mut unions = BTreeSet::new();
    for r in &reds {
        for b in &blues {
            let s = *r | *b;
            if s.len() == size && !s.is_disjoint(&e) {
                unions.insert(s);
            }
        }
    }
    let mut checked = 0;
    for s in unions {
        checked += 1;
        if let Ok(t) = is_tie(col, s, h, budget)? {
            return Ok((Some(t), checked));
        }
    }
    Ok((None, checked))
}

fn lookup_ramsey(h: &PatternGraph, opts: &CriticalOptions) -> Result<Option<usize>> {
    if let Some(v) = opts.ramsey_h {
        return Ok(Some(v));
    }
    if h.k > 5 {
        return Ok(None);
    }
    let q = RamseyQuery::symmetric(Target::single(h.clone())).with_range(h.k.max(1), KERNEL_LIMIT);
    let r = ramsey_search(&q, &Budget::new(opts.ramsey_nodes))?;
    Ok(if r.status == RamseyStatus::Exact { r.value } else { None })
}

/// Checks the four structural properties of a critical colouring: sizes,
/// monochromatic interiors, uniform cross colours, and no tie through `E`.
pub fn verify_critical_structure(
    col: &TwoColouring,
    part: &CriticalPartition,
    h: &PatternGraph,
    opts: &CriticalOptions,
    budget: &Budget,
) -> Result<CriticalReport> {
    for (x, y) in [(part.r, part.b), (part.r, part.e), (part.b, part.e)] {
        if let Some(v) = (x & y).first() {
            return Err(Error::OverlappingSets(v));
        }
    }
    if part.all() != col.vertices() {
        return Err(Error::Precondition("R, B and E must cover the colouring exactly".into()));
    }
    let rh = lookup_ramsey(h, opts)?;
    let (tie, tie_candidates) = tie_sweep(col, part.e, h, budget)?;
    let tie_bullet = match &tie {
        Some(t) => bullet(4, BulletStatus::Fail, format!("tie on {:?} meets E", t.vertices.to_vec()), None),
        None if part.e.is_empty() => bullet(4, BulletStatus::Pass, "E is empty".into(), None),
        None => bullet(4, BulletStatus::Pass, format!("{tie_candidates} candidate sets, no tie"), None),
    };
    let bullets = vec![size_bullet(part, h, rh), interior_bullet(col, part), cross_bullet(col, part), tie_bullet];
    Ok(CriticalReport {
        ok: bullets.iter().all(|b| b.status == BulletStatus::Pass),
        bullets,
        ramsey_h: rh,
        tie,
        tie_candidates,
    })
}
