//! Edge-by-edge colouring search on at most 16 vertices with `u32` rows.

use rayon::prelude::*;

use super::target::Target;
use crate::budget::Budget;
use crate::embed::connectivity_order;
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};

pub const KERNEL_LIMIT: usize = 16;
const CHARGE_BATCH: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeOrder {
    /// By larger endpoint, then smaller: `K_j` on `0..j` completes first.
    Colex,
    /// By smaller endpoint, then larger.
    Lex,
}

pub fn edge_list(n: usize, order: EdgeOrder) -> Vec<(u8, u8)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    match order {
        EdgeOrder::Colex => {
            for j in 1..n {
                for i in 0..j {
                    out.push((i as u8, j as u8));
                }
            }
        }
        EdgeOrder::Lex => {
            for i in 0..n {
                for j in i + 1..n {
                    out.push((i as u8, j as u8));
                }
            }
        }
    }
    out
}

/// Extension plan for copies through a fixed oriented pattern edge `a → u`,
/// `b → v`.
#[derive(Clone, Debug)]
struct Start {
    a: usize,
    b: usize,
    order: Vec<usize>,
    /// For each entry of `order`, the already placed pattern neighbours.
    back: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Compiled {
    k: usize,
    starts: Vec<Start>,
}

impl Compiled {
    fn new(g: &SimpleGraph) -> Self {
        let k = g.order();
        let mut starts = Vec::new();
        for (x, y) in g.edges() {
            for (a, b) in [(x, y), (y, x)] {
                let mut fixed = crate::bitset::VertexSet::EMPTY;
                fixed.insert(a);
                fixed.insert(b);
                let rest: Vec<usize> = connectivity_order_from(g, a, b);
                let mut placed: u32 = (1 << a) | (1 << b);
                let mut back = Vec::with_capacity(rest.len());
                for &p in &rest {
                    let nb: u32 = g.neighbours(p).iter().fold(0, |m, q| m | (1 << q));
                    back.push(nb & placed);
                    placed |= 1 << p;
                }
                starts.push(Start { a, b, order: rest, back });
            }
        }
        Compiled { k, starts }
    }
}

fn connectivity_order_from(g: &SimpleGraph, a: usize, b: usize) -> Vec<usize> {
    // reuse the generic order on the pattern, then move a and b to the front
    let full = connectivity_order(g, crate::bitset::VertexSet::EMPTY);
    let mut placed: u32 = (1 << a) | (1 << b);
    let mut left: Vec<usize> = full.into_iter().filter(|&p| p != a && p != b).collect();
    let mut out = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let (idx, _) = left
            .iter()
            .enumerate()
            .max_by_key(|(i, &p)| {
                let nb: u32 = g.neighbours(p).iter().fold(0, |m, q| m | (1 << q));
                ((nb & placed).count_ones(), std::cmp::Reverse(*i))
            })
            .expect("non-empty");
        let p = left.remove(idx);
        placed |= 1 << p;
        out.push(p);
    }
    out
}

#[derive(Clone, Debug)]
enum Checker {
    Packing { pat: Compiled, n: usize },
    Family { members: Vec<Compiled> },
    /// Violated as soon as the colouring has this many vertices.
    Always,
    Never,
}

impl Checker {
    fn new(t: &Target, order: usize) -> Self {
        match t {
            Target::Packing { pattern, n } => {
                if pattern.graph.edge_count() == 0 {
                    if pattern.k * n <= order {
                        Checker::Always
                    } else {
                        Checker::Never
                    }
                } else {
                    Checker::Packing {
                        pat: Compiled::new(&pattern.graph),
                        n: *n,
                    }
                }
            }
            Target::Family { family } => {
                if family.members().iter().any(|g| g.edge_count() == 0 && g.order() <= order) {
                    return Checker::Always;
                }
                let members: Vec<Compiled> = family
                    .members()
                    .iter()
                    .filter(|g| g.edge_count() > 0 && g.order() <= order)
                    .map(Compiled::new)
                    .collect();
                if members.is_empty() {
                    Checker::Never
                } else {
                    Checker::Family { members }
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(rows: &[u32; KERNEL_LIMIT], all: u32, st: &Start, pos: usize, map: &mut [u8; 32], used: u32, out: &mut Vec<u32>, first_only: bool) -> bool {
    if pos == st.order.len() {
        if !out.contains(&used) {
            out.push(used);
        }
        return first_only;
    }
    let p = st.order[pos];
    let mut cand = all & !used;
    let mut back = st.back[pos];
    while back != 0 {
        let q = back.trailing_zeros() as usize;
        back &= back - 1;
        cand &= rows[map[q] as usize];
    }
    while cand != 0 {
        let w = cand.trailing_zeros();
        cand &= cand - 1;
        map[p] = w as u8;
        if extend(rows, all, st, pos + 1, map, used | (1 << w), out, first_only) {
            return true;
        }
    }
    false
}

/// Vertex sets of copies of `pat` through edge `uv` of `rows`.
fn copies_through(rows: &[u32; KERNEL_LIMIT], all: u32, pat: &Compiled, u: usize, v: usize, out: &mut Vec<u32>, first_only: bool) -> bool {
    let mut map = [0u8; 32];
    for st in &pat.starts {
        map[st.a] = u as u8;
        map[st.b] = v as u8;
        let used = (1 << u) | (1 << v);
        if extend(rows, all, st, 0, &mut map, used, out, first_only) {
            return true;
        }
    }
    debug_assert!(pat.k <= 32);
    false
}

/// `need` pairwise disjoint sets from `pool[from..]`, all disjoint from `avoid`.
fn disjoint_pick(pool: &[u32], from: usize, avoid: u32, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    for i in from..pool.len() {
        if pool[i] & avoid == 0 && disjoint_pick(pool, i + 1, avoid | pool[i], need - 1) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug)]
struct State {
    rows: [[u32; KERNEL_LIMIT]; 2],
    sets: [Vec<u32>; 2],
    colours: Vec<u8>,
}

struct Dfs<'a> {
    all: u32,
    edges: &'a [(u8, u8)],
    checkers: [&'a Checker; 2],
    fixed_first: bool,
    budget: &'a Budget,
    pending: u64,
    scratch: Vec<u32>,
}


impl Dfs<'_> {
    fn tick(&mut self) -> Result<()> {
        self.pending += 1;
        if self.pending >= CHARGE_BATCH {
            let p = std::mem::take(&mut self.pending);
            self.budget.charge(p)?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let p = std::mem::take(&mut self.pending);
        self.budget.charge(p)
    }

    /// Colours edge `e` with `c`; returns false when the target of `c` is hit.
    fn assign(&mut self, st: &mut State, u: usize, v: usize, c: usize) -> bool {
        st.rows[c][u] |= 1 << v;
        st.rows[c][v] |= 1 << u;
        match self.checkers[c] {
            Checker::Never => true,
            Checker::Always => false,
            Checker::Family { members } => {
                self.scratch.clear();
                !members.iter().any(|m| copies_through(&st.rows[c], self.all, m, u, v, &mut self.scratch, true))
            }
            Checker::Packing { pat, n } => {
                self.scratch.clear();
                copies_through(&st.rows[c], self.all, pat, u, v, &mut self.scratch, *n == 1);
                if self.scratch.is_empty() {
                    return true;
                }
                if *n == 1 {
                    return false;
                }
                let before = st.sets[c].len();
                for &s in &self.scratch {
                    if !st.sets[c][..before].contains(&s) {
                        st.sets[c].push(s);
                    }
                }
                let pool = &st.sets[c];
                !(before..pool.len()).any(|i| disjoint_pick(pool, 0, pool[i], *n - 1))
            }
        }
    }

    fn unassign(st: &mut State, u: usize, v: usize, c: usize, sets_len: usize) {
        st.rows[c][u] &= !(1 << v);
        st.rows[c][v] &= !(1 << u);
        st.sets[c].truncate(sets_len);
    }

    fn choices(&self, e: usize) -> &'static [usize] {
        if e == 0 && self.fixed_first {
            &[0]
        } else {
            &[0, 1]
        }
    }

    fn run(&mut self, st: &mut State, e: usize) -> Result<bool> {
        if e == self.edges.len() {
            return Ok(true);
        }
        let (u, v) = (self.edges[e].0 as usize, self.edges[e].1 as usize);
        for &c in self.choices(e) {
            self.tick()?;
            let len = st.sets[c].len();
            if self.assign(st, u, v, c) {
                st.colours.push(c as u8);
                if self.run(st, e + 1)? {
                    return Ok(true);
                }
                st.colours.pop();
            }
            Self::unassign(st, u, v, c, len);
        }
        Ok(false)
    }

    /// Live states after the first `depth` edges, in search order.
    fn frontier(&mut self, st: &mut State, e: usize, depth: usize, out: &mut Vec<State>) -> Result<()> {
        if e == depth || e == self.edges.len() {
            out.push(st.clone());
            return Ok(());
        }
        let (u, v) = (self.edges[e].0 as usize, self.edges[e].1 as usize);
        for &c in self.choices(e) {
            self.tick()?;
            let len = st.sets[c].len();
            if self.assign(st, u, v, c) {
                st.colours.push(c as u8);
                self.frontier(st, e + 1, depth, out)?;
                st.colours.pop();
            }
            Self::unassign(st, u, v, c, len);
        }
        Ok(())
    }
}

/// Result of one order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Avoiding(TwoColouring),
    Forced,
}

pub struct KernelStats {
    pub nodes: u64,
}

/// Searches for a colouring of `K_n` whose red class avoids `red` and blue
/// class avoids `blue`. The answer is the first avoiding colouring in search
/// order, independent of the thread count.
pub fn search_order(n: usize, red: &Target, blue: &Target, order: EdgeOrder, parallel: bool, budget: &Budget) -> Result<(Outcome, KernelStats)> {
    if n > KERNEL_LIMIT {
        return Err(Error::SizeLimit {
            what: "colouring search order",
            got: n,
            limit: KERNEL_LIMIT,
        });
    }
    let start = budget.used();
    let checkers = [Checker::new(red, n), Checker::new(blue, n)];
    let edges = edge_list(n, order);
    let witness = |colours: &[u8]| {
        let mut col = TwoColouring::monochromatic(n, Colour::Red);
        for (&(u, v), &c) in edges.iter().zip(colours) {
            if c == 1 {
                col.set(u as usize, v as usize, Colour::Blue);
            }
        }
        col
    };
    // classes are spanning, so an edgeless target of small order is always present
    if checkers.iter().any(|c| matches!(c, Checker::Always)) {
        return Ok((Outcome::Forced, KernelStats { nodes: 0 }));
    }
    let mut dfs = Dfs {
        all: (1u32 << n) - 1,
        edges: &edges,
        checkers: [&checkers[0], &checkers[1]],
        fixed_first: red.key() == blue.key(),
        budget,
        pending: 0,
        scratch: Vec::new(),
    };
    let mut root = State {
        rows: [[0; KERNEL_LIMIT]; 2],
        sets: [Vec::new(), Vec::new()],
        colours: Vec::new(),
    };
    if edges.is_empty() {
        return Ok((Outcome::Avoiding(witness(&[])), KernelStats { nodes: 0 }));
    }
    if !parallel {
        let found = dfs.run(&mut root, 0);
        dfs.flush()?;
        let out = if found? { Outcome::Avoiding(witness(&root.colours)) } else { Outcome::Forced };
        return Ok((out, KernelStats { nodes: budget.used() - start }));
    }
    let depth = edges.len().min(10);
    let mut front = Vec::new();
    let r = dfs.frontier(&mut root, 0, depth, &mut front);
    dfs.flush()?;
    r?;
    let edges_ref = &edges;
    let checkers_ref = &checkers;
    let found = front
        .into_par_iter()
        .map(|mut st| {
            let mut d = Dfs {
                all: dfs.all,
                edges: edges_ref,
                checkers: [&checkers_ref[0], &checkers_ref[1]],
                fixed_first: false,
                budget,
                pending: 0,
                scratch: Vec::new(),
            };
            let r = d.run(&mut st, depth);
            d.flush()?;
            Ok(if r? { Some(st.colours) } else { None })
        })
        .find_map_first(|r: Result<Option<Vec<u8>>>| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let out = match found {
        None => Outcome::Forced,
        Some(Ok(Some(colours))) => Outcome::Avoiding(witness(&colours)),
        Some(Ok(None)) => unreachable!(),
        Some(Err(e)) => return Err(e),
    };
    Ok((out, KernelStats { nodes: budget.used() - start }))
}
