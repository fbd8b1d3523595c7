use std::collections::BTreeMap;

use crate::bitset::{for_each_subset, VertexSet};
use crate::budget::Budget;
use crate::embed::{is_valid_map, Embedding, Search};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matching::max_matching;
use crate::pattern::PatternGraph;
use crate::tiling::{check_tiling, Tiling};

/// Bank combinations tried per refill step before giving up.
const COMBINATION_LIMIT: usize = 10_000;

/// Disjoint copies of `H` whose `I`-images form `W_I`, plus a bank `W_A` of
/// spare vertices and the claimed alias relation.
#[derive(Clone, Debug)]
pub struct AliasBankInput<'a> {
    pub host: &'a SimpleGraph,
    pub pattern: &'a PatternGraph,
    /// Pattern vertices forming a 2-independent set `I`.
    pub ind: VertexSet,
    pub copies: Vec<Embedding>,
    pub bank: VertexSet,
    /// Bank vertex → the `W_I` vertices it can replace in their copies.
    pub alias_of: BTreeMap<usize, VertexSet>,
}

impl AliasBankInput<'_> {
    pub fn w_i(&self) -> VertexSet {
        images(&self.copies, self.ind)
    }

    pub fn w_hmi(&self) -> VertexSet {
        self.copies.iter().fold(VertexSet::EMPTY, |a, c| a | c.image()) - self.w_i()
    }
}

fn images(copies: &[Embedding], ind: VertexSet) -> VertexSet {
    let mut out = VertexSet::EMPTY;
    for c in copies {
        for i in ind.iter() {
            out.insert(c.host_map[i]);
        }
    }
    out
}

/// Copy index and pattern vertex of each `W_I` vertex.
fn owners(copies: &[Embedding], ind: VertexSet) -> BTreeMap<usize, (usize, usize)> {
    let mut out = BTreeMap::new();
    for (ci, c) in copies.iter().enumerate() {
        for i in ind.iter() {
            out.insert(c.host_map[i], (ci, i));
        }
    }
    out
}

fn can_replace(host: &SimpleGraph, h: &PatternGraph, copy: &Embedding, i: usize, a: usize) -> bool {
    !copy.image().contains(a) && h.graph.neighbours(i).iter().all(|j| host.has_edge(a, copy.host_map[j]))
}

/// Exact alias relation: bank vertex → the `W_I` vertices it can replace.
pub fn exact_alias_map(
    host: &SimpleGraph,
    h: &PatternGraph,
    ind: VertexSet,
    copies: &[Embedding],
    bank: VertexSet,
) -> BTreeMap<usize, VertexSet> {
    bank.iter()
        .map(|a| {
            let mut targets = VertexSet::EMPTY;
            for c in copies {
                for i in ind.iter() {
                    if can_replace(host, h, c, i, a) {
                        targets.insert(c.host_map[i]);
                    }
                }
            }
            (a, targets)
        })
        .collect()
}

fn check_input(input: &AliasBankInput, x: VertexSet) -> Result<()> {
    let h = input.pattern;
    let host = input.host;
    for i in input.ind.iter() {
        if i >= h.k {
            return Err(Error::Precondition(format!("{i} is not a pattern vertex")));
        }
        for j in input.ind.iter().filter(|&j| j > i) {
            let near = h.graph.has_edge(i, j) || !h.graph.neighbours(i).is_disjoint(&h.graph.neighbours(j));
            if near {
                return Err(Error::Precondition(format!("I is not 2-independent ({i}, {j})")));
            }
        }
    }
    let mut used = VertexSet::EMPTY;
    for c in &input.copies {
        if c.host_map.len() != h.k || !is_valid_map(host, &h.graph, &c.host_map) {
            return Err(Error::Precondition("a supplied copy is not a copy of H".into()));
        }
        if !used.is_disjoint(&c.image()) {
            return Err(Error::Precondition("supplied copies overlap".into()));
        }
        used |= c.image();
    }
    if !used.is_disjoint(&input.bank) || !input.bank.is_subset(&host.vertices()) {
        return Err(Error::Precondition("bank must be host vertices outside the copies".into()));
    }
    let w_i = input.w_i();
    if !x.is_subset(&w_i) {
        return Err(Error::Precondition("X must be a subset of W_I".into()));
    }
    let own = owners(&input.copies, input.ind);
    for (&a, targets) in &input.alias_of {
        if !input.bank.contains(a) || !targets.is_subset(&w_i) {
            return Err(Error::Precondition(format!("alias entry for {a} is outside W_A or W_I")));
        }
        for y in targets.iter() {
            let (ci, i) = own[&y];
            if !can_replace(host, h, &input.copies[ci], i, a) {
                return Err(Error::Precondition(format!("{a} is not an alias of {y}")));
            }
        }
    }
    Ok(())
}

/// Tiling of `W ∖ X`, where `W` is the union of the copies and the bank.
///
/// Each `x ∈ X` is first replaced in its copy by a distinct alias from the
/// bank. Then, while at least `k` bank vertices remain, `k` of them take over
/// the `I`-positions of vertices `v_1, …, v_k ∈ W_I` spanning a copy of `H`
/// (with `v_i` an alias target of the `i`-th bank vertex); the freed `v_i`
/// form a new copy. Fewer than `k` bank vertices are left uncovered.
pub fn absorb_via_alias_bank(input: &AliasBankInput, x: VertexSet, budget: &Budget) -> Result<Tiling> {
    check_input(input, x)?;
    let host = input.host;
    let h = input.pattern;
    let k = h.k;
    let xs = x.to_vec();
    let mut bank = input.bank;
    if xs.len() > bank.len() {
        return Err(Error::BankExhausted {
            blocking: xs[bank.len()],
            reason: format!("|X| = {} exceeds the bank size {}", xs.len(), bank.len()),
        });
    }

    let mut copies = input.copies.clone();
    let bank_list = bank.to_vec();
    let left: Vec<VertexSet> = xs
        .iter()
        .map(|&y| {
            bank_list
                .iter()
                .enumerate()
                .filter(|(_, a)| input.alias_of.get(a).is_some_and(|t| t.contains(y)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let matched = max_matching(&left);
    if let Some(pos) = matched.iter().position(|m| m.is_none()) {
        return Err(Error::BankExhausted {
            blocking: xs[pos],
            reason: "no system of distinct aliases for X".into(),
        });
    }
    let own = owners(&copies, input.ind);
    for (y, m) in xs.iter().zip(&matched) {
        let a = bank_list[m.expect("saturating")];
        let (ci, i) = own[y];
        copies[ci] = copies[ci].substituted(i, a);
        bank.remove(a);
    }

    let mut finished = Vec::new();
    while bank.len() >= k {
        budget.charge(1)?;
        let (new_copies, new_copy, used) = refill(host, h, input.ind, &copies, bank, budget)?;
        copies = new_copies;
        finished.push(new_copy);
        bank -= used;
    }

    copies.extend(finished);
    let covered = copies.iter().fold(VertexSet::EMPTY, |a, c| a | c.image());
    let target = (input.copies.iter().fold(VertexSet::EMPTY, |a, c| a | c.image()) | input.bank) - x;
    let tiling = Tiling { copies, leftover: bank };
    if covered | bank != target || !check_tiling(host, &h.graph, target, &tiling, target.len() % k) {
        return Err(Error::ConstructionFailed("alias-bank tiling failed verification".into()));
    }
    Ok(tiling)
}

type Refill = (Vec<Embedding>, Embedding, VertexSet);

fn refill(
    host: &SimpleGraph,
    h: &PatternGraph,
    ind: VertexSet,
    copies: &[Embedding],
    bank: VertexSet,
    budget: &Budget,
) -> Result<Refill> {
    let k = h.k;
    let w_i = images(copies, ind);
    let aliases = exact_alias_map(host, h, ind, copies, bank);
    let own = owners(copies, ind);
    let pool = bank.to_vec();
    let mut tried = 0;
    let mut found: Option<Refill> = None;
    let mut err = None;
    for_each_subset(&pool, k, |ws| {
        tried += 1;
        if tried > COMBINATION_LIMIT {
            return false;
        }
        let mut search = Search::new(host, &h.graph).within(w_i).symmetry(false);
        for (i, w) in ws.iter().enumerate() {
            search = search.restrict(i, aliases[w]);
        }
        let map = match search.first(budget) {
            Ok(Some(m)) => m,
            Ok(None) => return true,
            Err(e) => {
                err = Some(e);
                return false;
            }
        };
        let mut next = copies.to_vec();
        for (i, &v) in map.iter().enumerate() {
            let (ci, p) = own[&v];
            next[ci] = next[ci].substituted(p, ws[i]);
        }
        if next.iter().all(|c| is_valid_map(host, &h.graph, &c.host_map)) {
            found = Some((next, Embedding::new(map, None), ws.iter().collect()));
            return false;
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    found.ok_or_else(|| Error::BankExhausted {
        blocking: pool[0],
        reason: "no copy of H on the alias targets of any k bank vertices".into(),
    })
}
