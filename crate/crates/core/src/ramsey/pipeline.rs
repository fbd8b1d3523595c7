use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::absorb::{verify_absorber, AbsorberCertificate};
use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::embed::{find_mono_copy, find_mono_copy_within, is_valid_in, Embedding, Search};
use crate::error::{Error, Result};
use crate::graph::{Colour, TwoColouring};
use crate::iso::{canonical_key, derived_families};
use crate::pattern::PatternGraph;
use crate::tiling::{check_tiling, find_tiling_in, Tiling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    pub sizes: BTreeMap<String, usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PipelineOutcome {
    /// Disjoint blue copies covering `C'` and the absorbed part.
    Materialized { copies: Vec<Embedding> },
    Failed { step: String, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub trace: Vec<TraceStep>,
    pub outcome: PipelineOutcome,
}

impl PipelineReport {
    pub fn copies(&self) -> usize {
        match &self.outcome {
            PipelineOutcome::Materialized { copies } => copies.len(),
            PipelineOutcome::Failed { .. } => 0,
        }
    }

    /// The failure, if any, as an error.
    pub fn into_result(self) -> Result<Vec<Embedding>> {
        match self.outcome {
            PipelineOutcome::Materialized { copies } => Ok(copies),
            PipelineOutcome::Failed { step, detail } => Err(Error::StepFailed { step, detail }),
        }
    }
}

struct Run<'a> {
    col: &'a TwoColouring,
    h: &'a PatternGraph,
    budget: &'a Budget,
    trace: Vec<TraceStep>,
}

impl Run<'_> {
    fn record(&mut self, step: &str, sizes: &[(&str, usize)], detail: String) {
        self.trace.push(TraceStep {
            step: step.into(),
            sizes: sizes.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            detail,
        });
    }

    fn fail(self, step: &str, detail: String) -> PipelineReport {
        PipelineReport {
            trace: self.trace,
            outcome: PipelineOutcome::Failed {
                step: step.into(),
                detail,
            },
        }
    }

    /// Greedy maximal collection of disjoint blue copies inside `within`.
    fn greedy(&self, within: VertexSet) -> Result<Vec<Embedding>> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(c) = find_mono_copy_within(self.col, self.h, Colour::Blue, rest, self.budget)? {
            rest -= c.image();
            out.push(c);
        }
        Ok(out)
    }
}

fn check_certificate(col: &TwoColouring, h: &PatternGraph, cert: &AbsorberCertificate, budget: &Budget) -> Result<()> {
    if cert.host_order != col.order() || cert.host_digest != crate::absorb::host_digest(col.blue()) {
        return Err(Error::Precondition("absorber certificate was issued for a different host".into()));
    }
    if canonical_key(&cert.pattern) != canonical_key(&h.graph) {
        return Err(Error::Precondition("absorber certificate is for a different pattern".into()));
    }
    if !cert.absorber.is_disjoint(&cert.reservoir) {
        return Err(Error::Precondition("absorber and reservoir overlap".into()));
    }
    let v = verify_absorber(col.blue(), cert.absorber, cert.reservoir, cert.radius, h, budget)?;
    if !v.is_certified() {
        return Err(Error::Precondition("absorber does not absorb subsets of the stated reservoir".into()));
    }
    Ok(())
}

/// Runs the cover, promote and absorb procedure for `r(G, nH)` on a colouring
/// without red `G`, using the certified blue absorber `A` with reservoir `B`.
/// `desk_r` stands in for `r(G, H)` in the residual bound and the promotion
/// threshold. Steps that cannot be carried out end the run with a failed
/// outcome and the trace so far.
pub fn run_asymmetric_pipeline(
    col: &TwoColouring,
    g: &PatternGraph,
    h: &PatternGraph,
    cert: &AbsorberCertificate,
    desk_r: usize,
    budget: &Budget,
) -> Result<PipelineReport> {
    if let Some(c) = find_mono_copy(col, g, Colour::Red, budget)? {
        return Err(Error::Precondition(format!("colouring has a red G at {:?}", c.host_map)));
    }
    check_certificate(col, h, cert, budget)?;
    let k = h.k;
    let a = cert.absorber;
    let mut b = cert.reservoir;
    let mut run = Run {
        col,
        h,
        budget,
        trace: Vec::new(),
    };
    run.record("absorber", &[("A", a.len()), ("B", b.len())], format!("radius {}", cert.radius));

    let outside = col.vertices() - (a | b);
    let mut copies = run.greedy(outside)?;
    let c: VertexSet = copies.iter().fold(VertexSet::EMPTY, |s, e| s | e.image());
    let mut d = outside - c;
    run.record("cover", &[("C", c.len()), ("D", d.len()), ("copies", copies.len())], "maximal blue H collection outside A and B".into());
    if d.len() > desk_r {
        let detail = format!("|D| = {} > r(G,H) = {desk_r}", d.len());
        run.record("residual", &[("D", d.len()), ("bound", desk_r)], detail.clone());
        return Ok(run.fail("residual", detail));
    }
    run.record("residual", &[("D", d.len()), ("bound", desk_r)], format!("|D| = {} <= {desk_r}", d.len()));

    // promote vertices of D with many blue neighbours in B
    let mut promoted = 0;
    loop {
        let pick = d.iter().find(|&v| (col.blue().neighbours(v) & b).len() >= desk_r);
        let Some(v) = pick else { break };
        let nb = col.blue().neighbours(v) & b;
        let found = Search::new(col.blue(), &h.graph).within(nb).symmetry(false).first(budget)?;
        let Some(mut map) = found else {
            let detail = format!("vertex {v} has {} blue neighbours in B but no blue H among them", nb.len());
            run.record("promotion", &[("B", b.len()), ("D", d.len())], detail.clone());
            return Ok(run.fail("promotion", detail));
        };
        map[0] = v;
        let e = Embedding::new(map, Some(Colour::Blue));
        debug_assert!(is_valid_in(col, &h.graph, &e));
        b -= e.image();
        d.remove(v);
        copies.push(e);
        promoted += 1;
    }
    let c_prime: VertexSet = copies.iter().fold(VertexSet::EMPTY, |s, e| s | e.image());
    run.record(
        "promotion",
        &[("promoted", promoted), ("B'", b.len()), ("C'", c_prime.len()), ("D'", d.len())],
        format!("vertices left in D' have fewer than {desk_r} blue neighbours in B'"),
    );

    let fam = derived_families(&g.graph).d;
    for m in fam.members() {
        let mp = PatternGraph::new(m.clone())?;
        if let Some(c) = find_mono_copy_within(col, &mp, Colour::Red, d, budget)? {
            let detail = format!("red member of D(G) on {:?} inside D'", c.host_map);
            run.record("family", &[("D'", d.len())], detail.clone());
            return Ok(run.fail("family", detail));
        }
    }
    run.record("family", &[("D'", d.len())], "no red member of D(G) in D'".into());
    let covered = (a | b | c_prime).len();
    run.record(
        "count",
        &[("A+B'+C'", covered), ("n|H|", (covered / k) * k)],
        format!("room for {} disjoint copies", covered / k),
    );

    let inner = run.greedy(b)?;
    let rest = inner.iter().fold(b, |s, e| s - e.image());
    if rest.len() > cert.radius {
        let detail = format!("|R| = {} exceeds the absorber radius {}", rest.len(), cert.radius);
        run.record("absorb", &[("R", rest.len())], detail.clone());
        return Ok(run.fail("absorb", detail));
    }
    let target = a | rest;
    let stored = cert.witnesses.iter().find(|w| w.subset == rest).map(|w| {
        let mut t: Tiling = w.tiling.clone();
        for c in &mut t.copies {
            c.colour = Some(Colour::Blue);
        }
        t
    });
    let leftover = target.len() % k;
    let tiling = match stored.filter(|t| check_tiling(col.blue(), &h.graph, target, t, leftover)) {
        Some(t) => t,
        None => match find_tiling_in(col, Colour::Blue, h, target, false, budget)? {
            Some(t) => t,
            None => {
                let detail = format!("no tiling of A together with R = {:?}", rest.to_vec());
                run.record("absorb", &[("R", rest.len())], detail.clone());
                return Ok(run.fail("absorb", detail));
            }
        },
    };
    copies.extend(inner);
    copies.extend(tiling.copies);
    let used = copies.iter().try_fold(VertexSet::EMPTY, |s, e| {
        if !s.is_disjoint(&e.image()) || !is_valid_in(col, &h.graph, e) {
            None
        } else {
            Some(s | e.image())
        }
    });
    if used.is_none() {
        return Err(Error::ConstructionFailed("pipeline copies overlap or are not blue".into()));
    }
    run.record(
        "absorb",
        &[("R", rest.len()), ("copies", copies.len())],
        format!("blue {}H", copies.len()),
    );
    Ok(PipelineReport {
        trace: run.trace,
        outcome: PipelineOutcome::Materialized { copies },
    })
}
