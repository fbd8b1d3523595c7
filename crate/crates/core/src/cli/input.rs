//! Parsing of command-line values: pattern shorthand, vertex sets, rationals.

use std::path::Path;

use num_rational::Rational64;

use crate::bitset::VertexSet;
use crate::constructions::build_hk;
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TwoColouring};
use crate::pattern::PatternGraph;

fn bad(msg: String) -> Error {
    Error::Precondition(msg)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `K<n>`, `P<n>`, `C<n>`, `S<n>` (star with n leaves), `Hk<ℓ>` or `@file`.
pub fn parse_graph(spec: &str) -> Result<SimpleGraph> {
    if let Some(path) = spec.strip_prefix('@') {
        return SimpleGraph::parse(&read(Path::new(path))?);
    }
    let number = |prefix: &str| -> Option<usize> { spec.strip_prefix(prefix).and_then(|s| s.parse().ok()) };
    if let Some(l) = number("Hk") {
        return Ok(build_hk(l)?.graph);
    }
    let g = if let Some(n) = number("K") {
        SimpleGraph::complete(n)
    } else if let Some(n) = number("P") {
        SimpleGraph::path(n)
    } else if let Some(n) = number("C") {
        if n < 3 {
            return Err(bad(format!("cycle needs at least 3 vertices: `{spec}`")));
        }
        SimpleGraph::cycle(n)
    } else if let Some(n) = number("S") {
        SimpleGraph::star(n)
    } else {
        return Err(bad(format!("unknown pattern `{spec}` (expected K<n>, P<n>, C<n>, S<n>, Hk<l> or @file)")));
    };
    if g.order() == 0 {
        return Err(bad(format!("pattern `{spec}` is empty")));
    }
    Ok(g)
}

pub fn parse_pattern(spec: &str) -> Result<PatternGraph> {
    PatternGraph::new(parse_graph(spec)?)
}

pub fn read_colouring(path: &Path) -> Result<TwoColouring> {
    TwoColouring::parse(&read(path)?)
}

/// Comma-separated vertices and inclusive ranges, e.g. `0-4,7,9`. Empty
/// string or `-` is the empty set.
pub fn parse_set(text: &str) -> Result<VertexSet> {
    let mut out = VertexSet::EMPTY;
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(out);
    }
    for part in text.split(',') {
        let part = part.trim();
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (part, part),
        };
        let lo: usize = lo.parse().map_err(|_| bad(format!("bad vertex `{part}`")))?;
        let hi: usize = hi.parse().map_err(|_| bad(format!("bad vertex `{part}`")))?;
        if lo > hi || hi >= crate::bitset::MAX_VERTICES {
            return Err(bad(format!("bad vertex range `{part}`")));
        }
        for v in lo..=hi {
            out.insert(v);
        }
    }
    Ok(out)
}

/// `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let err = || bad(format!("bad rational `{text}`"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| err())?;
            let q: i64 = q.trim().parse().map_err(|_| err())?;
            if q == 0 {
                return Err(err());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(text.trim().parse().map_err(|_| err())?)),
    }
}
