//! Simple graphs and red/blue colourings of complete graphs.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Undirected graph on `0..n` with one bitset row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds {MAX_VERTICES}");
        SimpleGraph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        let all = VertexSet::full(n);
        for v in 0..n {
            let mut row = all;
            row.remove(v);
            g.adj[v] = row;
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut g = Self::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range for n={}", self.n);
        assert_ne!(u, v, "self-loop at {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        set.iter().map(|v| (self.adj[v] & set).len()).sum::<usize>() / 2
    }

    /// Number of edges between disjoint sets.
    pub fn edges_between(&self, x: VertexSet, y: VertexSet) -> usize {
        x.iter().map(|v| (self.adj[v] & y).len()).sum()
    }

    /// Edge density `e(G) / C(n, 2)`; an empty or single-vertex graph has density one.
    pub fn density(&self) -> Ratio<u64> {
        let pairs = (self.n * self.n.saturating_sub(1) / 2) as u64;
        if pairs == 0 {
            return Ratio::from_integer(1);
        }
        Ratio::new(self.edge_count() as u64, pairs)
    }

    pub fn is_isolated_free(&self) -> bool {
        (0..self.n).all(|v| !self.adj[v].is_empty())
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        let all = self.vertices();
        for v in 0..self.n {
            let mut row = all - self.adj[v];
            row.remove(v);
            g.adj[v] = row;
        }
        g
    }

    /// Same vertex set, edges restricted to `keep`.
    pub fn restricted(&self, keep: VertexSet) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for v in keep.iter() {
            g.adj[v] = self.adj[v] & keep;
        }
        g
    }

    /// Induced subgraph relabelled to `0..|set|` in ascending order of the
    /// original labels. Returns the graph and the new-to-old label map.
    pub fn induced(&self, set: VertexSet) -> (SimpleGraph, Vec<usize>) {
        let map = set.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = SimpleGraph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in (self.adj[v] & set).iter() {
                g.adj[i].insert(index[w]);
            }
        }
        (g, map)
    }

    /// Deletes the vertices of `set` and relabels the rest in order.
    pub fn remove_vertices(&self, set: VertexSet) -> SimpleGraph {
        self.induced(self.vertices() - set).0
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// `copies` disjoint copies of this graph.
    pub fn times(&self, copies: usize) -> SimpleGraph {
        let mut g = SimpleGraph::empty(0);
        for _ in 0..copies {
            g = g.disjoint_union(self);
        }
        g
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Vertex sets of connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                frontier = next - comp;
                comp |= next;
            }
            left -= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Graph joining vertices at distance one or two.
    pub fn square(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for v in 0..self.n {
            let mut row = self.adj[v];
            for w in self.adj[v].iter() {
                row |= self.adj[w];
            }
            row.remove(v);
            g.adj[v] = row;
        }
        g
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(&set))
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| {
            let mut others = set;
            others.remove(v);
            others.is_subset(&self.adj[v])
        })
    }

    /// Parses the `n <count>` / `e <i> <j>` text format.
    pub fn parse(text: &str) -> Result<SimpleGraph> {
        let mut graph: Option<SimpleGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            match (parts[0], graph.as_mut()) {
                ("n", None) => {
                    let n: usize = parts
                        .get(1)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("expected `n <count>`"))?;
                    if n > MAX_VERTICES {
                        return Err(bad(&format!("order {n} exceeds {MAX_VERTICES}")));
                    }
                    graph = Some(SimpleGraph::empty(n));
                }
                ("e", Some(g)) => {
                    let ends: Vec<usize> = parts[1..]
                        .iter()
                        .map(|s| s.parse().map_err(|_| bad("bad vertex index")))
                        .collect::<Result<_>>()?;
                    if ends.len() != 2 {
                        return Err(bad("expected `e <i> <j>`"));
                    }
                    let (u, v) = (ends[0], ends[1]);
                    if u >= g.n || v >= g.n || u == v {
                        return Err(bad(&format!("invalid edge {u} {v}")));
                    }
                    g.add_edge(u, v);
                }
                ("n", Some(_)) => return Err(bad("duplicate header")),
                (_, None) => return Err(bad("missing `n <count>` header")),
                (other, _) => return Err(bad(&format!("unknown record `{other}`"))),
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            msg: "empty input".into(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        Repr {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let r = Repr::deserialize(d)?;
        if r.n > MAX_VERTICES {
            return Err(serde::de::Error::custom("graph too large"));
        }
        let mut g = SimpleGraph::empty(r.n);
        for (u, v) in r.edges {
            if u >= r.n || v >= r.n || u == v {
                return Err(serde::de::Error::custom(format!("invalid edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }
}

/// Serialized as the order plus the red edge list.
impl Serialize for TwoColouring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            red: Vec<(usize, usize)>,
        }
        Repr {
            n: self.order(),
            red: self.red.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoColouring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            red: Vec<(usize, usize)>,
        }
        let r = Repr::deserialize(d)?;
        let g = SimpleGraph::deserialize(serde_json::json!({"n": r.n, "edges": r.red})).map_err(serde::de::Error::custom)?;
        Ok(TwoColouring::from_red(g))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Colour::Red => 'R',
            Colour::Blue => 'B',
        }
    }

    pub const BOTH: [Colour; 2] = [Colour::Red, Colour::Blue];
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

impl std::str::FromStr for Colour {
    type Err = Error;
    fn from_str(s: &str) -> Result<Colour> {
        match s.to_ascii_lowercase().as_str() {
            "red" | "r" => Ok(Colour::Red),
            "blue" | "b" => Ok(Colour::Blue),
            other => Err(Error::Precondition(format!("unknown colour `{other}`"))),
        }
    }
}

/// Red/blue colouring of the edges of `K_n`. The two classes are stored as
/// complementary graphs so either colour can be searched directly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoColouring {
    red: SimpleGraph,
    blue: SimpleGraph,
}

impl TwoColouring {
    /// Every edge of `K_n` gets `colour`.
    pub fn monochromatic(n: usize, colour: Colour) -> Self {
        let full = SimpleGraph::complete(n);
        let none = SimpleGraph::empty(n);
        match colour {
            Colour::Red => TwoColouring { red: full, blue: none },
            Colour::Blue => TwoColouring { red: none, blue: full },
        }
    }

    /// Red edges are those of `red`; all other pairs are blue.
    pub fn from_red(red: SimpleGraph) -> Self {
        let blue = red.complement();
        TwoColouring { red, blue }
    }

    pub fn from_blue(blue: SimpleGraph) -> Self {
        let red = blue.complement();
        TwoColouring { red, blue }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.red.order()
    }

    pub fn vertices(&self) -> VertexSet {
        self.red.vertices()
    }

    #[inline]
    pub fn class(&self, colour: Colour) -> &SimpleGraph {
        match colour {
            Colour::Red => &self.red,
            Colour::Blue => &self.blue,
        }
    }

    pub fn red(&self) -> &SimpleGraph {
        &self.red
    }

    pub fn blue(&self) -> &SimpleGraph {
        &self.blue
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> Colour {
        assert_ne!(u, v);
        if self.red.has_edge(u, v) {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    pub fn set(&mut self, u: usize, v: usize, colour: Colour) {
        match colour {
            Colour::Red => {
                self.blue.remove_edge(u, v);
                self.red.add_edge(u, v);
            }
            Colour::Blue => {
                self.red.remove_edge(u, v);
                self.blue.add_edge(u, v);
            }
        }
    }

    pub fn flip(&mut self, u: usize, v: usize) {
        let c = self.colour(u, v);
        self.set(u, v, c.other());
    }

    /// Colours of all pairs between `x` and `y` set to `colour`.
    pub fn set_between(&mut self, x: VertexSet, y: VertexSet, colour: Colour) {
        for u in x.iter() {
            for v in y.iter() {
                if u != v {
                    self.set(u, v, colour);
                }
            }
        }
    }

    pub fn set_within(&mut self, x: VertexSet, colour: Colour) {
        for u in x.iter() {
            for v in x.iter().filter(|&v| v > u) {
                self.set(u, v, colour);
            }
        }
    }

    /// Red and blue exchanged.
    pub fn swapped(&self) -> TwoColouring {
        TwoColouring {
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }

    pub fn induced(&self, set: VertexSet) -> (TwoColouring, Vec<usize>) {
        let (red, map) = self.red.induced(set);
        (TwoColouring::from_red(red), map)
    }

    pub fn permuted(&self, perm: &[usize]) -> TwoColouring {
        TwoColouring::from_red(self.red.permuted(perm))
    }

    /// Checks the partition invariant: classes edge-disjoint and covering `K_n`.
    pub fn is_consistent(&self) -> bool {
        let n = self.order();
        self.blue.order() == n
            && (0..n).all(|v| {
                let r = self.red.neighbours(v);
                let b = self.blue.neighbours(v);
                let mut all = VertexSet::full(n);
                all.remove(v);
                r.is_disjoint(&b) && (r | b) == all
            })
    }

    /// Text format: header `n <count>`, then the colours of pairs `(i, j)`,
    /// `i > j`, in row-major lower-triangular order as `R`/`B`, 80 per line.
    pub fn to_text(&self) -> String {
        let n = self.order();
        let mut out = format!("n {n}\n");
        let mut col = 0;
        for i in 1..n {
            for j in 0..i {
                out.push(self.colour(i, j).letter());
                col += 1;
                if col == 80 {
                    out.push('\n');
                    col = 0;
                }
            }
        }
        if col > 0 {
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<TwoColouring> {
        let mut lines = text.lines().enumerate();
        let (n, header_line) = loop {
            match lines.next() {
                None => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "empty input".into(),
                    })
                }
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((i, l)) => {
                    let parts: Vec<&str> = l.split_whitespace().collect();
                    let n = match parts.as_slice() {
                        ["n", count] => count.parse::<usize>().ok(),
                        _ => None,
                    }
                    .ok_or(Error::Parse {
                        line: i + 1,
                        msg: "expected `n <count>`".into(),
                    })?;
                    break (n, i + 1);
                }
            }
        };
        if n > MAX_VERTICES {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("order {n} exceeds {MAX_VERTICES}"),
            });
        }
        let mut red = SimpleGraph::empty(n);
        let expected = n * n.saturating_sub(1) / 2;
        let mut pairs = (1..n).flat_map(|i| (0..i).map(move |j| (i, j)));
        let mut seen = 0;
        for (idx, line) in lines {
            for ch in line.trim().chars() {
                let (i, j) = pairs.next().ok_or(Error::Parse {
                    line: idx + 1,
                    msg: format!("more than {expected} colour symbols"),
                })?;
                match ch {
                    'R' => red.add_edge(i, j),
                    'B' => {}
                    other => {
                        return Err(Error::Parse {
                            line: idx + 1,
                            msg: format!("unexpected symbol `{other}`"),
                        })
                    }
                }
                seen += 1;
            }
        }
        if seen != expected {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("expected {expected} colour symbols, found {seen}"),
            });
        }
        Ok(TwoColouring::from_red(red))
    }
}

impl fmt::Debug for TwoColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoColouring(n={}, red={:?})", self.order(), self.red.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_families() {
        assert_eq!(SimpleGraph::complete(6).edge_count(), 15);
        assert_eq!(SimpleGraph::cycle(5).edge_count(), 5);
        assert_eq!(SimpleGraph::path(3).edges(), vec![(0, 1), (1, 2)]);
        let p = SimpleGraph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn induced_relabels_in_order() {
        let g = SimpleGraph::cycle(6);
        let (h, map) = g.induced([1, 2, 3, 5].into_iter().collect());
        assert_eq!(map, vec![1, 2, 3, 5]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = SimpleGraph::complete(3).disjoint_union(&SimpleGraph::path(2));
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].to_vec(), vec![3, 4]);
    }

    #[test]
    fn graph_text_round_trip() {
        let g = SimpleGraph::petersen();
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn graph_parse_errors_carry_line() {
        let err = SimpleGraph::parse("n 3\ne 0 5\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                msg: "invalid edge 0 5".into()
            }
        );
        assert!(SimpleGraph::parse("e 0 1").is_err());
    }

    #[test]
    fn colouring_text_wraps_at_80() {
        let col = TwoColouring::from_red(SimpleGraph::cycle(15));
        let text = col.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n 15");
        assert_eq!(lines[1].len(), 80);
        assert_eq!(lines[2].len(), 105 - 80);
        assert_eq!(TwoColouring::parse(&text).unwrap(), col);
    }

    #[test]
    fn colouring_lower_triangular_order() {
        // pairs in order: (1,0) (2,0) (2,1)
        let col = TwoColouring::parse("n 3\nRBR\n").unwrap();
        assert_eq!(col.colour(1, 0), Colour::Red);
        assert_eq!(col.colour(2, 0), Colour::Blue);
        assert_eq!(col.colour(2, 1), Colour::Red);
        assert!(TwoColouring::parse("n 3\nRB\n").is_err());
        assert!(TwoColouring::parse("n 3\nRBX\n").is_err());
    }

    #[test]
    fn colouring_consistency() {
        let mut col = TwoColouring::monochromatic(5, Colour::Blue);
        col.set(0, 1, Colour::Red);
        col.flip(2, 3);
        assert!(col.is_consistent());
        assert_eq!(col.red().edge_count(), 2);
        assert_eq!(col.swapped().blue().edge_count(), 2);
    }

    proptest::proptest! {
        #[test]
        fn colouring_text_round_trips(n in 0usize..40, seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut red = SimpleGraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        red.add_edge(u, v);
                    }
                }
            }
            let col = TwoColouring::from_red(red);
            let back = TwoColouring::parse(&col.to_text()).unwrap();
            proptest::prop_assert!(back.is_consistent());
            proptest::prop_assert_eq!(back, col);
        }
    }
}
