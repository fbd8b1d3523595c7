use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::template::{build_template, Template, TemplateMode};
use super::verify::{host_digest, AbsorberCertificate, SubsetWitness};
use crate::bitset::{binomial, for_each_subset, VertexSet};
use crate::budget::Budget;
use crate::density::dependent_random_choice;
use crate::embed::{Embedding, Search};
use crate::error::{Error, Result};
use crate::graph::{Colour, SimpleGraph, TwoColouring};
use crate::pattern::PatternGraph;
use crate::tiling::{check_tiling, find_tiling, Tiling};

/// Reduced parameters for the general absorber pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeskScale {
    /// Absorption radius `r`.
    pub radius: usize,
    /// `|U|`.
    pub reservoir: usize,
    /// Template parameter: `|X| = |Y| = 2ℓ`, `|Z| = 3ℓ(k − 1)`.
    pub ell: usize,
    pub template_mode: TemplateMode,
    pub template_cap: usize,
    /// Common-neighbourhood size demanded from dependent random choice.
    pub common: usize,
    /// Lower bound on the dependent-random-choice set.
    pub drc_size: usize,
    pub seed: u64,
    pub attempts: u64,
    /// Upper bound on `|A|`.
    pub cap: usize,
}

impl DeskScale {
    /// Smallest workable choice: `ℓ = r(k − 1)`, random template of degree at most 3.
    pub fn new(k: usize, radius: usize, reservoir: usize) -> Self {
        let ell = (radius * (k - 1)).max(1);
        let mut s = DeskScale {
            radius,
            reservoir,
            ell,
            template_mode: TemplateMode::Random,
            template_cap: 3,
            common: k * k,
            drc_size: 0,
            seed: 0,
            attempts: 64,
            cap: 0,
        };
        s.refresh(k);
        s
    }

    /// Recomputes `drc_size` and `cap` after changing the template fields.
    pub fn refresh(&mut self, k: usize) {
        let edges = self.max_template_edges();
        let ell = self.ell;
        self.cap = 4 * ell + 3 * ell * (k - 1) + edges * k * k;
        self.drc_size = self.reservoir + 4 * ell + 3 * ell * (k - 1) + edges * k;
    }

    pub fn max_template_edges(&self) -> usize {
        match self.template_mode {
            TemplateMode::Complete => 4 * self.ell * 3 * self.ell,
            TemplateMode::Random => 4 * self.ell * (3 * self.template_cap / 4).max(1),
        }
    }
}

/// Local absorber attached to one template edge `(v, Z_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalUnit {
    /// Template left index and `Z`-part index.
    pub edge: (usize, usize),
    /// The copy `H_e` (`u_j` = image of pattern vertex `j`).
    pub h_copy: Embedding,
    /// `v_1, …, v_k`: the left vertex followed by `Z_i`.
    pub labels: Vec<usize>,
    /// Per pair `(u_j, v_j)` a copy of `H` in the common neighbourhood; the
    /// image of `doubled` is dropped and the rest is the switcher interior.
    pub switch_copies: Vec<Vec<usize>>,
    pub doubled: usize,
}

impl LocalUnit {
    pub fn interior(&self, j: usize) -> VertexSet {
        let mut s: VertexSet = self.switch_copies[j].iter().collect();
        s.remove(self.switch_copies[j][self.doubled]);
        s
    }

    pub fn vertices(&self) -> VertexSet {
        (0..self.labels.len()).fold(self.h_copy.image(), |a, j| a | self.interior(j))
    }

    fn switched(&self, j: usize, end: usize) -> Embedding {
        let mut m = self.switch_copies[j].clone();
        m[self.doubled] = end;
        Embedding::new(m, None)
    }

    /// Perfect tiling of `L_e ∪ {v} ∪ Z_i` (`absorbing`) or of `L_e`.
    fn tiling_copies(&self, absorbing: bool) -> Vec<Embedding> {
        let mut out = Vec::new();
        if absorbing {
            out.push(self.h_copy.clone());
        }
        for j in 0..self.labels.len() {
            let end = if absorbing { self.labels[j] } else { self.h_copy.host_map[j] };
            out.push(self.switched(j, end));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralAbsorber {
    pub colour: Colour,
    pub seed: u64,
    /// Dependent-random-choice set.
    pub drc_set: VertexSet,
    /// Vertices marked during low-degree deletion.
    pub marked: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z_parts: Vec<Vec<usize>>,
    pub template: Template,
    pub units: Vec<LocalUnit>,
    pub certificate: AbsorberCertificate,
}

impl GeneralAbsorber {
    pub fn absorber(&self) -> VertexSet {
        self.certificate.absorber
    }

    pub fn reservoir(&self) -> VertexSet {
        self.certificate.reservoir
    }
}

/// Builds an `(H, r)`-absorber in colour class `colour` of `col`, following
/// the dependent-random-choice pipeline with desk-scale sizes, and certifies
/// it over every `R ⊆ U` with `|R| ≤ r`.
pub fn assemble_general_absorber(
    col: &TwoColouring,
    colour: Colour,
    g: &PatternGraph,
    h: &PatternGraph,
    scale: &DeskScale,
    budget: &Budget,
) -> Result<GeneralAbsorber> {
    let k = g.k.max(h.k);
    if k < 2 {
        return Err(Error::Precondition("patterns need at least two vertices".into()));
    }
    if let Some(copy) = Search::new(col.class(colour.other()), &g.graph).first(budget)? {
        return Err(Error::HypothesisFails(format!(
            "the {} class contains G at {:?}",
            colour.other(),
            copy
        )));
    }
    let subsets: u64 = (0..=scale.radius.min(scale.reservoir)).map(|i| binomial(scale.reservoir, i)).sum();
    if subsets > super::verify::DEFAULT_SUBSET_LIMIT {
        return Err(Error::SizeLimit {
            what: "absorber subsets",
            got: subsets as usize,
            limit: super::verify::DEFAULT_SUBSET_LIMIT as usize,
        });
    }
    let host = col.class(colour);
    let mut last = None;
    for attempt in 0..scale.attempts {
        let seed = scale.seed.wrapping_add(attempt);
        match attempt_once(host, colour, h, scale, seed, budget) {
            Ok(Some(a)) => {
                if a.absorber().len() > scale.cap {
                    return Err(Error::ConstructionFailed(format!(
                        "absorber has {} vertices, cap {}",
                        a.absorber().len(),
                        scale.cap
                    )));
                }
                return Ok(a);
            }
            Ok(None) => {}
            Err(e @ (Error::HypothesisFails(_) | Error::Timeout { .. } | Error::SizeLimit { .. })) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::BudgetExhausted {
        attempts: scale.attempts as usize,
        context: match last {
            Some(e) => format!("general absorber; last failure: {e}"),
            None => "general absorber: no seed produced a certified absorber".into(),
        },
    })
}

fn pick(pool: VertexSet, size: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let mut v = pool.to_vec();
    if v.len() < size {
        return None;
    }
    v.shuffle(rng);
    let mut out = v[..size].to_vec();
    out.sort_unstable();
    Some(out)
}

fn attempt_once(
    host: &SimpleGraph,
    colour: Colour,
    h: &PatternGraph,
    scale: &DeskScale,
    seed: u64,
    budget: &Budget,
) -> Result<Option<GeneralAbsorber>> {
    let k = h.k;
    let ell = scale.ell;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let drc = dependent_random_choice(host, 2, 2, scale.common, scale.drc_size, seed, 1)?;

    // low-degree deletion
    let mut v = drc;
    let mut marked = Vec::new();
    while let Some(w) = v.iter().find(|&w| (host.neighbours(w) & v).len() < v.len() / k) {
        marked.push(w);
        v -= host.neighbours(w);
        v.remove(w);
    }

    let Some(u) = pick(v, scale.reservoir, &mut rng) else { return Ok(None) };
    let u: VertexSet = u.into_iter().collect();
    let min_deg = scale.reservoir.div_ceil(2 * k);
    if u.iter().any(|w| (host.neighbours(w) & u).len() < min_deg) {
        return Ok(None);
    }

    let Some(x) = pick(v - u, 2 * ell, &mut rng) else { return Ok(None) };
    let xs: VertexSet = x.iter().collect();
    let needed = scale.radius.min(1) * (k - 1);
    if u.iter().any(|w| (host.neighbours(w) & xs).len() < needed) {
        return Ok(None);
    }
    let Some(y) = pick(v - u - xs, 2 * ell, &mut rng) else { return Ok(None) };
    let ys: VertexSet = y.iter().collect();
    let Some(z) = pick(v - u - xs - ys, 3 * ell * (k - 1), &mut rng) else { return Ok(None) };
    let z_parts: Vec<Vec<usize>> = z.chunks(k - 1).map(|c| c.to_vec()).collect();

    let template = build_template(ell, scale.template_cap, seed, scale.template_mode)?;
    let left: Vec<usize> = x.iter().chain(&y).copied().collect();
    let mut a = xs | ys | z.iter().collect();

    let doubled = (0..k)
        .max_by_key(|&p| (h.graph.degree(p), std::cmp::Reverse(p)))
        .expect("non-empty pattern");
    let mut units = Vec::new();
    for (li, zi) in template.edges() {
        let free = v - a - u;
        let Some(h_map) = Search::new(host, &h.graph).within(free).first(budget)? else { return Ok(None) };
        let h_copy = Embedding::new(h_map, None);
        a |= h_copy.image();
        let labels: Vec<usize> = std::iter::once(left[li]).chain(z_parts[zi].iter().copied()).collect();
        let mut switch_copies = Vec::with_capacity(k);
        for j in 0..k {
            let common = host.neighbours(h_copy.host_map[j]) & host.neighbours(labels[j]);
            let outside = host.vertices() - a - u - v;
            let mut found = None;
            for pool in [common & outside, common - a - u] {
                found = Search::new(host, &h.graph).within(pool).first(budget)?;
                if found.is_some() {
                    break;
                }
            }
            let Some(m) = found else { return Ok(None) };
            for (p, &w) in m.iter().enumerate() {
                if p != doubled {
                    a.insert(w);
                }
            }
            switch_copies.push(m);
        }
        units.push(LocalUnit {
            edge: (li, zi),
            h_copy,
            labels,
            switch_copies,
            doubled,
        });
    }

    let structure = Structure {
        host,
        h,
        ell,
        x: &x,
        y: &y,
        template: &template,
        units: &units,
        absorber: a,
    };
    let Some(certificate) = structure.certify(u, scale.radius, budget)? else { return Ok(None) };
    Ok(Some(GeneralAbsorber {
        colour,
        seed,
        drc_set: drc,
        marked,
        x,
        y,
        z_parts,
        template,
        units,
        certificate,
    }))
}

struct Structure<'a> {
    host: &'a SimpleGraph,
    h: &'a PatternGraph,
    ell: usize,
    x: &'a [usize],
    y: &'a [usize],
    template: &'a Template,
    units: &'a [LocalUnit],
    absorber: VertexSet,
}

impl Structure<'_> {
    /// Tiling of `A ∪ R` routed through the template: cover `R` with copies
    /// using `X`, shrink `X` to between `ℓ` and `ℓ + k − 1` free vertices, and
    /// match the lowest `ℓ` of them together with `Y` into the `Z`-parts.
    fn route(&self, r: VertexSet, budget: &Budget) -> Result<Option<Tiling>> {
        let k = self.h.k;
        let mut free: VertexSet = self.x.iter().collect();
        let mut copies = Vec::new();
        for w in r.iter() {
            let mut hit = None;
            for p in 0..k {
                let s = Search::new(self.host, &self.h.graph)
                    .within(free | VertexSet::singleton(w))
                    .restrict(p, VertexSet::singleton(w));
                if let Some(m) = s.first(budget)? {
                    hit = Some(m);
                    break;
                }
            }
            let Some(m) = hit else { return Ok(None) };
            let e = Embedding::new(m, None);
            free -= e.image();
            copies.push(e);
        }
        while free.len() > self.ell + k - 1 {
            let Some(m) = Search::new(self.host, &self.h.graph).within(free).first(budget)? else {
                return Ok(None);
            };
            let e = Embedding::new(m, None);
            free -= e.image();
            copies.push(e);
        }
        if free.len() < self.ell {
            return Ok(None);
        }
        let chosen: Vec<usize> = free.iter().take(self.ell).collect();
        let leftover = free - chosen.iter().collect();
        let x_prime: Vec<usize> = chosen
            .iter()
            .map(|w| self.x.iter().position(|q| q == w).expect("x vertex"))
            .collect();
        let Some(matching) = self.template.matching_for(&x_prime) else { return Ok(None) };
        let matched_left: Vec<usize> = x_prime.iter().copied().chain(2 * self.ell..4 * self.ell).collect();
        let partner = |li: usize| matched_left.iter().position(|&q| q == li).map(|pos| matching[pos]);
        for unit in self.units {
            let (li, zi) = unit.edge;
            copies.extend(unit.tiling_copies(partner(li) == Some(zi)));
        }
        debug_assert_eq!(self.y.len(), 2 * self.ell);
        Ok(Some(Tiling { copies, leftover }))
    }

    fn certify(&self, u: VertexSet, radius: usize, budget: &Budget) -> Result<Option<AbsorberCertificate>> {
        let pool = u.to_vec();
        let mut subsets = Vec::new();
        for size in 0..=radius.min(pool.len()) {
            for_each_subset(&pool, size, |s| {
                subsets.push(s.iter().collect::<VertexSet>());
                true
            });
        }
        let k = self.h.k;
        let results: Vec<Result<Option<Tiling>>> = subsets
            .par_iter()
            .map(|&r| {
                let target = self.absorber | r;
                let routed = self.route(r, budget)?;
                let leftover = target.len() % k;
                match routed {
                    Some(t) if check_tiling(self.host, &self.h.graph, target, &t, leftover) => Ok(Some(t)),
                    _ => find_tiling(self.host, self.h, target, false, budget),
                }
            })
            .collect();
        let mut witnesses = Vec::with_capacity(subsets.len());
        for (subset, res) in subsets.into_iter().zip(results) {
            match res? {
                Some(tiling) => witnesses.push(SubsetWitness { subset, tiling }),
                None => return Ok(None),
            }
        }
        Ok(Some(AbsorberCertificate {
            absorber: self.absorber,
            reservoir: u,
            radius,
            pattern: self.h.graph.clone(),
            host_order: self.host.order(),
            host_digest: host_digest(self.host),
            subsets_checked: witnesses.len() as u64,
            witnesses_stored: true,
            witnesses,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorb::verify_absorber;
    use rand::Rng;

    /// Red is a sparse random bipartite graph (so triangle-free), blue the rest.
    fn blue_dominated(n: usize, p: f64, seed: u64) -> TwoColouring {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut red = SimpleGraph::empty(n);
        for a in 0..n / 2 {
            for b in n / 2..n {
                if rng.gen_bool(p) {
                    red.add_edge(a, b);
                }
            }
        }
        TwoColouring::from_red(red)
    }

    fn check_certificate(col: &TwoColouring, h: &PatternGraph, a: &GeneralAbsorber) {
        let host = col.class(Colour::Blue);
        let c = &a.certificate;
        assert!(c.absorber.is_disjoint(&c.reservoir));
        for w in &c.witnesses {
            let target = c.absorber | w.subset;
            assert!(check_tiling(host, &h.graph, target, &w.tiling, target.len() % h.k));
        }
    }

    #[test]
    fn all_blue_triangles() {
        let col = TwoColouring::monochromatic(200, Colour::Blue);
        let h = PatternGraph::complete(3);
        let scale = DeskScale::new(3, 1, 6);
        let a = assemble_general_absorber(&col, Colour::Blue, &h, &h, &scale, &Budget::default()).unwrap();
        assert_eq!(a.certificate.subsets_checked, 7);
        assert!(a.absorber().len() <= scale.cap);
        check_certificate(&col, &h, &a);
    }

    #[test]
    fn blue_dominated_edges_radius_two() {
        let col = blue_dominated(120, 0.1, 3);
        let g = PatternGraph::complete(3);
        let h = PatternGraph::complete(2);
        let scale = DeskScale::new(2, 2, 5);
        let b = Budget::default();
        let a = assemble_general_absorber(&col, Colour::Blue, &g, &h, &scale, &b).unwrap();
        assert_eq!(a.certificate.subsets_checked, 16);
        check_certificate(&col, &h, &a);
        // independent check with the generic packer
        let v = verify_absorber(col.class(Colour::Blue), a.absorber(), a.reservoir(), 2, &h, &b).unwrap();
        assert!(v.is_certified());
    }

    #[test]
    fn red_clique_fails_hypothesis() {
        let mut red = SimpleGraph::empty(30);
        for i in 0..4 {
            for j in i + 1..4 {
                red.add_edge(i, j);
            }
        }
        let col = TwoColouring::from_red(red);
        let g = PatternGraph::complete(4);
        let h = PatternGraph::complete(3);
        let r = assemble_general_absorber(&col, Colour::Blue, &g, &h, &DeskScale::new(4, 1, 4), &Budget::default());
        assert!(matches!(r, Err(Error::HypothesisFails(_))));
    }

    #[test]
    fn too_small_host_exhausts() {
        let col = TwoColouring::monochromatic(40, Colour::Blue);
        let h = PatternGraph::complete(3);
        let mut scale = DeskScale::new(3, 1, 6);
        scale.attempts = 3;
        let r = assemble_general_absorber(&col, Colour::Blue, &h, &h, &scale, &Budget::default());
        assert!(r.is_err());
    }
}
