use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::{binomial, for_each_subset, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::matching::saturating_matching;

/// Largest number of `ℓ`-subsets of `X` checked by [`verify_template`].
pub const TEMPLATE_SUBSET_LIMIT: u64 = 1_000_000;
pub const TEMPLATE_SEEDS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemplateMode {
    Random,
    Complete,
}

/// Bipartite template: left side `X = 0..2ℓ`, `Y = 2ℓ..4ℓ`; right side
/// `Z = 0..3ℓ`. `left_adj[i]` is the set of `Z`-indices adjacent to left
/// vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub ell: usize,
    pub left_adj: Vec<VertexSet>,
}

impl Template {
    pub fn complete(ell: usize) -> Result<Self> {
        check_ell(ell)?;
        Ok(Template {
            ell,
            left_adj: vec![VertexSet::range(0, 3 * ell); 4 * ell],
        })
    }

    pub fn empty(ell: usize) -> Result<Self> {
        check_ell(ell)?;
        Ok(Template {
            ell,
            left_adj: vec![VertexSet::EMPTY; 4 * ell],
        })
    }

    pub fn x(&self) -> std::ops::Range<usize> {
        0..2 * self.ell
    }

    pub fn y(&self) -> std::ops::Range<usize> {
        2 * self.ell..4 * self.ell
    }

    pub fn z_len(&self) -> usize {
        3 * self.ell
    }

    pub fn add_edge(&mut self, left: usize, z: usize) {
        self.left_adj[left].insert(z);
    }

    pub fn remove_edge(&mut self, left: usize, z: usize) {
        self.left_adj[left].remove(z);
    }

    /// Edges as (left, z) pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.left_adj
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |z| (i, z)))
            .collect()
    }

    pub fn z_degree(&self, z: usize) -> usize {
        self.left_adj.iter().filter(|s| s.contains(z)).count()
    }

    pub fn max_degree(&self) -> usize {
        let left = self.left_adj.iter().map(|s| s.len()).max().unwrap_or(0);
        let right = (0..self.z_len()).map(|z| self.z_degree(z)).max().unwrap_or(0);
        left.max(right)
    }

    /// Matching of `X' ∪ Y` (in that order) into `Z`, if perfect.
    pub fn matching_for(&self, x_prime: &[usize]) -> Option<Vec<usize>> {
        let left: Vec<VertexSet> = x_prime
            .iter()
            .copied()
            .chain(self.y())
            .map(|i| self.left_adj[i])
            .collect();
        saturating_matching(&left)
    }
}

fn check_ell(ell: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::Precondition("ell must be at least 1".into()));
    }
    if 4 * ell > MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "template ell",
            got: ell,
            limit: MAX_VERTICES / 4,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateVerdict {
    pub ok: bool,
    pub subsets_checked: u64,
    pub first_failure: Option<Vec<usize>>,
}

/// Checks every `ℓ`-subset `X'` of `X` (lexicographic order) for a perfect
/// matching between `X' ∪ Y` and `Z`; stops at the first failure.
pub fn verify_template(t: &Template) -> Result<TemplateVerdict> {
    check_ell(t.ell)?;
    let total = binomial(2 * t.ell, t.ell);
    if total > TEMPLATE_SUBSET_LIMIT {
        return Err(Error::SizeLimit {
            what: "template subsets",
            got: total as usize,
            limit: TEMPLATE_SUBSET_LIMIT as usize,
        });
    }
    let pool: Vec<usize> = t.x().collect();
    let mut checked = 0;
    let mut failure = None;
    for_each_subset(&pool, t.ell, |sub| {
        checked += 1;
        if t.matching_for(sub).is_none() {
            failure = Some(sub.to_vec());
            return false;
        }
        true
    });
    Ok(TemplateVerdict {
        ok: failure.is_none(),
        subsets_checked: checked,
        first_failure: failure,
    })
}

/// Random candidates: every left vertex picks `max(1, ⌊3·cap/4⌋)` distinct
/// `Z`-vertices among those still below degree `cap`. Seeds `seed`,
/// `seed + 1`, ... up to [`TEMPLATE_SEEDS`] attempts.
pub fn build_template(ell: usize, max_degree_cap: usize, seed: u64, mode: TemplateMode) -> Result<Template> {
    check_ell(ell)?;
    if mode == TemplateMode::Complete {
        let t = Template::complete(ell)?;
        let v = verify_template(&t)?;
        debug_assert!(v.ok);
        return Ok(t);
    }
    if binomial(2 * ell, ell) > TEMPLATE_SUBSET_LIMIT {
        return Err(Error::SizeLimit {
            what: "template subsets",
            got: binomial(2 * ell, ell) as usize,
            limit: TEMPLATE_SUBSET_LIMIT as usize,
        });
    }
    let d = (3 * max_degree_cap / 4).max(1);
    for attempt in 0..TEMPLATE_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        if let Some(t) = sample(ell, d, max_degree_cap, &mut rng) {
            if verify_template(&t)?.ok {
                return Ok(t);
            }
        }
    }
    Err(Error::BudgetExhausted {
        attempts: TEMPLATE_SEEDS as usize,
        context: format!("random template with ell={ell}, degree cap {max_degree_cap}"),
    })
}

fn sample(ell: usize, d: usize, cap: usize, rng: &mut ChaCha8Rng) -> Option<Template> {
    let mut t = Template::empty(ell).ok()?;
    let mut load = vec![0usize; 3 * ell];
    for i in 0..4 * ell {
        let mut open: Vec<usize> = (0..3 * ell).filter(|&z| load[z] < cap).collect();
        if open.len() < d {
            return None;
        }
        open.shuffle(rng);
        for &z in &open[..d] {
            t.add_edge(i, z);
            load[z] += 1;
        }
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// Hall's condition checked over every subset of the left side.
    fn hall_oracle(t: &Template, x_prime: &[usize]) -> bool {
        let left: Vec<usize> = x_prime.iter().copied().chain(t.y()).collect();
        (0u32..1 << left.len()).all(|mask| {
            let mut nb = VertexSet::EMPTY;
            let mut size = 0;
            for (j, &i) in left.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    nb |= t.left_adj[i];
                    size += 1;
                }
            }
            nb.len() >= size
        })
    }

    #[test]
    fn complete_templates_pass() {
        for ell in 1..=6 {
            let v = verify_template(&Template::complete(ell).unwrap()).unwrap();
            assert!(v.ok);
            assert_eq!(v.subsets_checked, binomial(2 * ell, ell));
        }
    }

    #[test]
    fn random_template_at_four() {
        let t = build_template(4, 6, 1, TemplateMode::Random).unwrap();
        assert!(t.max_degree() <= 6);
        let pool: Vec<usize> = t.x().collect();
        let mut n = 0;
        for_each_subset(&pool, 4, |s| {
            assert!(hall_oracle(&t, s));
            n += 1;
            true
        });
        assert_eq!(n, 70);
    }

    #[test]
    fn degree_one_cap_exhausts() {
        assert!(matches!(
            build_template(2, 1, 0, TemplateMode::Random),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn deleting_edges_breaks_a_subset() {
        let mut t = build_template(3, 6, 7, TemplateMode::Random).unwrap();
        // strip Y-vertex 6 down to nothing: no X' can be matched
        for z in 0..t.z_len() {
            t.remove_edge(6, z);
        }
        let v = verify_template(&t).unwrap();
        assert!(!v.ok);
        assert_eq!(v.first_failure, Some(vec![0, 1, 2]));
        // isolating a single X vertex only breaks subsets containing it
        let mut t = Template::complete(3).unwrap();
        for z in 0..9 {
            t.remove_edge(2, z);
        }
        let v = verify_template(&t).unwrap();
        assert_eq!(v.first_failure, Some(vec![0, 1, 2]));
        assert_eq!(v.subsets_checked, 1);
        let mut t = Template::complete(3).unwrap();
        for z in 0..9 {
            t.remove_edge(3, z);
        }
        assert_eq!(verify_template(&t).unwrap().first_failure, Some(vec![0, 1, 3]));
    }

    #[test]
    fn matching_agrees_with_hall() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let ell = rng.gen_range(1..=3);
            let mut t = Template::empty(ell).unwrap();
            for i in 0..4 * ell {
                for z in 0..3 * ell {
                    if rng.gen_bool(0.35) {
                        t.add_edge(i, z);
                    }
                }
            }
            let pool: Vec<usize> = t.x().collect();
            for_each_subset(&pool, ell, |s| {
                assert_eq!(t.matching_for(s).is_some(), hall_oracle(&t, s));
                true
            });
        }
    }

    #[test]
    fn validity_monotone_under_edge_addition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut valid_seen = 0;
        for _ in 0..100 {
            let ell = rng.gen_range(1..=4);
            let mut t = Template::empty(ell).unwrap();
            for i in 0..4 * ell {
                for z in 0..3 * ell {
                    if rng.gen_bool(0.6) {
                        t.add_edge(i, z);
                    }
                }
            }
            if !verify_template(&t).unwrap().ok {
                continue;
            }
            valid_seen += 1;
            let mut sup = t.clone();
            for _ in 0..5 {
                sup.add_edge(rng.gen_range(0..4 * ell), rng.gen_range(0..3 * ell));
                assert!(verify_template(&sup).unwrap().ok);
            }
        }
        assert!(valid_seen > 10);
    }

    #[test]
    fn size_limit() {
        let t = Template::complete(12).unwrap();
        assert!(matches!(verify_template(&t), Err(Error::SizeLimit { .. })));
    }
}
