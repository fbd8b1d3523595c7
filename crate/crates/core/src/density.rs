//! Edge densities, (bi-)density checks, dense-to-bi-dense extraction and
//! dependent random choice.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{binomial, for_each_subset, VertexSet};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest order for exact density enumeration.
pub const EXACT_DENSITY_LIMIT: usize = 24;
/// Largest order for the exhaustive fallback of [`extract_bidense`].
pub const EXHAUSTIVE_EXTRACT_LIMIT: usize = 20;
pub const DEFAULT_SAMPLES: u64 = 10_000;

/// `e(X, Y) / (|X||Y|)` for disjoint non-empty `X`, `Y`.
pub fn pair_density(g: &SimpleGraph, x: VertexSet, y: VertexSet) -> Result<Rational64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(v) = (x & y).first() {
        return Err(Error::OverlappingSets(v));
    }
    let e = g.edges_between(x, y) as i64;
    Ok(Rational64::new(e, (x.len() * y.len()) as i64))
}

/// Density of `G[X]`; sets with fewer than two vertices have density one.
pub fn set_density(g: &SimpleGraph, x: VertexSet) -> Rational64 {
    let s = x.len() as i64;
    if s < 2 {
        return Rational64::one();
    }
    Rational64::new(g.edges_within(x) as i64, s * (s - 1) / 2)
}

/// `⌈eps · n⌉`, at least one.
pub fn threshold(eps: Rational64, n: usize) -> usize {
    let v = (eps * Rational64::from_integer(n as i64)).ceil().to_integer();
    v.max(1) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum DensityMode {
    Exact,
    Sampled { samples: u64, seed: u64 },
}

impl DensityMode {
    pub fn sampled(seed: u64) -> Self {
        DensityMode::Sampled {
            samples: DEFAULT_SAMPLES,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityWitness {
    /// A set of sparse density.
    Set(VertexSet),
    /// Two disjoint sets with sparse density between them.
    Pair(VertexSet, VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub holds: bool,
    pub witness: Option<DensityWitness>,
    pub mode: DensityMode,
}

fn check_params(eps: Rational64, gamma: Rational64) -> Result<()> {
    let zero = Rational64::zero();
    let one = Rational64::one();
    if eps <= zero || eps >= one || gamma < zero || gamma > one {
        return Err(Error::Precondition(format!(
            "need 0 < eps < 1 and 0 <= gamma <= 1, got eps={eps}, gamma={gamma}"
        )));
    }
    Ok(())
}

fn exact_limit(n: usize) -> Result<()> {
    if n > EXACT_DENSITY_LIMIT {
        return Err(Error::SizeLimit {
            what: "exact density enumeration",
            got: n,
            limit: EXACT_DENSITY_LIMIT,
        });
    }
    Ok(())
}

/// `e < gamma · pairs` in exact arithmetic.
#[inline]
fn below(e: usize, pairs: usize, gamma: Rational64) -> bool {
    (e as i64) * *gamma.denom() < *gamma.numer() * pairs as i64
}

/// For fixed `x`, the `t` vertices of `pool` with fewest neighbours in `x`
/// (ties by index) minimise `e(X, Y)` over `|Y| = t`.
fn sparsest_partner(g: &SimpleGraph, x: VertexSet, pool: VertexSet, t: usize) -> (VertexSet, usize) {
    let mut cands: Vec<(usize, usize)> = pool.iter().map(|v| ((g.neighbours(v) & x).len(), v)).collect();
    cands.sort_unstable();
    let y: VertexSet = cands[..t].iter().map(|&(_, v)| v).collect();
    let e = cands[..t].iter().map(|&(d, _)| d).sum();
    (y, e)
}

/// Minimum density over pairs is attained at `|X| = |Y| = t`: the density of a
/// larger pair is the average over its `t`-subsets. So it suffices to try every
/// `t`-set `X` against its sparsest partner.
fn first_sparse_pair(g: &SimpleGraph, within: VertexSet, t: usize, gamma: Rational64) -> Option<(VertexSet, VertexSet)> {
    let verts = within.to_vec();
    if 2 * t > verts.len() {
        return None;
    }
    // split on the smallest element of X; the lowest failing branch wins
    let hits: Vec<Option<(VertexSet, VertexSet)>> = (0..verts.len())
        .into_par_iter()
        .map(|first| {
            let mut found = None;
            for_each_subset(&verts[first + 1..], t - 1, |rest| {
                let mut x: VertexSet = rest.iter().collect();
                x.insert(verts[first]);
                let (y, e) = sparsest_partner(g, x, within - x, t);
                if below(e, t * t, gamma) {
                    found = Some((x, y));
                    return false;
                }
                true
            });
            found
        })
        .collect();
    hits.into_iter().flatten().next()
}

fn first_sparse_set(g: &SimpleGraph, within: VertexSet, size: usize, gamma: Rational64) -> Option<VertexSet> {
    let verts = within.to_vec();
    if size > verts.len() {
        return None;
    }
    let pairs = size * (size - 1) / 2;
    let hits: Vec<Option<VertexSet>> = (0..verts.len())
        .into_par_iter()
        .map(|first| {
            let mut found = None;
            for_each_subset(&verts[first + 1..], size - 1, |rest| {
                let mut x: VertexSet = rest.iter().collect();
                x.insert(verts[first]);
                if below(g.edges_within(x), pairs, gamma) {
                    found = Some(x);
                    return false;
                }
                true
            });
            found
        })
        .collect();
    hits.into_iter().flatten().next()
}

/// Every pair of disjoint sets of order at least `⌈eps·n⌉` has density at
/// least `gamma`.
pub fn is_bi_dense(g: &SimpleGraph, eps: Rational64, gamma: Rational64, mode: DensityMode) -> Result<DensityVerdict> {
    check_params(eps, gamma)?;
    let n = g.order();
    let t = threshold(eps, n);
    let witness = match mode {
        DensityMode::Exact => {
            exact_limit(n)?;
            first_sparse_pair(g, g.vertices(), t, gamma)
        }
        DensityMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut verts: Vec<usize> = (0..n).collect();
            let mut found = None;
            if 2 * t <= n {
                for _ in 0..samples {
                    verts.shuffle(&mut rng);
                    let x: VertexSet = verts[..t].iter().collect();
                    let (y, e) = sparsest_partner(g, x, g.vertices() - x, t);
                    if below(e, t * t, gamma) {
                        found = Some((x, y));
                        break;
                    }
                }
            }
            found
        }
    };
    Ok(DensityVerdict {
        holds: witness.is_none(),
        witness: witness.map(|(x, y)| DensityWitness::Pair(x, y)),
        mode,
    })
}

/// Every set of order at least `⌈eps·n⌉` has density at least `gamma`.
pub fn is_dense(g: &SimpleGraph, eps: Rational64, gamma: Rational64, mode: DensityMode) -> Result<DensityVerdict> {
    check_params(eps, gamma)?;
    let n = g.order();
    let size = threshold(eps, n).max(2);
    let witness = match mode {
        DensityMode::Exact => {
            exact_limit(n)?;
            first_sparse_set(g, g.vertices(), size, gamma)
        }
        DensityMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut verts: Vec<usize> = (0..n).collect();
            let mut found = None;
            if size <= n {
                let pairs = size * (size - 1) / 2;
                for _ in 0..samples {
                    verts.shuffle(&mut rng);
                    let x: VertexSet = verts[..size].iter().collect();
                    if below(g.edges_within(x), pairs, gamma) {
                        found = Some(x);
                        break;
                    }
                }
            }
            found
        }
    };
    Ok(DensityVerdict {
        holds: witness.is_none(),
        witness: witness.map(DensityWitness::Set),
        mode,
    })
}

/// Searches for `U` with `|U| = target_size` such that `G[U]` is
/// bi-`(eps, gamma/2)`-dense, certified in exact mode.
///
/// Each restart starts from a seeded random superset and repeatedly deletes
/// the vertex occurring in most sparse pairs (lowest index on ties; minimum
/// degree when no sparse pair is left). Hosts with at most
/// [`EXHAUSTIVE_EXTRACT_LIMIT`] vertices finish with an exhaustive scan.
pub fn extract_bidense(
    g: &SimpleGraph,
    eps: Rational64,
    gamma: Rational64,
    target_size: usize,
    seed: u64,
    restarts: u32,
    budget: &Budget,
) -> Result<VertexSet> {
    check_params(eps, gamma)?;
    let n = g.order();
    if target_size > n {
        return Err(Error::Precondition(format!("target {target_size} exceeds order {n}")));
    }
    exact_limit(target_size)?;
    let half = gamma / Rational64::from_integer(2);
    let t = threshold(eps, target_size);
    let certify = |u: VertexSet| -> Result<bool> {
        Ok(is_bi_dense(&g.induced(u).0, eps, half, DensityMode::Exact)?.holds)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for restart in 0..restarts {
        budget.charge(1)?;
        let mut u = if restart == 0 {
            g.vertices()
        } else {
            let size = rng.gen_range(target_size..=n);
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(&mut rng);
            verts[..size].iter().collect()
        };
        while u.len() > target_size {
            budget.charge(1)?;
            let victim = if u.len() <= EXACT_DENSITY_LIMIT {
                most_violating(g, u, t, half)
            } else {
                None
            }
            .unwrap_or_else(|| {
                u.iter()
                    .min_by_key(|&v| ((g.neighbours(v) & u).len(), v))
                    .expect("non-empty")
            });
            u.remove(victim);
        }
        if certify(u)? {
            return Ok(u);
        }
    }
    if n <= EXHAUSTIVE_EXTRACT_LIMIT {
        let verts = g.vertices().to_vec();
        let mut found = None;
        let mut err = None;
        for_each_subset(&verts, target_size, |s| {
            if let Err(e) = budget.charge(1) {
                err = Some(e);
                return false;
            }
            let u: VertexSet = s.iter().collect();
            if first_sparse_pair(&g.induced(u).0, VertexSet::full(target_size), t, half).is_none() {
                found = Some(u);
                return false;
            }
            true
        });
        if let Some(e) = err {
            return Err(e);
        }
        if let Some(u) = found {
            return Ok(u);
        }
    }
    Err(Error::BudgetExhausted {
        attempts: restarts as usize,
        context: "no certified bi-dense set".into(),
    })
}

/// Vertex of `u` lying in the most sparse `(t, t)` pairs (sparsest-partner
/// pairs only), or `None` when no pair is sparse.
fn most_violating(g: &SimpleGraph, u: VertexSet, t: usize, gamma: Rational64) -> Option<usize> {
    let verts = u.to_vec();
    if 2 * t > verts.len() {
        return None;
    }
    let mut count = vec![0u64; g.order()];
    let mut any = false;
    for_each_subset(&verts, t, |s| {
        let x: VertexSet = s.iter().collect();
        let (y, e) = sparsest_partner(g, x, u - x, t);
        if below(e, t * t, gamma) {
            any = true;
            for v in (x | y).iter() {
                count[v] += 1;
            }
        }
        true
    });
    if !any {
        return None;
    }
    verts.into_iter().max_by_key(|&v| (count[v], std::cmp::Reverse(v)))
}

/// Left-hand side `d^t/n^{t−1} − C(n, r)(m/n)^t` of the dependent random
/// choice inequality, with `d` the average degree.
pub fn drc_lhs(g: &SimpleGraph, t: u32, r: usize, m: usize) -> BigRational {
    let n = g.order();
    if n == 0 {
        return BigRational::zero();
    }
    let nn = BigInt::from(n);
    let d = BigRational::new(BigInt::from(2 * g.edge_count()), nn.clone());
    let first = num_traits::Pow::pow(&d, t) / BigRational::from(num_traits::Pow::pow(&nn, t - 1));
    let ratio = BigRational::new(BigInt::from(m), nn);
    let second = BigRational::from(BigInt::from(binomial(n, r))) * num_traits::Pow::pow(&ratio, t);
    first - second
}

/// Largest enumeration of `r`-subsets during verification.
pub const DRC_SUBSET_LIMIT: u64 = 20_000_000;

fn common_neighbours(g: &SimpleGraph, s: &[usize]) -> VertexSet {
    s.iter().fold(g.vertices(), |acc, &v| acc & g.neighbours(v))
}

/// First `r`-subset of `u` (lexicographic) with fewer than `m` common neighbours.
pub fn first_poor_subset(g: &SimpleGraph, u: VertexSet, r: usize, m: usize) -> Option<Vec<usize>> {
    let mut bad = None;
    for_each_subset(&u.to_vec(), r, |s| {
        if common_neighbours(g, s).len() < m {
            bad = Some(s.to_vec());
            return false;
        }
        true
    });
    bad
}

/// Finds `U` with `|U| ≥ a` whose every `r`-subset has at least `m` common
/// neighbours. Seeds `seed, seed+1, …` are tried up to `attempts` times; every
/// returned set has been checked exhaustively.
pub fn dependent_random_choice(
    g: &SimpleGraph,
    t: u32,
    r: usize,
    m: usize,
    a: usize,
    seed: u64,
    attempts: u32,
) -> Result<VertexSet> {
    if t == 0 || r == 0 || a == 0 {
        return Err(Error::Precondition("t, r and a must be positive".into()));
    }
    let lhs = drc_lhs(g, t, r, m);
    if lhs < BigRational::from(BigInt::from(a)) {
        return Err(Error::HypothesisFails(format!(
            "d^t/n^(t-1) - C(n,r)(m/n)^t = {} < {a}",
            lhs
        )));
    }
    let n = g.order();
    for attempt in 0..attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let tset: Vec<usize> = (0..t).map(|_| rng.gen_range(0..n)).collect();
        let u0 = common_neighbours(g, &tset);
        if binomial(u0.len(), r) > DRC_SUBSET_LIMIT {
            return Err(Error::SizeLimit {
                what: "dependent random choice subsets",
                got: u0.len(),
                limit: EXACT_DENSITY_LIMIT,
            });
        }
        let mut doomed = VertexSet::EMPTY;
        for_each_subset(&u0.to_vec(), r, |s| {
            if s.iter().all(|&v| !doomed.contains(v)) && common_neighbours(g, s).len() < m {
                doomed.insert(s[0]);
            }
            true
        });
        let u = u0 - doomed;
        if u.len() >= a && first_poor_subset(g, u, r, m).is_none() {
            return Ok(u);
        }
    }
    Err(Error::BudgetExhausted {
        attempts: attempts as usize,
        context: "dependent random choice".into(),
    })
}
