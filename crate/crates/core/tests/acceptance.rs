//! Acceptance suite. Every criterion prints one `criterion N: PASS|FAIL ...`
//! line; `determinism_across_thread_counts` reruns each body on 1 and 8
//! threads and compares the fingerprints (timings excluded).

use std::time::{Duration, Instant};

use nhramsey::absorb::{
    build_local_absorber, build_switcher, build_template, toy_triangle_absorber, verify_absorber, verify_switcher,
    verify_template, Template, TemplateMode,
};
use nhramsey::bitset::{binomial, for_each_subset, VertexSet};
use nhramsey::budget::Budget;
use nhramsey::constructions::{
    build_hk, lower_bound_colouring, prop1_colouring, prop1_structural_check, recompute_alpha,
};
use nhramsey::density::{drc_lhs, dependent_random_choice, is_bi_dense, DensityMode};
use nhramsey::embed::{candidate_precondition, embed_with_candidates, find_mono_copy, is_valid_map};
use nhramsey::error::Error;
use nhramsey::graph::{Colour, SimpleGraph, TwoColouring};
use nhramsey::pattern::PatternGraph;
use nhramsey::ramsey::{
    bounds_sandwich, colouring_avoids, evaluate_formulas, ramsey_search, Predicted, RamseyQuery, RamseyStatus, Target,
};
use nhramsey::tiling::{check_tiling, find_disjoint_mono};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

struct Check {
    pass: bool,
    detail: String,
    /// Verdicts and witnesses, compared across thread counts.
    fingerprint: Value,
}

fn report(n: usize, c: &Check, elapsed: Duration) {
    println!(
        "criterion {n}: {} ({:.2}s) {}",
        if c.pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        c.detail
    );
}

fn run_criterion(n: usize, body: fn() -> Check) {
    let start = Instant::now();
    let c = body();
    report(n, &c, start.elapsed());
    assert!(c.pass, "criterion {n} failed: {}", c.detail);
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> (T, Duration, bool) {
    let start = Instant::now();
    let out = f();
    let el = start.elapsed();
    (out, el, el <= limit)
}

fn js<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap()
}

fn pattern(g: SimpleGraph) -> PatternGraph {
    PatternGraph::new(g).unwrap()
}

// ---------------------------------------------------------------- 1

fn c1_triangle() -> Check {
    let q = RamseyQuery::symmetric(Target::single(PatternGraph::complete(3)));
    let (r, el, fast) = timed(Duration::from_secs(1), || ramsey_search(&q, &Budget::default()).unwrap());
    let w = r.lower_witness.clone().unwrap();
    let t = Target::single(PatternGraph::complete(3));
    let b = Budget::default();
    let wit_ok = w.order() == 5
        && colouring_avoids(&w, &t, Colour::Red, &b).unwrap().avoids
        && colouring_avoids(&w, &t, Colour::Blue, &b).unwrap().avoids;
    // pentagon construction: red C_5, blue its complement
    let pent = TwoColouring::from_red(SimpleGraph::cycle(5));
    let pent_ok = colouring_avoids(&pent, &t, Colour::Red, &b).unwrap().avoids
        && colouring_avoids(&pent, &t, Colour::Blue, &b).unwrap().avoids;
    let pass = r.value == Some(6) && r.status == RamseyStatus::Exact && wit_ok && pent_ok && fast;
    Check {
        pass,
        detail: format!(
            "r(K3) = {:?}, witness on K_{} avoids: {wit_ok}, pentagon avoids: {pent_ok}, {:.3}s (limit 1s)",
            r.value,
            w.order(),
            el.as_secs_f64()
        ),
        fingerprint: json!({"result": js(&r.verdicts()), "witness": w.to_text()}),
    }
}

#[test]
fn criterion_01_triangle_ramsey_number() {
    run_criterion(1, c1_triangle);
}

// ---------------------------------------------------------------- 2

fn c2_two_triangles() -> Check {
    let k3 = PatternGraph::complete(3);
    let q = RamseyQuery::symmetric(Target::packing(k3.clone(), 2));
    let budget = Budget::unlimited().with_deadline(Duration::from_secs(600));
    let (r, el, in_time) = timed(Duration::from_secs(600), || ramsey_search(&q, &budget).unwrap());
    let t = Target::packing(k3.clone(), 2);
    let b = Budget::default();
    let witness = r.lower_witness.clone();
    let wit_ok = witness.as_ref().is_some_and(|w| {
        w.order() == 9
            && colouring_avoids(w, &t, Colour::Red, &b).unwrap().avoids
            && colouring_avoids(w, &t, Colour::Blue, &b).unwrap().avoids
    });
    if r.status == RamseyStatus::Exact {
        let pass = r.value == Some(10) && wit_ok && in_time;
        return Check {
            pass,
            detail: format!(
                "r(2K3) = {:?} (expected 5n = 10), K_9 witness ok: {wit_ok}, {} nodes, {:.1}s (limit 600s)",
                r.value,
                r.nodes(),
                el.as_secs_f64()
            ),
            fingerprint: json!({"result": js(&r.verdicts()), "witness": witness.map(|w| w.to_text())}),
        };
    }
    // fallback tier: bracket plus seeded sampling of K_10
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut all_forced = true;
    for _ in 0..1000 {
        let mut red = SimpleGraph::empty(10);
        for u in 0..10 {
            for v in u + 1..10 {
                if rng.gen_bool(0.5) {
                    red.add_edge(u, v);
                }
            }
        }
        let col = TwoColouring::from_red(red);
        let forced = Colour::BOTH
            .iter()
            .any(|&c| find_disjoint_mono(&col, &k3, 2, c, &b).unwrap().is_some());
        all_forced &= forced;
    }
    let pass = r.lo >= 9 && all_forced;
    Check {
        pass,
        detail: format!(
            "fallback tier: bracket [{}, {:?}], lo >= 9: {}, 1000 seeded K_10 colourings forced: {all_forced}",
            r.lo,
            r.hi,
            r.lo >= 9
        ),
        fingerprint: json!({"lo": r.lo, "forced": all_forced}),
    }
}

#[test]
fn criterion_02_two_triangles() {
    run_criterion(2, c2_two_triangles);
}

// ---------------------------------------------------------------- 3

fn c3_paths() -> Check {
    let p3 = PatternGraph::path(3);
    let b = Budget::default();
    let ((one, two), el, fast) = timed(Duration::from_secs(60), || {
        let one = ramsey_search(&RamseyQuery::symmetric(Target::single(p3.clone())), &b).unwrap();
        let two = ramsey_search(&RamseyQuery::symmetric(Target::packing(p3.clone(), 2)), &b).unwrap();
        (one, two)
    });
    let predicted = 4 * 2 - 1;
    let exact = one.status == RamseyStatus::Exact && two.status == RamseyStatus::Exact;
    let pass = one.value == Some(3) && exact && fast;
    Check {
        pass,
        detail: format!(
            "r(P3) = {:?}, r(2P3) = {:?}; asymptotic prediction 4n-1 = {predicted} {} (reported only), {:.2}s (limit 60s)",
            one.value,
            two.value,
            if two.value == Some(predicted) { "agrees" } else { "differs" },
            el.as_secs_f64()
        ),
        fingerprint: json!({
            "one": js(&one.verdicts()),
            "two": js(&two.verdicts()),
            "witness": two.lower_witness.map(|w| w.to_text()),
        }),
    }
}

#[test]
fn criterion_03_path_packings() {
    run_criterion(3, c3_paths);
}

// ---------------------------------------------------------------- 4

fn c4_lower_bounds() -> Check {
    let patterns = [
        ("K3", PatternGraph::complete(3)),
        ("P3", PatternGraph::path(3)),
        ("C4", PatternGraph::cycle(4)),
        ("K4", PatternGraph::complete(4)),
    ];
    let mut pass = true;
    let mut slowest = 0.0f64;
    let mut fp = Vec::new();
    for (name, h) in &patterns {
        for n in 1..=3 {
            let ((order, clean), el, fast) = timed(Duration::from_secs(10), || {
                let (col, _, _) = lower_bound_colouring(h, n).unwrap();
                let b = Budget::default();
                let clean = Colour::BOTH
                    .iter()
                    .all(|&c| find_disjoint_mono(&col, h, n, c, &b).unwrap().is_none());
                (col.order(), clean)
            });
            slowest = slowest.max(el.as_secs_f64());
            pass &= clean && fast && order == (2 * h.k - h.alpha) * n - 2;
            fp.push(json!([name, n, order, clean]));
        }
    }
    Check {
        pass,
        detail: format!("12 colourings avoid nH in both colours: {pass}, slowest {slowest:.2}s (limit 10s each)"),
        fingerprint: json!(fp),
    }
}

#[test]
fn criterion_04_lower_bound_colourings() {
    run_criterion(4, c4_lower_bounds);
}

// ---------------------------------------------------------------- 5

fn c5_hk() -> Check {
    let h = build_hk(4).unwrap();
    let alpha = recompute_alpha(&h).unwrap();
    let params_ok = h.k == 16 && h.max_degree == 4 && alpha == 7 && h.alpha == 7;
    let ((clean, structural), el, fast) = timed(Duration::from_secs(300), || {
        let (col, part, _) = prop1_colouring(4, 1).unwrap();
        let b = Budget::unlimited();
        let clean = Colour::BOTH
            .iter()
            .all(|&c| find_mono_copy(&col, &h, c, &b).unwrap().is_none());
        let s = prop1_structural_check(&col, &part, &h, 1);
        (clean, s)
    });
    let pass = params_ok && clean && structural.no_mono_n_copies && fast;
    Check {
        pass,
        detail: format!(
            "H_16: k={}, Δ={}, α={alpha} (ℓ+3 = 7); prop1(4,1) has no monochromatic H_16: {clean}, {:.2}s (limit 300s)",
            h.k,
            h.max_degree,
            el.as_secs_f64()
        ),
        fingerprint: json!({"k": h.k, "delta": h.max_degree, "alpha": alpha, "clean": clean, "structural": js(&structural)}),
    }
}

#[test]
fn criterion_05_hk_pattern() {
    run_criterion(5, c5_hk);
}

// ---------------------------------------------------------------- 6

fn c6_gadgets() -> Check {
    let b = Budget::default();
    let (out, el, fast) = timed(Duration::from_secs(10), || {
        let k4 = PatternGraph::complete(4);
        let k5 = verify_switcher(&SimpleGraph::complete(5), 0, 1, &k4, &b).unwrap();
        let mut instances = vec![("K5 switcher for K4".to_string(), k5.ok)];
        let mut fp = vec![json!(k5.ok)];
        for k in 2..=4 {
            let h = PatternGraph::complete(k);
            let s = build_switcher(&h, &b).unwrap();
            let sv = verify_switcher(&s.graph, s.u, s.v, &h, &b).unwrap();
            instances.push((format!("switcher K{k}"), sv.ok));
            let la = build_local_absorber(&h, &b).unwrap();
            let core_ok = check_tiling(&la.graph, &h.graph, la.core, &la.core_tiling, 0);
            let full_ok = check_tiling(&la.graph, &h.graph, la.core | la.external, &la.full_tiling, 0);
            instances.push((format!("local absorber K{k}"), core_ok && full_ok));
            fp.push(json!({"switcher": js(&s), "local": js(&la)}));
        }
        (instances, fp)
    });
    let (instances, fp) = out;
    let passed = instances.iter().filter(|(_, ok)| *ok).count();
    let failed: Vec<&str> = instances.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
    Check {
        pass: passed == instances.len() && fast,
        detail: format!(
            "{passed}/{} instances pass{}, {:.2}s (limit 10s)",
            instances.len(),
            if failed.is_empty() { String::new() } else { format!(" (failed: {})", failed.join(", ")) },
            el.as_secs_f64()
        ),
        fingerprint: json!(fp),
    }
}

#[test]
fn criterion_06_switchers_and_local_absorbers() {
    run_criterion(6, c6_gadgets);
}

// ---------------------------------------------------------------- 7

/// Independent triangle-tiling oracle: covers `target` with disjoint
/// triangles, leaving at most `|target| mod 3` vertices.
fn triangle_tiles(g: &SimpleGraph, target: VertexSet) -> bool {
    fn go(g: &SimpleGraph, rest: VertexSet, skips: usize) -> bool {
        let Some(v) = rest.first() else { return true };
        let mut r = rest;
        r.remove(v);
        if skips > 0 && go(g, r, skips - 1) {
            return true;
        }
        let nb = (g.neighbours(v) & r).to_vec();
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                if g.has_edge(a, c) {
                    let mut rr = r;
                    rr.remove(a);
                    rr.remove(c);
                    if go(g, rr, skips) {
                        return true;
                    }
                }
            }
        }
        false
    }
    go(g, target, target.len() % 3)
}

fn c7_absorber() -> Check {
    let (g, a, u) = toy_triangle_absorber();
    let k3 = PatternGraph::complete(3);
    let b = Budget::default();
    let v = verify_absorber(&g, a, u, 2, &k3, &b).unwrap();
    let cert = v.certificate().cloned();
    let certified = cert.as_ref().is_some_and(|c| c.subsets_checked == 22);
    // single-edge mutations
    let mut caught = Vec::new();
    let mut consistent = true;
    for (x, y) in g.edges() {
        let mut m = g.clone();
        m.remove_edge(x, y);
        if let nhramsey::absorb::AbsorberVerdict::Failed { subset, .. } = verify_absorber(&m, a, u, 2, &k3, &b).unwrap() {
            consistent &= !triangle_tiles(&m, a | subset);
            caught.push(json!({"edge": [x, y], "subset": subset.to_vec()}));
        }
    }
    let oracle_agrees = {
        let mut ok = true;
        for i in 0..=2 {
            for_each_subset(&u.to_vec(), i, |s| {
                ok &= triangle_tiles(&g, a | s.iter().collect::<VertexSet>());
                true
            });
        }
        ok
    };
    let pass = certified && oracle_agrees && !caught.is_empty() && consistent;
    Check {
        pass,
        detail: format!(
            "toy absorber |A|={}, |U|={}: certified over 22 subsets: {certified}; {} single-edge mutations caught, failing subsets confirmed by oracle: {consistent}",
            a.len(),
            u.len(),
            caught.len()
        ),
        fingerprint: json!({"certificate": js(&cert), "caught": caught}),
    }
}

#[test]
fn criterion_07_absorber_certificates() {
    run_criterion(7, c7_absorber);
}

// ---------------------------------------------------------------- 8

/// Kuhn augmenting paths, independent of the library matcher.
fn perfect_matching(left: &[VertexSet], right: usize) -> bool {
    fn aug(u: usize, left: &[VertexSet], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for z in left[u].iter() {
            if !seen[z] {
                seen[z] = true;
                if owner[z].is_none_or(|w| aug(w, left, seen, owner)) {
                    owner[z] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..left.len()).all(|u| aug(u, left, &mut vec![false; right], &mut owner))
}

fn template_oracle(t: &Template) -> bool {
    let mut ok = true;
    for_each_subset(&t.x().collect::<Vec<_>>(), t.ell, |xs| {
        let left: Vec<VertexSet> = xs.iter().copied().chain(t.y()).map(|i| t.left_adj[i]).collect();
        ok &= perfect_matching(&left, t.z_len());
        ok
    });
    ok
}

fn c8_templates() -> Check {
    let mut complete_ok = true;
    for ell in 1..=6 {
        let t = Template::complete(ell).unwrap();
        let v = verify_template(&t).unwrap();
        complete_ok &= v.ok && v.subsets_checked == binomial(2 * ell, ell);
    }
    let random = build_template(4, 6, 0, TemplateMode::Random);
    let random_ok = match &random {
        Ok(t) => t.max_degree() <= 6 && verify_template(t).unwrap().ok && template_oracle(t),
        Err(_) => false,
    };
    Check {
        pass: complete_ok && random_ok,
        detail: format!(
            "complete templates ℓ=1..6 pass over C(2ℓ,ℓ) subsets: {complete_ok}; random degree <= 6 template at ℓ=4 within 64 seeds verified: {random_ok}"
        ),
        fingerprint: json!({"complete": complete_ok, "random": random.ok().map(|t| js(&t))}),
    }
}

#[test]
fn criterion_08_templates() {
    run_criterion(8, c8_templates);
}

// ---------------------------------------------------------------- 9

fn big(x: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn c9_embedding() -> Check {
    let shapes: Vec<PatternGraph> = vec![
        PatternGraph::complete(2),
        PatternGraph::path(3),
        PatternGraph::complete(3),
        pattern(SimpleGraph::complete(2).disjoint_union(&SimpleGraph::complete(2))),
        pattern(SimpleGraph::star(3)),
        PatternGraph::cycle(4),
    ];
    let gammas = [Rational64::new(1, 2), Rational64::new(1, 3), Rational64::new(1, 4)];
    let epss = [Rational64::new(1, 100), Rational64::new(1, 20), Rational64::new(1, 9), Rational64::new(1, 6)];
    let drops = [0.0, 0.03, 0.08, 0.15];
    let mut instances = 0;
    let mut non_complete = 0;
    let mut exhaustion = 0;
    let mut bound_ok = true;
    let mut substitution_ok = true;
    let mut other_errors = 0;
    let mut fp = Vec::new();
    let mut seed = 0u64;
    while instances < 100 && seed < 20_000 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        seed += 1;
        let h = &shapes[rng.gen_range(0..shapes.len())];
        let gamma = gammas[rng.gen_range(0..gammas.len())];
        let eps = epss[rng.gen_range(0..epss.len())];
        let n = rng.gen_range(12..=18);
        let drop = drops[rng.gen_range(0..drops.len())];
        let mut g = SimpleGraph::complete(n);
        for (x, y) in SimpleGraph::complete(n).edges() {
            if rng.gen_bool(drop) {
                g.remove_edge(x, y);
            }
        }
        let targets: Vec<VertexSet> = (0..h.k)
            .map(|_| (0..n).filter(|_| !rng.gen_bool(0.05)).collect())
            .collect();
        if candidate_precondition(n, h, &targets, gamma, eps).is_err() {
            continue;
        }
        let two_gamma = (gamma * 2).min(Rational64::from_integer(1));
        if !is_bi_dense(&g, eps, two_gamma, DensityMode::Exact).unwrap().holds {
            continue;
        }
        instances += 1;
        if g.edge_count() < n * (n - 1) / 2 {
            non_complete += 1;
        }
        match embed_with_candidates(&g, h, &targets, h.max_ind_set, gamma) {
            Ok(e) => {
                let gd = num_traits::Pow::pow(&big(gamma), h.max_degree as u32);
                for (i, set) in &e.aliases {
                    let floor = &gd * BigRational::from(BigInt::from(targets[*i].len())) - BigRational::from(BigInt::from(h.k));
                    bound_ok &= BigRational::from(BigInt::from(set.len())) >= floor;
                    for w in set.iter() {
                        let mut m = e.base.host_map.clone();
                        m[*i] = w;
                        substitution_ok &= is_valid_map(&g, &h.graph, &m) && !e.base.host_map.contains(&w);
                    }
                }
                fp.push(js(&e));
            }
            Err(Error::InternalExhaustion { .. }) => exhaustion += 1,
            Err(_) => other_errors += 1,
        }
    }
    let pass = instances == 100 && exhaustion == 0 && other_errors == 0 && bound_ok && substitution_ok;
    Check {
        pass,
        detail: format!(
            "{instances} instances ({non_complete} non-complete hosts) from {seed} seeds: {exhaustion} InternalExhaustion, alias bound holds: {bound_ok}, substitutions valid: {substitution_ok}"
        ),
        fingerprint: json!(fp),
    }
}

#[test]
fn criterion_09_embedding_lemma() {
    run_criterion(9, c9_embedding);
}

// ---------------------------------------------------------------- 10

fn c10_drc() -> Check {
    let mut instances = 0;
    let mut ok = 0;
    let mut failures = Vec::new();
    let mut fp = Vec::new();
    let mut seed = 0u64;
    while instances < 50 && seed < 50_000 {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000_000 + seed);
        seed += 1;
        let n = rng.gen_range(8..=20);
        let p = rng.gen_range(0.5..0.95);
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let t = rng.gen_range(1..=3u32);
        let r = rng.gen_range(1..=3usize);
        let m = rng.gen_range(1..=n / 2);
        let a = rng.gen_range(1..=n / 3);
        if drc_lhs(&g, t, r, m) < BigRational::from(BigInt::from(a)) {
            continue;
        }
        instances += 1;
        match dependent_random_choice(&g, t, r, m, a, seed, 64) {
            Ok(u) => {
                let mut good = u.len() >= a;
                for_each_subset(&u.to_vec(), r, |s| {
                    let common = (0..n).filter(|&w| s.iter().all(|&x| g.has_edge(x, w))).count();
                    good &= common >= m;
                    good
                });
                if good {
                    ok += 1;
                } else {
                    failures.push(seed - 1);
                }
                fp.push(json!(u.to_vec()));
            }
            Err(e) => {
                failures.push(seed - 1);
                fp.push(json!(e.to_string()));
            }
        }
    }
    Check {
        pass: instances == 50 && ok == 50,
        detail: format!("{ok}/{instances} instances with the inequality holding return a verified U{}", if failures.is_empty() { String::new() } else { format!(" (failing seeds {failures:?})") }),
        fingerprint: json!(fp),
    }
}

#[test]
fn criterion_10_dependent_random_choice() {
    run_criterion(10, c10_drc);
}

// ---------------------------------------------------------------- 11

fn c11_formulas() -> Check {
    let k3 = PatternGraph::complete(3);
    let b = Budget::default();
    let s = bounds_sandwich(&k3, &b).unwrap();
    let rec = evaluate_formulas(&k3, 2, Some(&k3), &b).unwrap();
    let formula_ok = rec.asymmetric == Some(Predicted::Value(8)) && rec.family_number == Some(Predicted::Value(3));
    let sandwich_ok = s.lower == 0 && s.upper == 0;
    // stretch tier: direct search of r(K3, 2K3)
    let q = RamseyQuery::new(Target::single(k3.clone()), Target::packing(k3.clone(), 2));
    let budget = Budget::unlimited().with_deadline(Duration::from_secs(1800));
    let direct = ramsey_search(&q, &budget).unwrap();
    let stretch_ok = match direct.status {
        RamseyStatus::Exact => direct.value == Some(8),
        RamseyStatus::Bracketed => direct.lo <= 8 && direct.hi.is_none_or(|h| h >= 8),
    };
    Check {
        pass: formula_ok && sandwich_ok && stretch_ok,
        detail: format!(
            "sandwich(K3) = ({}, {}); formula r(K3, 2K3) = {:?} with r(D(K3), K3) = {:?}; direct search: {:?} [{}, {:?}]",
            s.lower, s.upper, rec.asymmetric, rec.family_number, direct.value, direct.lo, direct.hi
        ),
        fingerprint: json!({"sandwich": js(&s), "formulas": js(&rec), "direct": js(&direct.verdicts()), "witness": direct.lower_witness.map(|w| w.to_text())}),
    }
}

#[test]
fn criterion_11_family_formulas() {
    run_criterion(11, c11_formulas);
}

// ---------------------------------------------------------------- 12

#[test]
fn criterion_12_determinism_across_thread_counts() {
    let bodies: [(usize, fn() -> Check); 11] = [
        (1, c1_triangle),
        (2, c2_two_triangles),
        (3, c3_paths),
        (4, c4_lower_bounds),
        (5, c5_hk),
        (6, c6_gadgets),
        (7, c7_absorber),
        (8, c8_templates),
        (9, c9_embedding),
        (10, c10_drc),
        (11, c11_formulas),
    ];
    let start = Instant::now();
    let pool = |t: usize| rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
    let (one, eight) = (pool(1), pool(8));
    let mut differing = Vec::new();
    for (n, body) in bodies {
        let a = one.install(body).fingerprint;
        let b = eight.install(body).fingerprint;
        if a != b {
            differing.push(n);
        }
    }
    let c = Check {
        pass: differing.is_empty(),
        detail: format!("criteria 1-11 on 1 and 8 threads, differing fingerprints: {differing:?}"),
        fingerprint: Value::Null,
    };
    report(12, &c, start.elapsed());
    assert!(c.pass, "{}", c.detail);
}
