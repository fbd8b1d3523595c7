use nhramsey::absorb::{verify_absorber, AbsorberVerdict};
use nhramsey::bitset::VertexSet;
use nhramsey::budget::Budget;
use nhramsey::graph::{Colour, SimpleGraph, TwoColouring};
use nhramsey::pattern::PatternGraph;
use nhramsey::ramsey::{colouring_avoids, Target};
use nhramsey::tiling::find_disjoint_mono;
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                g.add_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

fn arb_graph(lo: usize, hi: usize, p: f64) -> impl Strategy<Value = SimpleGraph> {
    (lo..=hi).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn absorber_success_is_monotone_in_radius(g in arb_graph(9, 13, 0.7), split in 3usize..6) {
        let n = g.order();
        let a = VertexSet::range(0, n - split);
        let u = VertexSet::range(n - split, n);
        let h = PatternGraph::complete(3);
        let b = Budget::default();
        let mut prev_ok = true;
        for r in 0..=3 {
            let ok = matches!(verify_absorber(&g, a, u, r, &h, &b).unwrap(), AbsorberVerdict::Certified(_));
            // success at r forces success at every smaller radius
            prop_assert!(prev_ok || !ok, "certified at r={r} but not below");
            prev_ok = ok;
        }
    }

    #[test]
    fn packing_is_monotone_in_copies(g in arb_graph(6, 12, 0.5)) {
        let col = TwoColouring::from_red(g);
        let h = PatternGraph::path(3);
        let b = Budget::default();
        for c in Colour::BOTH {
            let mut absent = false;
            for n in 1..=4 {
                let found = find_disjoint_mono(&col, &h, n, c, &b).unwrap().is_some();
                prop_assert!(!(absent && found));
                absent |= !found;
            }
        }
    }

    #[test]
    fn avoidance_survives_vertex_deletion(g in arb_graph(5, 9, 0.5), v in 0usize..5) {
        let col = TwoColouring::from_red(g);
        let t = Target::packing(PatternGraph::complete(3), 2);
        let b = Budget::default();
        let keep = col.vertices() - VertexSet::singleton(v);
        let (sub, _) = col.induced(keep);
        for c in Colour::BOTH {
            if colouring_avoids(&col, &t, c, &b).unwrap().avoids {
                prop_assert!(colouring_avoids(&sub, &t, c, &b).unwrap().avoids);
            }
        }
    }
}
