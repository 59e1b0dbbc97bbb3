use homkit::covering::{chi_dot, is_covering};
use homkit::graph::{parse_graph, Format, Graph, VertexSet};
use homkit::hom::{build_delta_i, build_hom};
use homkit::homology::complex_homology;
use homkit::nerve::{verify_theorem, Depth};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::edgeless(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chi_dot_sits_between_chi_and_degree_bound(g in graph(8)) {
        let r = chi_dot(&g).unwrap();
        prop_assert!(r.value >= g.chromatic_number());
        prop_assert!(r.value <= g.max_degree() + 1);
        prop_assert!(is_covering(&g, r.witness.sets()).unwrap());
        prop_assert_eq!(r.witness.len(), r.value);
    }

    #[test]
    fn serialization_round_trips(g in graph(10)) {
        let back = parse_graph(&g.to_edge_list(), Format::EdgeList).unwrap();
        prop_assert!(back.edges().eq(g.edges()));
        let back = parse_graph(&g.to_graph6(), Format::Graph6).unwrap();
        prop_assert!(back.edges().eq(g.edges()));
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(g in graph(4), n in 1u32..=3) {
        let c = build_hom(&g, n, 100_000).unwrap();
        let r = complex_homology(&c).unwrap();
        // reduced Betti numbers miss the augmentation term
        let shift = if c.is_empty() { 0 } else { 1 };
        prop_assert_eq!(r.betti_euler() + shift, c.euler_characteristic());
    }

    #[test]
    fn deltas_cover_hom(g in graph(4), n in 1u32..=3) {
        let whole = build_hom(&g, n, 100_000).unwrap();
        let mut covered = std::collections::BTreeSet::new();
        for i in g.maximal_independent_sets() {
            let d = build_delta_i(&g, n, i, 100_000).unwrap();
            prop_assert!(d.cells().is_subset(whole.cells()));
            covered.extend(d.into_cells());
        }
        prop_assert_eq!(&covered, whole.cells());
    }

    #[test]
    fn theorem_holds(g in graph(4), extra in 0u32..=1) {
        let n = g.chromatic_number() as u32 + extra;
        let r = verify_theorem(&g, n.max(1), Depth::Direct, 100_000, None).unwrap();
        prop_assert!(r.passed(), "{:?}", r.findings);
    }
}

#[test]
fn independent_set_queries() {
    let g = parse_graph("4\n0 1\n1 2\n2 3\n", Format::EdgeList).unwrap();
    let mis = g.maximal_independent_sets();
    assert_eq!(mis, vec![VertexSet::from_bits(0b0101), VertexSet::from_bits(0b1001), VertexSet::from_bits(0b1010)]);
}
