use alliance_core::graph::{
    chord_diagram_to_graph, forest_height_after_deletion, parse_edge_list, write_edge_list, ChordDiagram, Graph,
    GraphSpec, VertexSet,
};
use proptest::prelude::*;

fn diagram(max_chords: usize) -> impl Strategy<Value = ChordDiagram> {
    (1..=max_chords)
        .prop_flat_map(|n| Just((0..n).flat_map(|i| [i, i]).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|e| ChordDiagram::new(e).unwrap())
}

proptest! {
    #[test]
    fn chord_graph_is_rotation_invariant(d in diagram(8), shift in 0usize..16) {
        let e = d.endpoints();
        let s = shift % e.len();
        let rotated = ChordDiagram::new(e[s..].iter().chain(&e[..s]).copied().collect()).unwrap();
        prop_assert_eq!(chord_diagram_to_graph(&d), chord_diagram_to_graph(&rotated));
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..12, bits in proptest::collection::vec(any::<bool>(), 66)) {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .zip(bits)
            .filter_map(|(e, b)| b.then_some(e))
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g).unwrap()).unwrap(), g.clone());
        let json = serde_json::to_string(&GraphSpec::from_graph(&g)).unwrap();
        let back: GraphSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.build().unwrap(), g);
    }

    #[test]
    fn hung_trees_match_materialized(n in 2usize..6, fanout in 1usize..4) {
        let g = Graph::path(n).with_hung_trees(&[0, n - 1], fanout).unwrap();
        let m = g.materialize().unwrap();
        prop_assert_eq!(g.order(), n + 2 * (fanout + fanout * fanout));
        prop_assert_eq!(g.edge_count(), m.edge_count());
        for v in 0..g.order() {
            let mut a: Vec<_> = g.neighbors(v).collect();
            let mut b: Vec<_> = m.neighbors(v).collect();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
        let none = VertexSet::new();
        prop_assert_eq!(forest_height_after_deletion(&g, &none), forest_height_after_deletion(&m, &none));
    }
}
