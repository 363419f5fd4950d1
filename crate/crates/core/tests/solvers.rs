use alliance_core::alliance::{check_instance_solution, check_offensive, AllianceInstance};
use alliance_core::graph::{Graph, VertexSet};
use alliance_core::solvers::{
    min_vertex_cover, solve_branching, solve_bruteforce, solve_by_twin_orbits, solve_via_vertex_cover,
    SearchBudget,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(e, b)| b.then_some(e))
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Forbidden and necessary subsets drawn from the first vertices.
fn constrained(max_n: usize) -> impl Strategy<Value = AllianceInstance> {
    (graph(max_n), 1usize..=4, 1i64..=2, any::<u16>()).prop_map(|(g, r, strength, mask)| {
        let n = g.order();
        let forbidden: VertexSet = (0..n).filter(|v| mask >> v & 1 == 1 && v % 3 == 0).collect();
        let necessary: VertexSet = (0..n).filter(|v| mask >> (v + 8) & 1 == 1 && v % 3 == 1).collect();
        AllianceInstance { graph: g, r, strength, forbidden, necessary, exact: false }
    })
}

fn unlimited() -> SearchBudget {
    SearchBudget::new(u64::MAX, f64::INFINITY)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_solvers_agree(inst in constrained(8)) {
        let a = solve_bruteforce(&inst, &unlimited());
        let b = solve_branching(&inst, &unlimited());
        let c = solve_by_twin_orbits(&inst, &unlimited());
        prop_assert_eq!(a.decision(), b.decision());
        prop_assert_eq!(a.decision(), c.decision());
        prop_assert_eq!(a.size(), b.size());
        prop_assert_eq!(a.size(), c.size());
        for s in [a.solution(), b.solution(), c.solution()].into_iter().flatten() {
            prop_assert!(check_instance_solution(&inst, s).is_valid());
        }
    }

    #[test]
    fn minimum_cover_is_an_alliance(g in graph(10)) {
        let c = min_vertex_cover(&g);
        prop_assume!(!c.is_empty());
        prop_assert!(check_offensive(&g, &c, 1).is_valid());
        if g.min_degree().unwrap() >= 2 {
            prop_assert!(check_offensive(&g, &c, 2).is_valid());
        }
    }

    #[test]
    fn cover_bound_finds_the_minimum(g in graph(8)) {
        let via = solve_via_vertex_cover(&g, &unlimited());
        let inst = AllianceInstance::new(g.clone(), g.order(), 1);
        prop_assert_eq!(via.size(), solve_bruteforce(&inst, &unlimited()).size());
    }
}

#[test]
fn budget_is_reported() {
    let inst = AllianceInstance::new(Graph::cycle(12), 12, 2);
    let out = solve_bruteforce(&inst, &SearchBudget::new(10, 10.0));
    assert_eq!(out.decision(), None);
}
