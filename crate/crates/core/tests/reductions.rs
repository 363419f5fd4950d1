use alliance_core::alliance::check_instance_solution;
use alliance_core::graph::{Graph, VertexSet};
use alliance_core::harness::{random_case, run_equiv_check, run_lift_check, run_roundtrip_check, Verdict};
use alliance_core::reductions::{vc3_to_oa_split, Choice, ReductionKind, Source};
use alliance_core::solvers::{solve_bruteforce, solve_by_twin_orbits, SearchBudget};
use alliance_core::source::{oracle_vertex_cover, SourceInstance, VcInstance};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = ReductionKind> {
    proptest::sample::select(ReductionKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Lifting works whichever way the construction resolves its free
    /// choices.
    #[test]
    fn lift_is_choice_invariant(kind in kind(), case in 0u64..10_000, choice in proptest::option::of(any::<u64>())) {
        let (src, w) = random_case(kind, case).unwrap();
        let report = run_lift_check(kind, &src, Some(&w), choice).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn projection_of_lift_is_a_witness(kind in kind(), case in 0u64..10_000) {
        let (src, w) = random_case(kind, case).unwrap();
        let report = run_roundtrip_check(kind, &src, Some(&w), Some(case)).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn reductions_are_deterministic(kind in kind(), case in 0u64..1_000) {
        let (src, _) = random_case(kind, case).unwrap();
        let a = kind.reduce(&src, &mut Choice::seeded(case)).unwrap();
        let b = kind.reduce(&src, &mut Choice::seeded(case)).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn twin_orbits_match_brute_force_on_split_targets() {
    for (g, k) in [(Graph::path(3), 1), (Graph::complete(3), 1), (Graph::star(3), 1), (Graph::path(2), 0)] {
        let ri = vc3_to_oa_split(&VcInstance { graph: g, k, max_degree_3: true }).unwrap();
        let budget = SearchBudget::new(u64::MAX, f64::INFINITY);
        let a = solve_bruteforce(&ri.instance, &budget);
        let b = solve_by_twin_orbits(&ri.instance, &budget);
        assert_eq!(a.size(), b.size());
        if let Some(s) = b.solution() {
            assert!(check_instance_solution(&ri.instance, s).is_valid());
        }
    }
}

/// The split construction admits an alliance within `k + m + 1` on this
/// connected graph although its vertex cover number exceeds `k`: a single
/// edge vertex in the alliance already satisfies every other edge vertex.
#[test]
fn split_target_admits_alliance_without_cover() {
    let g = Graph::from_edges(5, &[(0, 4), (1, 2), (1, 3), (1, 4), (2, 3)]).unwrap();
    let inst = VcInstance { graph: g, k: 2, max_degree_3: true };
    assert_eq!(oracle_vertex_cover(&inst).unwrap(), None);
    let ri = vc3_to_oa_split(&inst).unwrap();
    let mut d: VertexSet = ri.group("y").into_iter().collect();
    d.insert(ri.vertex("v[4]").unwrap());
    d.insert(ri.vertex("e[0]").unwrap());
    assert_eq!(d.len(), ri.instance.r);
    assert!(check_instance_solution(&ri.instance, &d).is_valid());

    let src = Source::Problem(SourceInstance::VertexCover(inst));
    let report = run_equiv_check(ReductionKind::VcSplit, &src, &SearchBudget::default(), None).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
}

#[test]
fn stage_sources_can_be_plain_alliance_instances() {
    let (src, _) = random_case(ReductionKind::SoafnOaf, 4).unwrap();
    let Source::Stage(ri) = src else { panic!("stage source expected") };
    let spec = ri.alliance_spec().unwrap();
    let plain = Source::Problem(SourceInstance::Alliance(spec));
    let a = ReductionKind::SoafnOaf.reduce(&plain, &mut Choice::lowest()).unwrap();
    let b = ReductionKind::SoafnOaf.reduce(&Source::Stage(ri), &mut Choice::lowest()).unwrap();
    assert_eq!(a.instance, b.instance);
}
