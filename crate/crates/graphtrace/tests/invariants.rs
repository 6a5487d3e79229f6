//! Property tests over the crate's core invariants.

use proptest::prelude::*;

use graphtrace::eval;
use graphtrace::graph::{
    parse_instance_text, render_instance_text, sample_instance, Graph, SizeClass, TaskInstance,
    TaskKind, ALL_TASKS,
};
use graphtrace::solve::{solve, Solution};
use graphtrace::thought::generate_trace;

fn arb_kind() -> impl Strategy<Value = TaskKind> {
    (0..ALL_TASKS.len()).prop_map(|i| ALL_TASKS[i])
}

fn arb_edges(n: u32) -> impl Strategy<Value = Vec<(u32, u32)>> {
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let len = pairs.len();
    proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
        pairs
            .iter()
            .zip(&mask)
            .filter(|(_, &keep)| keep)
            .map(|(&e, _)| e)
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// parse . render is the identity on sampled instances of every kind.
    #[test]
    fn render_parse_round_trip(kind in arb_kind(), seed in 0u64..100_000) {
        let inst = sample_instance(kind, SizeClass::Small, seed);
        let text = render_instance_text(&inst);
        let back = parse_instance_text(&text, kind).unwrap();
        prop_assert_eq!(render_instance_text(&back), text);
    }

    /// Rendered edge lists are strictly ascending with u < v.
    #[test]
    fn rendered_edges_are_sorted(kind in arb_kind(), seed in 0u64..100_000) {
        let inst = sample_instance(kind, SizeClass::Small, seed);
        let edges = inst.g.edges();
        for pair in edges.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
        for (u, v) in edges {
            prop_assert!(u < v);
        }
    }

    /// Complement is an involution on arbitrary unlabeled graphs.
    #[test]
    fn complement_involution(n in 1u32..10, edges in arb_edges(9)) {
        let edges: Vec<(u32, u32)> = edges.into_iter().filter(|&(u, v)| u < n && v < n).collect();
        let g = Graph::new(n, &edges).unwrap();
        prop_assert_eq!(g.complement().unwrap().complement().unwrap(), g);
    }

    /// Removing nodes never rewires the survivors.
    #[test]
    fn removal_preserves_surviving_adjacency(
        n in 2u32..10,
        edges in arb_edges(9),
        victims in proptest::collection::btree_set(0u32..9, 0..5),
    ) {
        let edges: Vec<(u32, u32)> = edges.into_iter().filter(|&(u, v)| u < n && v < n).collect();
        let g = Graph::new(n, &edges).unwrap();
        let victims: Vec<u32> = victims.into_iter().filter(|&v| v < n).collect();
        let reduced = g.remove_nodes(&victims).unwrap();
        for &u in reduced.nodes() {
            for &v in reduced.nodes() {
                if u < v {
                    prop_assert_eq!(g.has_edge(u, v), reduced.has_edge(u, v));
                }
            }
        }
    }

    /// Solver outputs validate and score ratio 1 / optimal.
    #[test]
    fn solver_outputs_are_valid_and_optimal(kind in arb_kind(), seed in 0u64..50_000) {
        let inst = sample_instance(kind, SizeClass::Small, seed);
        let solved = solve(&inst).unwrap();
        let (ok, reason) = eval::validate_solution(&inst, &solved.solution);
        prop_assert!(ok, "{}", reason);
        if kind.is_np_hard() {
            let ratio = eval::optimality_ratio(&inst, &solved.solution, solved.objective).unwrap();
            prop_assert_eq!(ratio, 1.0);
        }
    }

    /// The answer parser recovers exactly the trace's embedded solution.
    #[test]
    fn parse_answer_recovers_trace_solutions(kind in arb_kind(), seed in 0u64..50_000) {
        let inst = sample_instance(kind, SizeClass::Small, seed);
        let trace = generate_trace(&inst).unwrap();
        let parsed = eval::parse_answer(kind, &trace.render()).unwrap();
        prop_assert_eq!(parsed, trace.final_solution);
    }

    /// Symmetric ratio stays within [0, 1] and is 1 exactly at equality.
    /// Covers of any size are valid on an edgeless graph, so the pair of
    /// objectives can be dialed in directly.
    #[test]
    fn ratio_bounds(candidate in 0u32..60, optimum in 0i64..60) {
        let g = Graph::new(64, &[]).unwrap();
        let inst = TaskInstance::new(TaskKind::Mvc, g, None, None, "p").unwrap();
        let cover = Solution::NodeSet((0..candidate).collect());
        let ratio = eval::optimality_ratio(&inst, &cover, optimum).unwrap();
        prop_assert!((0.0..=1.0).contains(&ratio));
        let equal = i64::from(candidate) == optimum;
        prop_assert_eq!(ratio == 1.0, equal);
    }
}

#[test]
fn best_of_n_is_prefix_monotone_under_shuffles() {
    // Deterministic shuffle-free variant of the pool property: every prefix
    // of every rotation is monotone.
    let inst = sample_instance(TaskKind::Mis, SizeClass::Small, 3);
    let solved = solve(&inst).unwrap();
    let trace = generate_trace(&inst).unwrap();
    let base = vec![
        "noise".to_string(),
        "The maximum independent set is [0].".to_string(),
        trace.render(),
        "[]".to_string(),
    ];
    for rot in 0..base.len() {
        let mut pool = base.clone();
        pool.rotate_left(rot);
        let mut last = -1.0;
        for k in 1..=pool.len() {
            let best = eval::best_of_n(&inst, solved.objective, &pool[..k]).unwrap();
            assert!(best.ratio >= last);
            last = best.ratio;
        }
    }
}

#[test]
fn zero_objective_conventions() {
    // An isomorphic labeled pair has optimum 0; the identity answer scores 1.
    let labels: Vec<(u32, String)> = (0..3).map(|u| (u, "C".to_string())).collect();
    let g = Graph::labeled(3, &labels, &[(0, 1)]).unwrap();
    let inst = TaskInstance::new(TaskKind::Ged, g.clone(), Some(g), None, "z").unwrap();
    let identity = Solution::Mapping(vec![0, 1, 2]);
    assert_eq!(eval::optimality_ratio(&inst, &identity, 0).unwrap(), 1.0);
    // A costlier bijection against optimum 0 scores 0: sending the edge
    // (0, 1) onto the non-edge (2, 1) pays a deletion and an insertion.
    let skewed = Solution::Mapping(vec![2, 1, 0]);
    assert_eq!(eval::optimality_ratio(&inst, &skewed, 0).unwrap(), 0.0);
}
