use super::*;
use crate::fixtures;
use crate::graph::{sample_instance, Graph, SizeClass, TaskInstance, ALL_TASKS};
use crate::solve::{solve, solution_objective};

const CONNECTED_TRACE: &str = "\
Choose node 0 as the start point of the current connectivity component.
Add node 0 into the connected component list.
Add the unvisited neighboring nodes of the node 0 into the search queue: [3].
Add node 3 into the connected component list.
Add the unvisited neighboring nodes of the node 3 into the search queue: [4].
Add node 4 into the connected component list.
Add the unvisited neighboring nodes of the node 4 into the search queue: [6].
The current connected component is: [0, 3, 4].
Add node 6 into the connected component list.
Add the unvisited neighboring nodes of the node 6 into the search queue: [2].
Add node 2 into the connected component list.
Add the unvisited neighboring nodes of the node 2 into the search queue: [].
Finished!
Connected component 1: Nodes = [0, 3, 4, 6, 2], Representative node = 0.
Choose node 1 as the start point of the current connectivity component.
Add node 1 into the connected component list.
Add the unvisited neighboring nodes of the node 1 into the search queue: [].
Finished!
Connected component 2: Nodes = [1], Representative node = 1.
Choose node 5 as the start point of the current connectivity component.
Add node 5 into the connected component list.
Add the unvisited neighboring nodes of the node 5 into the search queue: [].
Finished!
Connected component 3: Nodes = [5], Representative node = 5.
The representative nodes for each connected component are: [0, 1, 5].";

const DISTANCE_TRACE: &str = "\
Current path: [4], the neighboring nodes of the node 4: [8].
Current path: [4, 8], the neighboring nodes of the node 8: [0, 1, 4, 7].
Current path: [4, 8, 0], the neighboring nodes of the node 0: [7, 8].
Current path: [4, 8, 1], the neighboring nodes of the node 1: [3, 8].
Found the target node 3.
The shortest path is [4, 8, 1, 3].";

const NEIGHBOR_TRACE: &str = "\
The neighboring nodes of the node 7: [0, 1, 2, 3, 4, 8, 9].
The neighboring nodes of the node 3: [0, 1, 2, 5, 6, 7, 9].
The common neighbor nodes of the two nodes are: [0, 1, 2, 9].";

const DIAMETER_TRACE: &str = "\
Choose the most appropriate node as source node of the diameter path: 7.
Calculating the longest path among all the shortest paths from the graph and source node 7.
The neighboring nodes of the node 7: [8].
Update the shortest path from source node to node [8] with distance 1.
The neighboring nodes of the node 8: [6, 7].
Update the shortest path from source node to node [6] with distance 2.
The neighboring nodes of the node 6: [3, 4, 8].
Update the shortest path from source node to node [3, 4] with distance 3.
The neighboring nodes of the node 3: [1, 2, 4, 6].
Update the shortest path from source node to node [1, 2] with distance 4.
The neighboring nodes of the node 1: [0, 3].
Update the shortest path from source node to node [0] with distance 5.
The neighboring nodes of the node 0: [1, 9].
Update the shortest path from source node to node [9] with distance 6.
The neighboring nodes of the node 9: [0, 5].
Update the shortest path from source node to node [5] with distance 7.
The farthest target from the source 7 is node 5 with distance 7.
The diameter path is [7, 8, 6, 3, 1, 0, 9, 5].";

const MVC_TRACE: &str = "\
Remove isolated nodes: [0, 3, 4, 8, 9].
Add the most appropriate node: 1.
The current Vertex Cover is: [1].
Remove the edges of node 1: [(1, 5), (1, 6)].
Remove isolated nodes: [1, 5, 6].
Add the most appropriate node: 2.
The current Vertex Cover is: [1, 2].
Remove the edges of node 2: [(2, 7)].
Remove isolated nodes: [2, 7].
There is no edge left in the graph.
Finished!
The minimum vertex cover is [1, 2].";

const MIS_TRACE: &str = "\
Add isolated nodes: [0, 1, 2, 7].
Add the most appropriate node: 3.
The current Independent Set is: [0, 1, 2, 7, 3].
Remove the neighboring nodes of the node 3: [4].
The remaining nodes of the graph are: [5, 6].
Add isolated nodes: [].
Add the most appropriate node: 5.
The current Independent Set is: [0, 1, 2, 7, 3, 5].
Remove the neighboring nodes of the node 5: [6].
The remaining nodes of the graph are: [].
Finished!
The maximum independent set is [0, 1, 2, 7, 3, 5].";

/// The published clique walkthrough picks node 8 before node 2; our
/// tie-break picks 2 first. Set-level agreement is checked separately; this
/// text exercises the replayer's tolerance for the other valid choice order.
const REFERENCE_MCP_TRACE: &str = "\
Add the most appropriate node: 8.
The current clique is: [8].
The common neighbors of nodes in the current clique are: [2].
Add the most appropriate node: 2.
The current clique is: [8, 2].
Finished!
The maximum clique is [8, 2].";

const REFERENCE_MCS_TRACE: &str = "\
Choose node 0 of G, and node 3 of H that has a similar neighborhood structure.
The current nodes lists of subgraphs are: [0], [3].
In sub_g_nodes, node 1 does not connect any node.
In sub_h_nodes, node 2 does not connect any node.
So choose node 1 of G, and node 2 of H as indices of their individual neighbors in the corresponding nodes lists are the same.
The current nodes lists of subgraphs are: [0, 1], [3, 2].
In sub_g_nodes, node 3 connects nodes of indices [1] which are [1] in G, and does not connect nodes of indices [0] which are [0] in G.
In sub_h_nodes, node 4 connects nodes of indices [1] which are [2] in H, and does not connect nodes of indices [0] which are [3] in H.
So choose node 3 of G, and node 4 of H as indices of their individual neighbors in the corresponding nodes lists are the same.
The current nodes lists of subgraphs are: [0, 1, 3], [3, 2, 4].
In sub_g_nodes, node 4 connects all nodes which are [0, 1, 3] in G.
In sub_h_nodes, node 1 connects all nodes which are [2, 3, 4] in H.
So choose node 4 of G, and node 1 of H as indices of their individual neighbors in the corresponding nodes lists are the same.
The current nodes lists of subgraphs are: [0, 1, 3, 4], [3, 2, 4, 1].
Finished!
The optimal solution of MCS is: [0, 1, 3, 4], [3, 2, 4, 1].";

const REFERENCE_GED_TRACE: &str = "\
Mapping node 0 labeled <Si> of graph G to node 4 labeled <N> of graph H.
As the mapping two nodes 0~4 have different labels, the node mapping cost adds 1.
The current mapping is [4] with cost 1.
Mapping node 1 labeled <O> of graph G to node 0 labeled <C> of graph H.
As the mapping two nodes 1~0 have different labels, the node mapping cost adds 1.
The current mapping is [4, 0] with cost 2.
Mapping node 2 labeled <Si> of graph G to node 2 labeled <N> of graph H.
As the mapping two nodes 2~2 have different labels, the node mapping cost adds 1.
The current mapping is [4, 0, 2] with cost 3.
Mapping node 3 labeled <Na> of graph G to node 1 labeled <Na> of graph H.
As the mapping two nodes 3~1 have the same label, the node mapping cost adds 0.
Currently for any index u of [0], node u does not connect node 3 in graph G, but map(u)=L[u] connects to map(3)=1 in graph H, so the new node mapping 3~1 generate edge addition cost 1.
The current mapping is [4, 0, 2, 1] with cost 4.
Mapping node 4 labeled <S> of graph G to node 3 labeled <Mg> of graph H.
As the mapping two nodes 4~3 have different labels, the node mapping cost adds 1.
Currently for any index u in [0], node u connects node 4 in graph G, but map(u)=L[u] does not connect to map(4)=3 in graph H, so the new node mapping 4~3 generate edge deletion cost 1.
The current mapping is [4, 0, 2, 1, 3] with cost 6.
Finished!
The optimal mapping of GED is: [4, 0, 2, 1, 3].";

#[test]
fn connected_example_trace_is_line_exact() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Connected);
    let trace = trace_connected(&inst).unwrap();
    assert_eq!(trace.render(), CONNECTED_TRACE);
}

#[test]
fn distance_example_trace_is_line_exact() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Distance);
    let trace = trace_distance(&inst).unwrap();
    assert_eq!(trace.render(), DISTANCE_TRACE);
}

#[test]
fn neighbor_example_trace_is_line_exact() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Neighbor);
    let trace = trace_neighbor(&inst).unwrap();
    assert_eq!(trace.render(), NEIGHBOR_TRACE);
}

#[test]
fn diameter_example_trace_is_line_exact() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Diameter);
    let trace = trace_diameter(&inst).unwrap();
    assert_eq!(trace.render(), DIAMETER_TRACE);
}

#[test]
fn mvc_example_trace_is_line_exact() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Mvc);
    let trace = trace_mvc(&inst).unwrap();
    assert_eq!(trace.render(), MVC_TRACE);
}

#[test]
fn mis_example_trace_is_line_exact() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Mis);
    let trace = trace_mis(&inst).unwrap();
    assert_eq!(trace.render(), MIS_TRACE);
}

#[test]
fn mcp_example_trace_reaches_the_optimum_set() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Mcp);
    let trace = trace_mcp(&inst).unwrap();
    let Solution::NodeSet(mut set) = trace.final_solution.clone() else { panic!() };
    set.sort_unstable();
    assert_eq!(set, vec![2, 8]);
    // Our tie-break adds the lowest id first.
    assert_eq!(trace.lines[0].rendered, "Add the most appropriate node: 2.");
}

#[test]
fn tsp_example_trace_carries_true_hop_weights() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Tsp);
    let trace = trace_tsp(&inst).unwrap();
    let rendered = trace.render();
    // Same tour as the published walkthrough...
    assert!(rendered.contains("The current subtour is [0, 4, 1, 2, 6, 3, 5, 0]."));
    assert!(rendered.ends_with("The optimal solution of TSP is: [0, 4, 1, 2, 6, 3, 5, 0]."));
    // ...but each hop line shows the weight of the edge actually traversed.
    assert!(rendered.contains("Choose node 4 after node 0 with weight 1983."));
    assert!(rendered.contains("Choose node 1 after node 4 with weight 3061."));
    assert!(rendered.contains("Choose node 5 after node 3 with weight 1095."));
    assert!(rendered.contains("Choose node 0 after node 5 with weight 396."));
}

#[test]
fn ged_example_trace_counts_to_six() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Ged);
    let trace = trace_ged(&inst).unwrap();
    let rendered = trace.render();
    assert!(rendered.contains("with cost 6."));
    assert_eq!(solution_objective(&inst, &trace.final_solution), 6);
}

#[test]
fn mcs_example_trace_reaches_size_four() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Mcs);
    let trace = trace_mcs(&inst).unwrap();
    let Solution::PairedNodeLists(a, _) = &trace.final_solution else { panic!() };
    assert_eq!(a.len(), 4);
}

#[test]
fn generated_traces_replay_consistently() {
    for kind in ALL_TASKS {
        for seed in 0..30 {
            let inst = sample_instance(kind, SizeClass::Small, seed);
            let trace = generate_trace(&inst).unwrap();
            let report = verify_trace(&inst, &trace.render());
            assert!(
                report.consistent,
                "{kind} seed {seed}: {:?}",
                report.divergence
            );
            assert!(report.final_valid, "{kind} seed {seed}: {}", report.final_reason);
        }
    }
}

#[test]
fn embedded_solutions_match_solver_objectives() {
    for kind in ALL_TASKS {
        for seed in 0..25 {
            let inst = sample_instance(kind, SizeClass::Small, seed);
            let trace = generate_trace(&inst).unwrap();
            let solved = solve(&inst).unwrap();
            assert_eq!(
                solution_objective(&inst, &trace.final_solution),
                solved.objective,
                "{kind} seed {seed}"
            );
        }
    }
}

#[test]
fn reference_mcp_trace_replays_with_the_other_choice_order() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Mcp);
    let report = verify_trace(&inst, REFERENCE_MCP_TRACE);
    assert!(report.consistent, "{:?}", report.divergence);
    assert!(report.final_valid);
}

#[test]
fn reference_mcs_trace_replays_consistently() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Mcs);
    let report = verify_trace(&inst, REFERENCE_MCS_TRACE);
    assert!(report.consistent, "{:?}", report.divergence);
    assert!(report.final_valid);
}

#[test]
fn reference_ged_trace_replays_consistently() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Ged);
    let report = verify_trace(&inst, REFERENCE_GED_TRACE);
    assert!(report.consistent, "{:?}", report.divergence);
    assert!(report.final_valid);
}

#[test]
fn lagged_hop_weights_diverge_at_the_first_bad_line() {
    // The published tour walkthrough prints each hop with the weight of a
    // different edge; replay recomputes the true weight and flags it.
    let inst = fixtures::example_instance(crate::graph::TaskKind::Tsp);
    let lagged = "\
Choose starting node: 0.
Choose node 4 after node 0 with weight 1983.
The current subtour is [0, 4].
Choose node 1 after node 4 with weight 8309.
The current subtour is [0, 4, 1].";
    let report = verify_trace(&inst, lagged);
    assert!(!report.consistent);
    let divergence = report.divergence.unwrap();
    assert_eq!(divergence.line, 4);
    assert!(divergence.expected.contains("3061"), "{divergence:?}");
}

#[test]
fn single_list_mutation_diverges_at_that_line() {
    let inst = fixtures::example_instance(crate::graph::TaskKind::Mis);
    let mutated = MIS_TRACE.replace("Add isolated nodes: [0, 1, 2, 7].", "Add isolated nodes: [0, 1, 2].");
    let report = verify_trace(&inst, &mutated);
    assert!(!report.consistent);
    assert_eq!(report.divergence.unwrap().line, 1);
}

#[test]
fn selector_tables_build_valid_programs() {
    for kind in ALL_TASKS {
        let (actions, states) = select_thoughts(kind);
        let program = construct_program(kind, actions, states, trace_mode(kind)).unwrap();
        assert_eq!(program.kind, kind);
        if kind.is_np_hard() {
            assert!(program
                .actions
                .contains(&ActionThought::AddNodesByGivenOptimal));
        }
    }
}

#[test]
fn selector_table_for_mis_and_neighbor() {
    let (actions, states) = select_thoughts(crate::graph::TaskKind::Mis);
    assert!(actions.contains(&ActionThought::AddNodesBySimplePrior));
    assert!(actions.contains(&ActionThought::AddNodesByGivenOptimal));
    assert!(states.contains(&StateThought::SolvingState));
    assert!(states.contains(&StateThought::RemoveNodesFromGraph));
    assert!(states.contains(&StateThought::GraphNodeSet));
    assert!(states.contains(&StateThought::CurrentSolution));
    assert!(states.contains(&StateThought::FinalSolution));

    let (actions, states) = select_thoughts(crate::graph::TaskKind::Neighbor);
    assert!(actions.is_empty());
    assert_eq!(
        states.into_iter().collect::<Vec<_>>(),
        vec![StateThought::GraphNodeSet, StateThought::FinalSolution]
    );
    let _ = actions;
}

#[test]
fn backward_mode_requires_one_given_optimal_adder() {
    let (mut actions, states) = select_thoughts(crate::graph::TaskKind::Mis);
    actions.remove(&ActionThought::AddNodesByGivenOptimal);
    let err = construct_program(crate::graph::TaskKind::Mis, actions, states, TraceMode::Backward).unwrap_err();
    assert!(matches!(err, ThoughtError::BackwardNeedsGivenOptimal(0)));
}

#[test]
fn thought_identifiers_and_roles_round_trip() {
    assert_eq!(ALL_ACTIONS.len(), 16);
    assert_eq!(ALL_STATES.len(), 9);
    assert_eq!(ActionThought::AddNodesByGivenOptimal.identifier(), "a1");
    assert_eq!(ActionThought::RemoveEdgesByComplexPrior.identifier(), "a16");
    assert_eq!(StateThought::SolvingState.identifier(), "s1");
    assert_eq!(StateThought::FinalSolution.identifier(), "s9");
    for action in ALL_ACTIONS {
        let back = ActionThought::from_roles(action.target(), action.direction(), action.basis());
        assert_eq!(back, action);
    }
}

#[test]
fn every_emitted_line_stays_in_the_selected_sets() {
    for kind in ALL_TASKS {
        let program = program_for(kind);
        let inst = sample_instance(kind, SizeClass::Small, 11);
        let trace = program.run(&inst).unwrap();
        for line in &trace.lines {
            let ok = match line.thought {
                Thought::Action(a) => program.actions.contains(&a),
                Thought::State(s) => program.states.contains(&s),
            };
            assert!(ok, "{kind}: line {:?} escapes the program", line.template);
        }
    }
}

#[test]
fn traces_are_deterministic_and_render_is_injective() {
    // Distinct traces must render to distinct strings (equal strings may
    // only come from equal line sequences).
    let mut seen: std::collections::BTreeMap<String, Vec<String>> = std::collections::BTreeMap::new();
    for kind in ALL_TASKS {
        for seed in 0..20 {
            let inst = sample_instance(kind, SizeClass::Small, seed);
            let a = generate_trace(&inst).unwrap();
            let b = generate_trace(&inst).unwrap();
            assert_eq!(a, b, "{kind} seed {seed}");
            let lines: Vec<String> = a.lines.iter().map(|l| l.rendered.clone()).collect();
            if let Some(prev) = seen.insert(a.render(), lines.clone()) {
                assert_eq!(prev, lines, "render collision with differing traces");
            }
        }
    }
}

#[test]
fn trace_length_is_linear_in_instance_size() {
    for kind in ALL_TASKS {
        for seed in 0..20 {
            let inst = sample_instance(kind, SizeClass::Small, seed);
            let trace = generate_trace(&inst).unwrap();
            let mut size = inst.g.node_count() as usize + inst.g.edge_count();
            if let Some(h) = &inst.h {
                size += h.node_count() as usize + h.edge_count();
            }
            assert!(
                trace.lines.len() <= 6 * size,
                "{kind} seed {seed}: {} lines for size {size}",
                trace.lines.len()
            );
        }
    }
}

#[test]
fn degenerate_traces() {
    // Edgeless MIS: one isolated sweep covers everything.
    let g = Graph::new(3, &[]).unwrap();
    let inst = TaskInstance::new(crate::graph::TaskKind::Mis, g, None, None, "t").unwrap();
    let trace = trace_mis(&inst).unwrap();
    assert_eq!(
        trace.render(),
        "Add isolated nodes: [0, 1, 2].\nThe remaining nodes of the graph are: [].\nFinished!\nThe maximum independent set is [0, 1, 2]."
    );

    // Edgeless MVC: immediate termination with an empty cover.
    let g = Graph::new(2, &[]).unwrap();
    let inst = TaskInstance::new(crate::graph::TaskKind::Mvc, g, None, None, "t").unwrap();
    let trace = trace_mvc(&inst).unwrap();
    assert_eq!(
        trace.render(),
        "Remove isolated nodes: [0, 1].\nThere is no edge left in the graph.\nFinished!\nThe minimum vertex cover is []."
    );

    // Single-node pair for the common-subgraph task.
    let k1 = Graph::new(1, &[]).unwrap();
    let inst = TaskInstance::new(crate::graph::TaskKind::Mcs, k1.clone(), Some(k1), None, "t").unwrap();
    let trace = trace_mcs(&inst).unwrap();
    assert!(trace.render().ends_with("The optimal solution of MCS is: [0], [0]."));

    // Unreachable distance query ends with an empty path.
    let g = Graph::new(3, &[(0, 1)]).unwrap();
    let inst = TaskInstance::new(crate::graph::TaskKind::Distance, g, None, Some((0, 2)), "t").unwrap();
    let trace = trace_distance(&inst).unwrap();
    assert!(trace.render().ends_with("The shortest path is []."));

    // Source adjacent to target: one expansion, then found.
    let g = Graph::new(2, &[(0, 1)]).unwrap();
    let inst = TaskInstance::new(crate::graph::TaskKind::Distance, g, None, Some((0, 1)), "t").unwrap();
    let trace = trace_distance(&inst).unwrap();
    assert_eq!(
        trace.render(),
        "Current path: [0], the neighboring nodes of the node 0: [1].\nFound the target node 1.\nThe shortest path is [0, 1]."
    );
}
