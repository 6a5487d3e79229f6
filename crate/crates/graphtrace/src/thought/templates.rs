//! Every trace line template: its text formatter and its thought binding.
//!
//! The formatters are the single source of truth for line text; the trace
//! generators and the replay verifier both go through them, so a grammar
//! change cannot silently diverge. `docs/trace_grammar.md` documents each
//! template with its placeholder types.

use super::{ActionThought, StateThought, Thought};

/// Identifier of one line template in the trace grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TemplateId {
    // connected components
    ChooseStart,
    AddToComponent,
    EnqueueUnvisited,
    CurrentComponent,
    ComponentSummary,
    RepsFinal,
    // shortest distance
    CurrentPathAdjacency,
    FoundTarget,
    ShortestPathFinal,
    // common neighbors (AdjacencyOf is shared with diameter)
    AdjacencyOf,
    CommonNeighborsFinal,
    // diameter
    ChooseSource,
    AnnounceSweep,
    UpdateDistance,
    FarthestTarget,
    DiameterFinal,
    // independent set
    AddIsolated,
    AddBest,
    CurrentIndependentSet,
    RemoveNeighborsOf,
    RemainingNodes,
    MisFinal,
    // vertex cover
    RemoveIsolated,
    CurrentVertexCover,
    RemoveEdgesOf,
    NoEdgeLeft,
    MvcFinal,
    // clique
    CurrentClique,
    CliqueCommonNeighbors,
    McpFinal,
    // tsp
    ChooseStartingNode,
    ChooseHop,
    CurrentSubtour,
    TspFinal,
    // common subgraph
    ChooseFirstPair,
    JustifyG,
    JustifyH,
    ChoosePair,
    CurrentSubgraphLists,
    McsFinal,
    // edit distance
    MapNode,
    LabelCost,
    EdgeDeletionCost,
    EdgeAdditionCost,
    CurrentMapping,
    GedFinal,
    // shared
    Finished,
}

impl TemplateId {
    /// The action or state thought each emitted line realizes.
    pub fn thought(self) -> Thought {
        use ActionThought as A;
        use StateThought as S;
        use TemplateId::*;
        match self {
            ChooseStart => Thought::Action(A::AddNodesByRule),
            AddToComponent => Thought::Action(A::AddNodesBySimplePrior),
            EnqueueUnvisited => Thought::State(S::GraphNodeSet),
            CurrentComponent | ComponentSummary => Thought::State(S::CurrentSolution),
            RepsFinal => Thought::State(S::FinalSolution),
            CurrentPathAdjacency => Thought::State(S::CurrentSolution),
            FoundTarget => Thought::State(S::SolvingState),
            ShortestPathFinal => Thought::State(S::FinalSolution),
            AdjacencyOf => Thought::State(S::GraphNodeSet),
            CommonNeighborsFinal => Thought::State(S::FinalSolution),
            ChooseSource => Thought::Action(A::AddNodesByRule),
            AnnounceSweep => Thought::State(S::SolvingState),
            UpdateDistance => Thought::State(S::CurrentSolution),
            FarthestTarget => Thought::State(S::SolvingState),
            DiameterFinal => Thought::State(S::FinalSolution),
            AddIsolated => Thought::Action(A::AddNodesBySimplePrior),
            AddBest => Thought::Action(A::AddNodesByGivenOptimal),
            CurrentIndependentSet => Thought::State(S::CurrentSolution),
            RemoveNeighborsOf => Thought::State(S::RemoveNodesFromGraph),
            RemainingNodes => Thought::State(S::GraphNodeSet),
            MisFinal => Thought::State(S::FinalSolution),
            RemoveIsolated => Thought::State(S::RemoveNodesFromGraph),
            CurrentVertexCover => Thought::State(S::CurrentSolution),
            RemoveEdgesOf => Thought::State(S::RemoveEdgesFromGraph),
            NoEdgeLeft => Thought::State(S::GraphEdgeSet),
            MvcFinal => Thought::State(S::FinalSolution),
            CurrentClique => Thought::State(S::CurrentSolution),
            CliqueCommonNeighbors => Thought::State(S::GraphNodeSet),
            McpFinal => Thought::State(S::FinalSolution),
            ChooseStartingNode | ChooseHop => Thought::Action(A::AddNodesByGivenOptimal),
            CurrentSubtour => Thought::State(S::CurrentSolution),
            TspFinal => Thought::State(S::FinalSolution),
            ChooseFirstPair | ChoosePair => Thought::Action(A::AddNodesByGivenOptimal),
            JustifyG | JustifyH => Thought::State(S::GraphNodeSet),
            CurrentSubgraphLists => Thought::State(S::CurrentSolution),
            McsFinal => Thought::State(S::FinalSolution),
            MapNode => Thought::Action(A::AddNodesByGivenOptimal),
            LabelCost => Thought::State(S::CurrentSolution),
            EdgeDeletionCost => Thought::State(S::RemoveEdgesFromGraph),
            EdgeAdditionCost => Thought::State(S::AddEdgesToGraph),
            CurrentMapping => Thought::State(S::CurrentSolution),
            GedFinal => Thought::State(S::FinalSolution),
            Finished => Thought::State(S::SolvingState),
        }
    }
}

pub fn fmt_list(items: &[u32]) -> String {
    let parts: Vec<String> = items.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn fmt_edge_list(edges: &[(u32, u32)]) -> String {
    let parts: Vec<String> = edges.iter().map(|(a, b)| format!("({a}, {b})")).collect();
    format!("[{}]", parts.join(", "))
}

// -- connected components ---------------------------------------------------

pub fn choose_start(u: u32) -> String {
    format!("Choose node {u} as the start point of the current connectivity component.")
}

pub fn add_to_component(v: u32) -> String {
    format!("Add node {v} into the connected component list.")
}

pub fn enqueue_unvisited(v: u32, fresh: &[u32]) -> String {
    format!(
        "Add the unvisited neighboring nodes of the node {v} into the search queue: {}.",
        fmt_list(fresh)
    )
}

pub fn current_component(nodes: &[u32]) -> String {
    format!("The current connected component is: {}.", fmt_list(nodes))
}

pub fn component_summary(index: usize, nodes: &[u32], rep: u32) -> String {
    format!(
        "Connected component {index}: Nodes = {}, Representative node = {rep}.",
        fmt_list(nodes)
    )
}

pub fn reps_final(reps: &[u32]) -> String {
    format!(
        "The representative nodes for each connected component are: {}.",
        fmt_list(reps)
    )
}

pub fn finished() -> String {
    "Finished!".to_string()
}

// -- shortest distance -------------------------------------------------------

pub fn current_path_adjacency(path: &[u32], v: u32, adjacency: &[u32]) -> String {
    format!(
        "Current path: {}, the neighboring nodes of the node {v}: {}.",
        fmt_list(path),
        fmt_list(adjacency)
    )
}

pub fn found_target(t: u32) -> String {
    format!("Found the target node {t}.")
}

pub fn shortest_path_final(path: &[u32]) -> String {
    format!("The shortest path is {}.", fmt_list(path))
}

// -- common neighbors / diameter ----------------------------------------------

pub fn adjacency_of(u: u32, adjacency: &[u32]) -> String {
    format!("The neighboring nodes of the node {u}: {}.", fmt_list(adjacency))
}

pub fn common_neighbors_final(common: &[u32]) -> String {
    format!("The common neighbor nodes of the two nodes are: {}.", fmt_list(common))
}

pub fn choose_source(s: u32) -> String {
    format!("Choose the most appropriate node as source node of the diameter path: {s}.")
}

pub fn announce_sweep(s: u32) -> String {
    format!("Calculating the longest path among all the shortest paths from the graph and source node {s}.")
}

pub fn update_distance(updated: &[u32], distance: u32) -> String {
    format!(
        "Update the shortest path from source node to node {} with distance {distance}.",
        fmt_list(updated)
    )
}

pub fn farthest_target(s: u32, t: u32, distance: u32) -> String {
    format!("The farthest target from the source {s} is node {t} with distance {distance}.")
}

pub fn diameter_final(path: &[u32]) -> String {
    format!("The diameter path is {}.", fmt_list(path))
}

// -- independent set ----------------------------------------------------------

pub fn add_isolated(nodes: &[u32]) -> String {
    format!("Add isolated nodes: {}.", fmt_list(nodes))
}

pub fn add_best(u: u32) -> String {
    format!("Add the most appropriate node: {u}.")
}

pub fn current_independent_set(nodes: &[u32]) -> String {
    format!("The current Independent Set is: {}.", fmt_list(nodes))
}

pub fn remove_neighbors_of(u: u32, neighbors: &[u32]) -> String {
    format!("Remove the neighboring nodes of the node {u}: {}.", fmt_list(neighbors))
}

pub fn remaining_nodes(nodes: &[u32]) -> String {
    format!("The remaining nodes of the graph are: {}.", fmt_list(nodes))
}

pub fn mis_final(nodes: &[u32]) -> String {
    format!("The maximum independent set is {}.", fmt_list(nodes))
}

// -- vertex cover ---------------------------------------------------------------

pub fn remove_isolated(nodes: &[u32]) -> String {
    format!("Remove isolated nodes: {}.", fmt_list(nodes))
}

pub fn current_vertex_cover(nodes: &[u32]) -> String {
    format!("The current Vertex Cover is: {}.", fmt_list(nodes))
}

pub fn remove_edges_of(u: u32, edges: &[(u32, u32)]) -> String {
    format!("Remove the edges of node {u}: {}.", fmt_edge_list(edges))
}

pub fn no_edge_left() -> String {
    "There is no edge left in the graph.".to_string()
}

pub fn mvc_final(nodes: &[u32]) -> String {
    format!("The minimum vertex cover is {}.", fmt_list(nodes))
}

// -- clique ---------------------------------------------------------------------

pub fn current_clique(nodes: &[u32]) -> String {
    format!("The current clique is: {}.", fmt_list(nodes))
}

pub fn clique_common_neighbors(nodes: &[u32]) -> String {
    format!(
        "The common neighbors of nodes in the current clique are: {}.",
        fmt_list(nodes)
    )
}

pub fn mcp_final(nodes: &[u32]) -> String {
    format!("The maximum clique is {}.", fmt_list(nodes))
}

// -- tsp ---------------------------------------------------------------------------

pub fn choose_starting_node(v: u32) -> String {
    format!("Choose starting node: {v}.")
}

pub fn choose_hop(v: u32, after: u32, weight: u32) -> String {
    format!("Choose node {v} after node {after} with weight {weight}.")
}

pub fn current_subtour(tour: &[u32]) -> String {
    format!("The current subtour is {}.", fmt_list(tour))
}

pub fn tsp_final(tour: &[u32]) -> String {
    format!("The optimal solution of TSP is: {}.", fmt_list(tour))
}

// -- common subgraph --------------------------------------------------------------

pub fn choose_first_pair(u: u32, v: u32) -> String {
    format!("Choose node {u} of G, and node {v} of H that has a similar neighborhood structure.")
}

/// Which side of the pairing a justification line talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McsSide {
    G,
    H,
}

impl McsSide {
    fn list_name(self) -> &'static str {
        match self {
            McsSide::G => "sub_g_nodes",
            McsSide::H => "sub_h_nodes",
        }
    }

    fn graph_name(self) -> &'static str {
        match self {
            McsSide::G => "G",
            McsSide::H => "H",
        }
    }
}

/// Connectivity justification against the current list: `connected`/`rest`
/// carry (index, node) pairs in ascending index order.
pub fn justify(side: McsSide, node: u32, connected: &[(u32, u32)], rest: &[(u32, u32)]) -> String {
    let list = side.list_name();
    let graph = side.graph_name();
    let idx = |pairs: &[(u32, u32)]| fmt_list(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    let vals = |pairs: &[(u32, u32)]| fmt_list(&pairs.iter().map(|p| p.1).collect::<Vec<_>>());
    if connected.is_empty() {
        format!("In {list}, node {node} does not connect any node.")
    } else if rest.is_empty() {
        let mut all: Vec<u32> = connected.iter().map(|p| p.1).collect();
        all.sort_unstable();
        format!(
            "In {list}, node {node} connects all nodes which are {} in {graph}.",
            fmt_list(&all)
        )
    } else {
        format!(
            "In {list}, node {node} connects nodes of indices {} which are {} in {graph}, and does not connect nodes of indices {} which are {} in {graph}.",
            idx(connected),
            vals(connected),
            idx(rest),
            vals(rest)
        )
    }
}

pub fn choose_pair(u: u32, v: u32) -> String {
    format!("So choose node {u} of G, and node {v} of H as indices of their individual neighbors in the corresponding nodes lists are the same.")
}

pub fn current_subgraph_lists(g_nodes: &[u32], h_nodes: &[u32]) -> String {
    format!(
        "The current nodes lists of subgraphs are: {}, {}.",
        fmt_list(g_nodes),
        fmt_list(h_nodes)
    )
}

pub fn mcs_final(g_nodes: &[u32], h_nodes: &[u32]) -> String {
    format!(
        "The optimal solution of MCS is: {}, {}.",
        fmt_list(g_nodes),
        fmt_list(h_nodes)
    )
}

// -- edit distance -----------------------------------------------------------------

pub fn map_node(i: u32, g_label: &str, j: u32, h_label: &str) -> String {
    format!("Mapping node {i} labeled <{g_label}> of graph G to node {j} labeled <{h_label}> of graph H.")
}

pub fn label_cost(i: u32, j: u32, same: bool) -> String {
    if same {
        format!("As the mapping two nodes {i}~{j} have the same label, the node mapping cost adds 0.")
    } else {
        format!("As the mapping two nodes {i}~{j} have different labels, the node mapping cost adds 1.")
    }
}

pub fn edge_deletion_cost(indices: &[u32], i: u32, j: u32) -> String {
    format!(
        "Currently for any index u in {}, node u connects node {i} in graph G, but map(u)=L[u] does not connect to map({i})={j} in graph H, so the new node mapping {i}~{j} generate edge deletion cost {}.",
        fmt_list(indices),
        indices.len()
    )
}

pub fn edge_addition_cost(indices: &[u32], i: u32, j: u32) -> String {
    format!(
        "Currently for any index u of {}, node u does not connect node {i} in graph G, but map(u)=L[u] connects to map({i})={j} in graph H, so the new node mapping {i}~{j} generate edge addition cost {}.",
        fmt_list(indices),
        indices.len()
    )
}

pub fn current_mapping(mapping: &[u32], cost: i64) -> String {
    format!("The current mapping is {} with cost {cost}.", fmt_list(mapping))
}

pub fn ged_final(mapping: &[u32]) -> String {
    format!("The optimal mapping of GED is: {}.", fmt_list(mapping))
}
