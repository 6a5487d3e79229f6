//! Trace generation: thought spaces, per-task programs, bit-exact trace
//! rendering, and replay verification.
//!
//! A program pairs an action-thought set with a state-thought set and runs
//! in one of two modes. Forward mode unrolls a deterministic heuristic (the
//! four polynomial tasks). Backward mode first computes an optimal solution
//! with the exact solver, then narrates its construction one element per
//! iteration (the six NP-hard tasks). Either way the emitted lines follow a
//! fixed grammar — see `docs/trace_grammar.md` — and a replay verifier can
//! recompute every claimed list and running value against the instance.

mod backward;
mod forward;
pub mod templates;
mod verify;

pub use templates::TemplateId;
pub use verify::{verify_trace, Divergence, ReplayReport};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{TaskInstance, TaskKind};
use crate::solve::{Solution, SolveError, TimeBudget};

/// What acts on the solution set: add or remove, nodes or edges, guided by
/// the given optimal solution, a rule, or prior knowledge. Sixteen in all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActionThought {
    AddNodesByGivenOptimal,
    AddNodesByRule,
    AddNodesBySimplePrior,
    AddNodesByComplexPrior,
    RemoveNodesByGivenOptimal,
    RemoveNodesByRule,
    RemoveNodesBySimplePrior,
    RemoveNodesByComplexPrior,
    AddEdgesByGivenOptimal,
    AddEdgesByRule,
    AddEdgesBySimplePrior,
    AddEdgesByComplexPrior,
    RemoveEdgesByGivenOptimal,
    RemoveEdgesByRule,
    RemoveEdgesBySimplePrior,
    RemoveEdgesByComplexPrior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActionTarget {
    Nodes,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActionDirection {
    Add,
    Remove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActionBasis {
    GivenOptimal,
    Rule,
    SimplePrior,
    ComplexPrior,
}

pub const ALL_ACTIONS: [ActionThought; 16] = [
    ActionThought::AddNodesByGivenOptimal,
    ActionThought::AddNodesByRule,
    ActionThought::AddNodesBySimplePrior,
    ActionThought::AddNodesByComplexPrior,
    ActionThought::RemoveNodesByGivenOptimal,
    ActionThought::RemoveNodesByRule,
    ActionThought::RemoveNodesBySimplePrior,
    ActionThought::RemoveNodesByComplexPrior,
    ActionThought::AddEdgesByGivenOptimal,
    ActionThought::AddEdgesByRule,
    ActionThought::AddEdgesBySimplePrior,
    ActionThought::AddEdgesByComplexPrior,
    ActionThought::RemoveEdgesByGivenOptimal,
    ActionThought::RemoveEdgesByRule,
    ActionThought::RemoveEdgesBySimplePrior,
    ActionThought::RemoveEdgesByComplexPrior,
];

impl ActionThought {
    /// Identifier `a1` through `a16`.
    pub fn identifier(self) -> String {
        let index = ALL_ACTIONS.iter().position(|&a| a == self).unwrap() + 1;
        format!("a{index}")
    }

    pub fn target(self) -> ActionTarget {
        if (self as usize) < 8 {
            ActionTarget::Nodes
        } else {
            ActionTarget::Edges
        }
    }

    pub fn direction(self) -> ActionDirection {
        if (self as usize) % 8 < 4 {
            ActionDirection::Add
        } else {
            ActionDirection::Remove
        }
    }

    pub fn basis(self) -> ActionBasis {
        match (self as usize) % 4 {
            0 => ActionBasis::GivenOptimal,
            1 => ActionBasis::Rule,
            2 => ActionBasis::SimplePrior,
            _ => ActionBasis::ComplexPrior,
        }
    }

    /// The `(target, direction, basis)` triple determines the identifier.
    pub fn from_roles(target: ActionTarget, direction: ActionDirection, basis: ActionBasis) -> ActionThought {
        ALL_ACTIONS
            .into_iter()
            .find(|a| a.target() == target && a.direction() == direction && a.basis() == basis)
            .unwrap()
    }
}

/// What gets described: the solving state, graph mutations, node/edge sets,
/// and the current or final solution. Nine in all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StateThought {
    SolvingState,
    AddNodesToGraph,
    RemoveNodesFromGraph,
    AddEdgesToGraph,
    RemoveEdgesFromGraph,
    GraphNodeSet,
    GraphEdgeSet,
    CurrentSolution,
    FinalSolution,
}

pub const ALL_STATES: [StateThought; 9] = [
    StateThought::SolvingState,
    StateThought::AddNodesToGraph,
    StateThought::RemoveNodesFromGraph,
    StateThought::AddEdgesToGraph,
    StateThought::RemoveEdgesFromGraph,
    StateThought::GraphNodeSet,
    StateThought::GraphEdgeSet,
    StateThought::CurrentSolution,
    StateThought::FinalSolution,
];

impl StateThought {
    /// Identifier `s1` through `s9`.
    pub fn identifier(self) -> String {
        let index = ALL_STATES.iter().position(|&s| s == self).unwrap() + 1;
        format!("s{index}")
    }
}

/// An action or state thought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Thought {
    Action(ActionThought),
    State(StateThought),
}

impl Thought {
    pub fn identifier(self) -> String {
        match self {
            Thought::Action(a) => a.identifier(),
            Thought::State(s) => s.identifier(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMode {
    /// Heuristic-driven; no access to a precomputed optimum.
    Forward,
    /// Solver-seeded: one element of the optimum is added per iteration.
    Backward,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThoughtError {
    #[error("backward programs need exactly one node-adding action guided by the given optimal solution, found {0}")]
    BackwardNeedsGivenOptimal(usize),
    #[error("forward programs must not use the given optimal solution")]
    ForwardUsesGivenOptimal,
    #[error("{kind} runs in {expected:?} mode")]
    WrongMode { kind: TaskKind, expected: TraceMode },
    #[error("program is for {expected}, got a {got} instance")]
    WrongKind { expected: TaskKind, got: TaskKind },
    #[error("template {0:?} is bound to a thought outside the selected sets")]
    UnboundTemplate(TemplateId),
    #[error("solver failed: {0}")]
    Solve(#[from] SolveError),
}

/// An executable per-task program: the selected thought sets plus the
/// ordered line templates that realize them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThoughtProgram {
    pub kind: TaskKind,
    pub mode: TraceMode,
    pub actions: BTreeSet<ActionThought>,
    pub states: BTreeSet<StateThought>,
    pub templates: Vec<TemplateId>,
}

impl ThoughtProgram {
    /// Runs the program on an instance of its task.
    pub fn run(&self, inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
        self.run_with(inst, &TimeBudget::default())
    }

    pub fn run_with(&self, inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
        if inst.kind != self.kind {
            return Err(ThoughtError::WrongKind {
                expected: self.kind,
                got: inst.kind,
            });
        }
        generate_trace_with(inst, budget)
    }
}

/// One emitted line with its thought and template provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThoughtLine {
    pub thought: Thought,
    pub template: TemplateId,
    pub rendered: String,
}

impl ThoughtLine {
    pub(crate) fn new(template: TemplateId, rendered: String) -> ThoughtLine {
        ThoughtLine {
            thought: template.thought(),
            template,
            rendered,
        }
    }
}

/// An ordered reasoning trace with the final solution embedded in its last
/// line.
#[derive(Debug, Clone, PartialEq)]
pub struct ThoughtTrace {
    pub instance_id: String,
    pub lines: Vec<ThoughtLine>,
    pub final_solution: Solution,
}

impl ThoughtTrace {
    /// Lines joined with single newlines, no trailing newline.
    pub fn render(&self) -> String {
        let parts: Vec<&str> = self.lines.iter().map(|l| l.rendered.as_str()).collect();
        parts.join("\n")
    }
}

/// Lines joined with single newlines; byte-exact per the line grammar.
pub fn render_trace(trace: &ThoughtTrace) -> String {
    trace.render()
}

/// The fixed per-task selection of action and state thoughts.
pub fn select_thoughts(kind: TaskKind) -> (BTreeSet<ActionThought>, BTreeSet<StateThought>) {
    let templates = task_templates(kind);
    let mut actions = BTreeSet::new();
    let mut states = BTreeSet::new();
    for t in templates {
        match t.thought() {
            Thought::Action(a) => {
                actions.insert(a);
            }
            Thought::State(s) => {
                states.insert(s);
            }
        }
    }
    (actions, states)
}

/// The ordered line templates a task's trace may emit.
pub fn task_templates(kind: TaskKind) -> Vec<TemplateId> {
    use TemplateId::*;
    match kind {
        TaskKind::Connected => vec![
            ChooseStart,
            AddToComponent,
            EnqueueUnvisited,
            CurrentComponent,
            Finished,
            ComponentSummary,
            RepsFinal,
        ],
        TaskKind::Distance => vec![CurrentPathAdjacency, FoundTarget, ShortestPathFinal],
        TaskKind::Neighbor => vec![AdjacencyOf, CommonNeighborsFinal],
        TaskKind::Diameter => vec![
            ChooseSource,
            AnnounceSweep,
            AdjacencyOf,
            UpdateDistance,
            FarthestTarget,
            DiameterFinal,
        ],
        TaskKind::Mis => vec![
            AddIsolated,
            AddBest,
            CurrentIndependentSet,
            RemoveNeighborsOf,
            RemainingNodes,
            Finished,
            MisFinal,
        ],
        TaskKind::Mvc => vec![
            RemoveIsolated,
            AddBest,
            CurrentVertexCover,
            RemoveEdgesOf,
            NoEdgeLeft,
            Finished,
            MvcFinal,
        ],
        TaskKind::Mcp => vec![AddBest, CurrentClique, CliqueCommonNeighbors, Finished, McpFinal],
        TaskKind::Tsp => vec![ChooseStartingNode, ChooseHop, CurrentSubtour, Finished, TspFinal],
        TaskKind::Mcs => vec![
            ChooseFirstPair,
            JustifyG,
            JustifyH,
            ChoosePair,
            CurrentSubgraphLists,
            Finished,
            McsFinal,
        ],
        TaskKind::Ged => vec![
            MapNode,
            LabelCost,
            EdgeDeletionCost,
            EdgeAdditionCost,
            CurrentMapping,
            Finished,
            GedFinal,
        ],
    }
}

pub fn trace_mode(kind: TaskKind) -> TraceMode {
    if kind.is_np_hard() {
        TraceMode::Backward
    } else {
        TraceMode::Forward
    }
}

/// Assembles and checks a program from selected thought sets.
pub fn construct_program(
    kind: TaskKind,
    actions: BTreeSet<ActionThought>,
    states: BTreeSet<StateThought>,
    mode: TraceMode,
) -> Result<ThoughtProgram, ThoughtError> {
    let expected = trace_mode(kind);
    if mode != expected {
        return Err(ThoughtError::WrongMode { kind, expected });
    }
    let optimal_adders = actions
        .iter()
        .filter(|a| a.basis() == ActionBasis::GivenOptimal && a.target() == ActionTarget::Nodes)
        .count();
    match mode {
        TraceMode::Backward if optimal_adders != 1 => {
            return Err(ThoughtError::BackwardNeedsGivenOptimal(optimal_adders));
        }
        TraceMode::Forward
            if actions.iter().any(|a| a.basis() == ActionBasis::GivenOptimal) =>
        {
            return Err(ThoughtError::ForwardUsesGivenOptimal);
        }
        _ => {}
    }
    let templates = task_templates(kind);
    for t in &templates {
        let bound = match t.thought() {
            Thought::Action(a) => actions.contains(&a),
            Thought::State(s) => states.contains(&s),
        };
        if !bound {
            return Err(ThoughtError::UnboundTemplate(*t));
        }
    }
    Ok(ThoughtProgram { kind, mode, actions, states, templates })
}

/// Selector + constructor for a task's canonical program.
pub fn program_for(kind: TaskKind) -> ThoughtProgram {
    let (actions, states) = select_thoughts(kind);
    construct_program(kind, actions, states, trace_mode(kind)).expect("canonical selection is valid")
}

/// Generates the reasoning trace for any instance (default budget).
pub fn generate_trace(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    generate_trace_with(inst, &TimeBudget::default())
}

pub fn generate_trace_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
    match inst.kind {
        TaskKind::Connected => forward::trace_connected(inst),
        TaskKind::Distance => forward::trace_distance(inst),
        TaskKind::Neighbor => forward::trace_neighbor(inst),
        TaskKind::Diameter => forward::trace_diameter(inst),
        TaskKind::Mis => backward::trace_mis_with(inst, budget),
        TaskKind::Mvc => backward::trace_mvc_with(inst, budget),
        TaskKind::Mcp => backward::trace_mcp_with(inst, budget),
        TaskKind::Tsp => backward::trace_tsp_with(inst, budget),
        TaskKind::Mcs => backward::trace_mcs_with(inst, budget),
        TaskKind::Ged => backward::trace_ged_with(inst, budget),
    }
}

pub use backward::{trace_ged, trace_mcp, trace_mcs, trace_mis, trace_mvc, trace_tsp};
pub use forward::{trace_connected, trace_diameter, trace_distance, trace_neighbor};

#[cfg(test)]
mod tests;
