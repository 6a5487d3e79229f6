//! Exact solvers, classical heuristic baselines, and brute-force oracles for
//! all ten tasks.
//!
//! Every solver returns a deterministic canonical optimum: node sets sorted
//! ascending and, where several optima exist, the lexicographically smallest
//! one (smallest sorted set, smallest node sequence). Exact search respects a
//! per-call time budget and aborts with [`SolveError::Timeout`].

mod clique;
mod ged;
mod heuristic;
mod mcs;
pub mod oracle;
mod poly;
mod tsp;

pub use ged::mapping_cost;
pub use heuristic::{heuristic_solve, Strategy};
pub use oracle::oracle_solve;
pub use tsp::tour_weight;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, TaskInstance, TaskKind};

/// Default per-call time budget for exact search.
pub const DEFAULT_BUDGET_SECS: u64 = 10;

/// Exact-mode limits; beyond them [`solve`] falls back to a flagged heuristic.
pub const GED_EXACT_LIMIT: u32 = 10;
pub const MCS_EXACT_LIMIT: u32 = 9;
pub const TSP_LIMIT: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("time budget exhausted")]
    Timeout,
    #[error("expected a {expected} instance, got {got}")]
    WrongKind { expected: TaskKind, got: TaskKind },
    #[error("{kind} instance with n={n} exceeds the limit of {limit}")]
    TooLarge { kind: TaskKind, n: u32, limit: u32 },
    #[error("diameter requires a connected graph")]
    Disconnected,
    #[error("{0}")]
    Unsupported(String),
}

/// Wall-clock budget for exact search. Checked at coarse intervals inside
/// the search loops.
#[derive(Debug, Clone, Copy)]
pub struct TimeBudget {
    deadline: Option<Instant>,
}

impl TimeBudget {
    pub fn unlimited() -> Self {
        TimeBudget { deadline: None }
    }

    pub fn from_secs(secs: u64) -> Self {
        TimeBudget {
            deadline: Some(Instant::now() + Duration::from_secs(secs)),
        }
    }

    pub(crate) fn check(&self) -> Result<(), SolveError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(SolveError::Timeout),
            _ => Ok(()),
        }
    }
}

impl Default for TimeBudget {
    fn default() -> Self {
        TimeBudget::from_secs(DEFAULT_BUDGET_SECS)
    }
}

/// A solution value, tagged by shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", content = "value", rename_all = "snake_case")]
pub enum Solution {
    /// Node subset (Neighbor result, Connected representatives, MCP, MIS, MVC).
    NodeSet(Vec<u32>),
    /// Node sequence (Distance, Diameter); empty means "no path".
    Path(Vec<u32>),
    /// Closed tour, first node repeated last (TSP).
    Tour(Vec<u32>),
    /// `L[i]` is the image of node `i` of G in H (GED).
    Mapping(Vec<u32>),
    /// Paired node lists of equal length (MCS).
    PairedNodeLists(Vec<u32>, Vec<u32>),
}

impl Solution {
    /// Compact bracket rendering, e.g. `[0, 1, 2]` or `[0, 1], [3, 2]`.
    pub fn render(&self) -> String {
        fn list(v: &[u32]) -> String {
            let items: Vec<String> = v.iter().map(u32::to_string).collect();
            format!("[{}]", items.join(", "))
        }
        match self {
            Solution::NodeSet(v) | Solution::Path(v) | Solution::Tour(v) | Solution::Mapping(v) => list(v),
            Solution::PairedNodeLists(a, b) => format!("{}, {}", list(a), list(b)),
        }
    }
}

/// Whether larger or smaller objectives are better for a task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveSense {
    Max,
    Min,
}

impl ObjectiveSense {
    /// Connected (component coverage) and Diameter (path length) grade by
    /// exact equality with the optimum; they count as Max here.
    pub fn of(kind: TaskKind) -> ObjectiveSense {
        match kind {
            TaskKind::Neighbor
            | TaskKind::Connected
            | TaskKind::Diameter
            | TaskKind::Mcp
            | TaskKind::Mis
            | TaskKind::Mcs => ObjectiveSense::Max,
            TaskKind::Distance | TaskKind::Mvc | TaskKind::Ged | TaskKind::Tsp => ObjectiveSense::Min,
        }
    }
}

/// A solver run: the solution plus its objective and provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solved {
    pub solution: Solution,
    pub objective: i64,
    /// False when an exact-mode limit forced a heuristic fallback.
    pub exact: bool,
    pub solver: &'static str,
}

pub fn solve_neighbor(inst: &TaskInstance) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Neighbor)?;
    Ok(poly::solve_neighbor(inst))
}

pub fn solve_distance(inst: &TaskInstance) -> Result<Option<Solution>, SolveError> {
    expect_kind(inst, TaskKind::Distance)?;
    Ok(poly::solve_distance(inst))
}

pub fn solve_components(inst: &TaskInstance) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Connected)?;
    Ok(poly::solve_components(inst))
}

pub fn solve_diameter(inst: &TaskInstance) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Diameter)?;
    poly::solve_diameter(inst)
}

pub fn solve_mcp(inst: &TaskInstance) -> Result<Solution, SolveError> {
    solve_mcp_with(inst, &TimeBudget::default())
}

pub fn solve_mcp_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Mcp)?;
    clique::solve_mcp(&inst.g, budget)
}

pub fn solve_mis(inst: &TaskInstance) -> Result<Solution, SolveError> {
    solve_mis_with(inst, &TimeBudget::default())
}

pub fn solve_mis_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Mis)?;
    clique::solve_mis(&inst.g, budget)
}

pub fn solve_mvc(inst: &TaskInstance) -> Result<Solution, SolveError> {
    solve_mvc_with(inst, &TimeBudget::default())
}

pub fn solve_mvc_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Mvc)?;
    clique::solve_mvc(&inst.g, budget)
}

pub fn solve_tsp(inst: &TaskInstance) -> Result<Solution, SolveError> {
    solve_tsp_with(inst, &TimeBudget::default())
}

pub fn solve_tsp_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Tsp)?;
    tsp::solve_tsp(&inst.g, budget)
}

pub fn solve_mcs(inst: &TaskInstance) -> Result<Solution, SolveError> {
    solve_mcs_with(inst, &TimeBudget::default())
}

pub fn solve_mcs_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Mcs)?;
    mcs::solve_mcs(&inst.g, inst.second_graph(), budget).map(|(sol, _)| sol)
}

pub fn solve_ged(inst: &TaskInstance) -> Result<Solution, SolveError> {
    solve_ged_with(inst, &TimeBudget::default())
}

pub fn solve_ged_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<Solution, SolveError> {
    expect_kind(inst, TaskKind::Ged)?;
    ged::solve_ged(&inst.g, inst.second_graph(), budget).map(|(sol, _)| sol)
}

/// Solves any instance with the default budget.
pub fn solve(inst: &TaskInstance) -> Result<Solved, SolveError> {
    solve_with(inst, &TimeBudget::default())
}

/// Solves any instance, reporting the objective and whether the run was exact.
pub fn solve_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<Solved, SolveError> {
    let (solution, exact, solver) = match inst.kind {
        TaskKind::Neighbor => (poly::solve_neighbor(inst), true, "set-intersection"),
        TaskKind::Distance => {
            let sol = poly::solve_distance(inst).unwrap_or(Solution::Path(Vec::new()));
            (sol, true, "bfs")
        }
        TaskKind::Connected => (poly::solve_components(inst), true, "bfs-components"),
        TaskKind::Diameter => (poly::solve_diameter(inst)?, true, "all-pairs-bfs"),
        TaskKind::Mcp => (clique::solve_mcp(&inst.g, budget)?, true, "clique-bnb"),
        TaskKind::Mis => (clique::solve_mis(&inst.g, budget)?, true, "clique-bnb"),
        TaskKind::Mvc => (clique::solve_mvc(&inst.g, budget)?, true, "clique-bnb"),
        TaskKind::Tsp => (tsp::solve_tsp(&inst.g, budget)?, true, "held-karp"),
        TaskKind::Mcs => {
            let (sol, exact) = mcs::solve_mcs(&inst.g, inst.second_graph(), budget)?;
            (sol, exact, if exact { "mcs-backtracking" } else { "mcs-greedy" })
        }
        TaskKind::Ged => {
            let (sol, exact) = ged::solve_ged(&inst.g, inst.second_graph(), budget)?;
            (sol, exact, if exact { "ged-bnb" } else { "ged-greedy" })
        }
    };
    let objective = solution_objective(inst, &solution);
    Ok(Solved { solution, objective, exact, solver })
}

/// Objective of a structurally well-formed solution (sizes, lengths, weights,
/// costs). Validity checking lives in the eval module.
pub fn solution_objective(inst: &TaskInstance, sol: &Solution) -> i64 {
    match sol {
        Solution::NodeSet(v) => v.len() as i64,
        Solution::Path(v) => v.len().saturating_sub(1) as i64,
        Solution::Tour(v) => tour_weight(&inst.g, v).unwrap_or(i64::MAX),
        Solution::Mapping(l) => mapping_cost(&inst.g, inst.second_graph(), l),
        Solution::PairedNodeLists(a, _) => a.len() as i64,
    }
}

/// Solver name and exactness [`solve_with`] would report for this instance,
/// without running it.
pub fn solver_info(inst: &TaskInstance) -> (&'static str, bool) {
    match inst.kind {
        TaskKind::Neighbor => ("set-intersection", true),
        TaskKind::Distance => ("bfs", true),
        TaskKind::Connected => ("bfs-components", true),
        TaskKind::Diameter => ("all-pairs-bfs", true),
        TaskKind::Mcp | TaskKind::Mis | TaskKind::Mvc => ("clique-bnb", true),
        TaskKind::Tsp => ("held-karp", true),
        TaskKind::Mcs => {
            let min = inst.g.node_count().min(inst.second_graph().node_count());
            if min <= MCS_EXACT_LIMIT {
                ("mcs-backtracking", true)
            } else {
                ("mcs-greedy", false)
            }
        }
        TaskKind::Ged => {
            if inst.g.node_count() <= GED_EXACT_LIMIT {
                ("ged-bnb", true)
            } else {
                ("ged-greedy", false)
            }
        }
    }
}

fn expect_kind(inst: &TaskInstance, expected: TaskKind) -> Result<(), SolveError> {
    if inst.kind != expected {
        return Err(SolveError::WrongKind { expected, got: inst.kind });
    }
    Ok(())
}

/// Adjacency bitmasks for a contiguous instance graph; solvers work on these.
pub(crate) fn adjacency_masks(g: &Graph) -> Result<Vec<u64>, SolveError> {
    let n = g.node_count();
    if n > 64 {
        return Err(SolveError::TooLarge {
            kind: TaskKind::Connected,
            n,
            limit: 64,
        });
    }
    debug_assert!(g.is_contiguous());
    let mut adj = vec![0u64; n as usize];
    for (u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    Ok(adj)
}
