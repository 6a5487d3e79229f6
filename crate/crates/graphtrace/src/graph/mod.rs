//! Graph representation, task instances, bit-exact instance text, and
//! synthetic instance sampling.
//!
//! Nodes keep their original identifiers across removals so that traces can
//! refer to them throughout a solving episode. Freshly parsed or sampled
//! instances always use the contiguous range `0..n`.

mod sample;
mod text;

pub use sample::{sample_instance, EDGE_PROB_RANGE, LABEL_ALPHABET, TSP_WEIGHT_RANGE};
pub use text::ParseError;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The ten supported tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Neighbor,
    Distance,
    Connected,
    Diameter,
    Mcp,
    Mis,
    Mvc,
    Mcs,
    Ged,
    Tsp,
}

pub const ALL_TASKS: [TaskKind; 10] = [
    TaskKind::Neighbor,
    TaskKind::Distance,
    TaskKind::Connected,
    TaskKind::Diameter,
    TaskKind::Mcp,
    TaskKind::Mis,
    TaskKind::Mvc,
    TaskKind::Mcs,
    TaskKind::Ged,
    TaskKind::Tsp,
];

impl TaskKind {
    pub fn slug(self) -> &'static str {
        match self {
            TaskKind::Neighbor => "neighbor",
            TaskKind::Distance => "distance",
            TaskKind::Connected => "connected",
            TaskKind::Diameter => "diameter",
            TaskKind::Mcp => "mcp",
            TaskKind::Mis => "mis",
            TaskKind::Mvc => "mvc",
            TaskKind::Mcs => "mcs",
            TaskKind::Ged => "ged",
            TaskKind::Tsp => "tsp",
        }
    }

    pub fn from_slug(s: &str) -> Option<TaskKind> {
        ALL_TASKS.iter().copied().find(|k| k.slug() == s)
    }

    /// The six NP-hard tasks; the other four are polynomial.
    pub fn is_np_hard(self) -> bool {
        matches!(
            self,
            TaskKind::Mcp | TaskKind::Mis | TaskKind::Mvc | TaskKind::Mcs | TaskKind::Ged | TaskKind::Tsp
        )
    }

    /// Instances of these kinds carry a second graph.
    pub fn uses_two_graphs(self) -> bool {
        matches!(self, TaskKind::Mcs | TaskKind::Ged)
    }

    /// Instances of these kinds carry a query node pair.
    pub fn uses_query(self) -> bool {
        matches!(self, TaskKind::Neighbor | TaskKind::Distance)
    }

    /// Inclusive node-count range for a size class of this task.
    pub fn size_range(self, size: SizeClass) -> (u32, u32) {
        use TaskKind::*;
        match (self, size) {
            (Neighbor | Distance, SizeClass::Small) => (4, 19),
            (Neighbor | Distance, SizeClass::Large) => (20, 50),
            (Connected | Diameter | Mcp | Mis | Mvc, SizeClass::Small) => (4, 14),
            (Connected | Diameter | Mcp | Mis | Mvc, SizeClass::Large) => (15, 30),
            (Mcs | Ged | Tsp, SizeClass::Small) => (4, 9),
            (Mcs | Ged | Tsp, SizeClass::Large) => (10, 20),
        }
    }

    /// Size class for a node count: everything at or below the small-range
    /// upper bound is Small, the rest Large. Total so that hand-written
    /// instances outside the sampled ranges (single nodes, tiny fixtures)
    /// still classify.
    pub fn classify_size(self, node_count: u32) -> SizeClass {
        let (_, small_hi) = self.size_range(SizeClass::Small);
        if node_count <= small_hi {
            SizeClass::Small
        } else {
            SizeClass::Large
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl std::str::FromStr for TaskKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskKind::from_slug(&s.to_ascii_lowercase()).ok_or_else(|| format!("unknown task kind `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClass {
    Small,
    Large,
}

impl SizeClass {
    pub fn slug(self) -> &'static str {
        match self {
            SizeClass::Small => "small",
            SizeClass::Large => "large",
        }
    }
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl std::str::FromStr for SizeClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "small" => Ok(SizeClass::Small),
            "large" => Ok(SizeClass::Large),
            other => Err(format!("unknown size class `{other}`")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("node {0} out of range")]
    NodeOutOfRange(u32),
    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(u32),
    #[error("node {0} has no label")]
    MissingLabel(u32),
    #[error("complement requires an unweighted, unlabeled graph")]
    ComplementUnsupported,
}

/// An undirected graph over an explicit node-identifier set.
///
/// Edge weights are present exactly for TSP instances (complete graphs) and
/// node labels exactly for GED instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    nodes: Vec<u32>,
    adj: BTreeMap<u32, Vec<u32>>,
    weights: Option<BTreeMap<(u32, u32), u32>>,
    labels: Option<BTreeMap<u32, String>>,
}

impl Graph {
    /// Unweighted, unlabeled graph on nodes `0..n`.
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        Self::with_node_ids((0..n).collect(), edges, None, None)
    }

    /// Complete weighted graph on nodes `0..n`; every edge must be listed.
    pub fn weighted(n: u32, edges: &[(u32, u32, u32)]) -> Result<Graph, GraphError> {
        let mut plain = Vec::with_capacity(edges.len());
        let mut weights = BTreeMap::new();
        for &(u, v, w) in edges {
            if w == 0 {
                return Err(GraphError::NonPositiveWeight(w));
            }
            plain.push((u, v));
            let key = if u < v { (u, v) } else { (v, u) };
            weights.insert(key, w);
        }
        Self::with_node_ids((0..n).collect(), &plain, Some(weights), None)
    }

    /// Labeled graph on nodes `0..n`; every node must be labeled.
    pub fn labeled(n: u32, labels: &[(u32, String)], edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut map = BTreeMap::new();
        for (u, l) in labels {
            map.insert(*u, l.clone());
        }
        for u in 0..n {
            if !map.contains_key(&u) {
                return Err(GraphError::MissingLabel(u));
            }
        }
        Self::with_node_ids((0..n).collect(), edges, None, Some(map))
    }

    fn with_node_ids(
        nodes: Vec<u32>,
        edges: &[(u32, u32)],
        weights: Option<BTreeMap<(u32, u32), u32>>,
        labels: Option<BTreeMap<u32, String>>,
    ) -> Result<Graph, GraphError> {
        let node_set: BTreeSet<u32> = nodes.iter().copied().collect();
        let mut adj: BTreeMap<u32, Vec<u32>> = nodes.iter().map(|&u| (u, Vec::new())).collect();
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !node_set.contains(&u) {
                return Err(GraphError::NodeOutOfRange(u));
            }
            if !node_set.contains(&v) {
                return Err(GraphError::NodeOutOfRange(v));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        let mut nodes = nodes;
        nodes.sort_unstable();
        nodes.dedup();
        Ok(Graph { nodes, adj, weights, labels })
    }

    pub fn node_count(&self) -> u32 {
        self.nodes.len() as u32
    }

    /// Node identifiers, ascending.
    pub fn nodes(&self) -> &[u32] {
        &self.nodes
    }

    pub fn contains_node(&self, u: u32) -> bool {
        self.adj.contains_key(&u)
    }

    /// True when the identifier set is exactly `0..n` (all instances are).
    pub fn is_contiguous(&self) -> bool {
        self.nodes.iter().enumerate().all(|(i, &u)| u as usize == i)
    }

    /// Adjacency of `u`, ascending.
    pub fn neighbors(&self, u: u32) -> Result<&[u32], GraphError> {
        self.adj
            .get(&u)
            .map(|v| v.as_slice())
            .ok_or(GraphError::NodeOutOfRange(u))
    }

    pub fn degree(&self, u: u32) -> usize {
        self.adj.get(&u).map_or(0, |v| v.len())
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj.get(&u).is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges as ascending `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (&u, list) in &self.adj {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn weight(&self, u: u32, v: u32) -> Option<u32> {
        let key = (u.min(v), u.max(v));
        self.weights.as_ref().and_then(|w| w.get(&key).copied())
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn label(&self, u: u32) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(&u).map(String::as_str))
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    /// Degree-zero nodes, ascending.
    pub fn isolated_nodes(&self) -> Vec<u32> {
        self.adj
            .iter()
            .filter(|(_, list)| list.is_empty())
            .map(|(&u, _)| u)
            .collect()
    }

    /// Deletes the given nodes and all incident edges. Survivors keep their
    /// original identifiers.
    pub fn remove_nodes(&self, remove: &[u32]) -> Result<Graph, GraphError> {
        for &u in remove {
            if !self.contains_node(u) {
                return Err(GraphError::NodeOutOfRange(u));
            }
        }
        let gone: BTreeSet<u32> = remove.iter().copied().collect();
        let nodes: Vec<u32> = self.nodes.iter().copied().filter(|u| !gone.contains(u)).collect();
        let edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .filter(|(u, v)| !gone.contains(u) && !gone.contains(v))
            .collect();
        let weights = self.weights.as_ref().map(|w| {
            w.iter()
                .filter(|((u, v), _)| !gone.contains(u) && !gone.contains(v))
                .map(|(&k, &wt)| (k, wt))
                .collect()
        });
        let labels = self.labels.as_ref().map(|l| {
            l.iter()
                .filter(|(u, _)| !gone.contains(u))
                .map(|(&u, s)| (u, s.clone()))
                .collect()
        });
        Graph::with_node_ids(nodes, &edges, weights, labels)
    }

    /// Deletes the given edges (either orientation), keeping all nodes.
    pub fn remove_edges(&self, remove: &[(u32, u32)]) -> Graph {
        let gone: BTreeSet<(u32, u32)> = remove
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        let edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .filter(|e| !gone.contains(e))
            .collect();
        let weights = self.weights.as_ref().map(|w| {
            w.iter()
                .filter(|(k, _)| !gone.contains(k))
                .map(|(&k, &wt)| (k, wt))
                .collect()
        });
        Graph::with_node_ids(self.nodes.clone(), &edges, weights, self.labels.clone())
            .expect("removing edges preserves validity")
    }

    /// Edge-complement over the same node set.
    pub fn complement(&self) -> Result<Graph, GraphError> {
        if self.weights.is_some() || self.labels.is_some() {
            return Err(GraphError::ComplementUnsupported);
        }
        let mut edges = Vec::new();
        for (i, &u) in self.nodes.iter().enumerate() {
            for &v in &self.nodes[i + 1..] {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::with_node_ids(self.nodes.clone(), &edges, None, None)
    }

    /// Every node pair joined by an edge.
    pub fn is_complete(&self) -> bool {
        let n = self.nodes.len();
        self.edge_count() == n * (n.saturating_sub(1)) / 2
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.nodes.first() else { return true };
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            for &v in &self.adj[&u] {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.len() == self.nodes.len()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("task {0} requires a second graph")]
    MissingSecondGraph(TaskKind),
    #[error("task {0} does not take a second graph")]
    UnexpectedSecondGraph(TaskKind),
    #[error("task {0} requires a query node pair")]
    MissingQuery(TaskKind),
    #[error("task {0} does not take a query node pair")]
    UnexpectedQuery(TaskKind),
    #[error("query nodes must be distinct, got ({0}, {0})")]
    QueryNotDistinct(u32),
    #[error("query node {0} out of range")]
    QueryOutOfRange(u32),
    #[error("GED graphs must have equal node counts ({0} vs {1})")]
    UnequalNodeCounts(u32, u32),
    #[error("TSP graph must be complete")]
    IncompleteTsp,
    #[error("TSP graph must be weighted; {0} graphs must be unweighted")]
    WeightMisuse(TaskKind),
    #[error("GED graphs must be labeled; {0} graphs must be unlabeled")]
    LabelMisuse(TaskKind),
    #[error("instance graphs must use node identifiers 0..n")]
    NonContiguous,
    #[error("instance graph must have at least one node")]
    Empty,
}

/// One task instance: the unit of generation, solving, and grading.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskInstance {
    pub kind: TaskKind,
    pub g: Graph,
    pub h: Option<Graph>,
    pub query: Option<(u32, u32)>,
    pub size_class: SizeClass,
    pub instance_id: String,
}

impl TaskInstance {
    pub fn new(
        kind: TaskKind,
        g: Graph,
        h: Option<Graph>,
        query: Option<(u32, u32)>,
        instance_id: impl Into<String>,
    ) -> Result<TaskInstance, InstanceError> {
        if g.node_count() == 0 {
            return Err(InstanceError::Empty);
        }
        if !g.is_contiguous() || h.as_ref().is_some_and(|h| !h.is_contiguous()) {
            return Err(InstanceError::NonContiguous);
        }
        match (kind.uses_two_graphs(), &h) {
            (true, None) => return Err(InstanceError::MissingSecondGraph(kind)),
            (false, Some(_)) => return Err(InstanceError::UnexpectedSecondGraph(kind)),
            _ => {}
        }
        match (kind.uses_query(), &query) {
            (true, None) => return Err(InstanceError::MissingQuery(kind)),
            (false, Some(_)) => return Err(InstanceError::UnexpectedQuery(kind)),
            _ => {}
        }
        if let Some((a, b)) = query {
            if a == b {
                return Err(InstanceError::QueryNotDistinct(a));
            }
            for q in [a, b] {
                if !g.contains_node(q) {
                    return Err(InstanceError::QueryOutOfRange(q));
                }
            }
        }
        if kind == TaskKind::Tsp {
            if !g.is_weighted() {
                return Err(InstanceError::WeightMisuse(kind));
            }
            if !g.is_complete() {
                return Err(InstanceError::IncompleteTsp);
            }
        } else if g.is_weighted() {
            return Err(InstanceError::WeightMisuse(kind));
        }
        if kind == TaskKind::Ged {
            let h_ref = h.as_ref().unwrap();
            if !g.is_labeled() || !h_ref.is_labeled() {
                return Err(InstanceError::LabelMisuse(kind));
            }
            if g.node_count() != h_ref.node_count() {
                return Err(InstanceError::UnequalNodeCounts(g.node_count(), h_ref.node_count()));
            }
        } else if g.is_labeled() || h.as_ref().is_some_and(Graph::is_labeled) {
            return Err(InstanceError::LabelMisuse(kind));
        }
        let size_class = kind.classify_size(g.node_count());
        Ok(TaskInstance {
            kind,
            g,
            h,
            query,
            size_class,
            instance_id: instance_id.into(),
        })
    }

    /// Second graph; panics for one-graph kinds (guarded by construction).
    pub fn second_graph(&self) -> &Graph {
        self.h.as_ref().expect("two-graph task")
    }

    /// Query pair; panics for non-query kinds (guarded by construction).
    pub fn query_pair(&self) -> (u32, u32) {
        self.query.expect("query task")
    }

    /// Bit-exact instance text per the per-kind input grammar.
    pub fn render_text(&self) -> String {
        text::render_instance_text(self)
    }
}

/// Parses instance text in the per-kind input grammar.
pub fn parse_instance_text(input: &str, kind: TaskKind) -> Result<TaskInstance, ParseError> {
    text::parse_instance_text(input, kind)
}

/// Renders the bit-exact instance text; inverse of [`parse_instance_text`].
pub fn render_instance_text(inst: &TaskInstance) -> String {
    text::render_instance_text(inst)
}
