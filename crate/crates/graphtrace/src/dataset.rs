//! Corpus construction and serialization into fine-tuning-ready records.
//!
//! A record pairs the task-description preamble plus rendered instance text
//! (the prompt) with the rendered reasoning trace (the supervision target),
//! or just the trace's final-solution line in answer-only mode. Generation is
//! fully deterministic in the master seed: per-instance seeds are derived by
//! hashing `(master, kind, size, index, attempt)`, instances that time out
//! in the solver are resampled with the next attempt number, and records are
//! ordered by `(kind, size, index)` no matter how many workers run.
//!
//! On disk a corpus is UTF-8 JSON Lines — one record object per line, with
//! newlines inside fields escaped by JSON — plus a manifest carrying counts,
//! the master seed, the generator version, and a SHA-256 content digest.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{sample_instance, SizeClass, TaskInstance, TaskKind};
use crate::solve::{solver_info, SolveError, TimeBudget};
use crate::thought::{generate_trace_with, ThoughtError};

pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Attempts per slot before giving up on resampling.
const MAX_ATTEMPTS: u64 = 16;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("could not generate a record for {kind}/{size} slot {index} after {attempts} attempts")]
    Exhausted {
        kind: TaskKind,
        size: SizeClass,
        index: usize,
        attempts: u64,
    },
    #[error("trace generation failed: {0}")]
    Thought(#[from] ThoughtError),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus line {line} does not parse: {source}")]
    BadRecord {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("manifest does not parse: {0}")]
    BadManifest(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusMode {
    /// Full reasoning trace as the supervision target.
    Thought,
    /// Only the trace's final-solution line.
    AnswerOnly,
}

impl std::str::FromStr for CorpusMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "thought" => Ok(CorpusMode::Thought),
            "answer-only" => Ok(CorpusMode::AnswerOnly),
            other => Err(format!("unknown mode `{other}` (thought | answer-only)")),
        }
    }
}

/// What to generate: per-cell instance counts, the master seed, the mode,
/// and an optional output-length cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub counts: BTreeMap<(TaskKind, SizeClass), usize>,
    pub master_seed: u64,
    pub mode: CorpusMode,
    /// Records whose output exceeds this many characters are resampled,
    /// keeping cell counts exact. `None` disables the filter.
    pub max_output_chars: Option<usize>,
}

impl CorpusSpec {
    /// The same count for every requested (task, size) cell.
    pub fn even(tasks: &[TaskKind], sizes: &[SizeClass], per_cell: usize, master_seed: u64, mode: CorpusMode) -> CorpusSpec {
        let mut counts = BTreeMap::new();
        for &kind in tasks {
            for &size in sizes {
                counts.insert((kind, size), per_cell);
            }
        }
        CorpusSpec { counts, master_seed, mode, max_output_chars: None }
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub instance_id: String,
    pub kind: TaskKind,
    pub size_class: SizeClass,
    /// Derived per-instance sampling seed.
    pub seed: u64,
    pub solver: String,
    /// False when an exact-mode limit forced a heuristic reference solution.
    pub exact: bool,
    pub generator_version: String,
}

/// One supervision pair: prompt text in, trace text out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub input: String,
    pub output: String,
    pub meta: RecordMeta,
}

/// Task-description preambles, stored verbatim as static assets.
pub fn task_description(kind: TaskKind) -> &'static str {
    match kind {
        TaskKind::Connected => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. I'll give an instance of a graph, and the task is to identify one representative node from each connected component within the graph.",
        TaskKind::Distance => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. I'll give an instance of a graph, please help me find the shortest path between two nodes in the graph and list the steps and results for each iteration. The shortest path between two nodes is defined as the path with the fewest edges that connect the source node to the target node. If no path exists, output an empty path.",
        TaskKind::Neighbor => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. I'll give an instance of a graph and two nodes, please help me find the common neighbor nodes of the given two nodes in the graph.",
        TaskKind::Mvc => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. I'll give an instance of a graph, please help me find the minimum vertex cover in the graph and list the steps and results for each iteration. The Minimum Vertex Cover problem is an optimization problem in graph theory that aims to find the smallest set of vertices in a graph such that every edge in the graph is incident to at least one vertex in the set.",
        TaskKind::Mis => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. I'll give an instance of a graph, please help me find the maximum independent set in the graph and list the steps and results for each iteration. The Maximum Independent Set problem is an optimization problem in graph theory that aims to identify the largest set of vertices in a graph, where no two vertices in the set are adjacent.",
        TaskKind::Diameter => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. I'll give an instance of a graph, please help me find the diameter of the graph and list the steps and results for each iteration. The diameter of a graph is the longest shortest path between any two nodes in the graph.",
        TaskKind::Mcp => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. I'll give an instance of a graph, please help me find the maximum clique in the graph and list the steps and results for each iteration. The Maximum Clique Problem is an optimization problem in graph theory that aims to identify the largest set of vertices in a graph, where every two vertices in the set are adjacent.",
        TaskKind::Tsp => "In an undirected graph, (i,j,k) means that node i and node j are connected with an undirected edge with weight k. I'll give an instance of a graph, please help me find the solution of the TSP problem in the given graph and list the steps and results for each iteration. The Traveling Salesman Problem (TSP) is a classic combinatorial optimization problem where, given a set of cities(nodes), the goal is to find the shortest possible route that visits each city(node) exactly once and returns to the starting city(node). For each iteration, please select the most appropriate node considering it's distance from the previous node and it's influence of total travel distance.",
        TaskKind::Mcs => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge, we call i and j are neighbors. Please find the maximum common subgraph of two graphs and list the steps and results for each iteration. The maximum common subgraph problem is defined as follows: given two graphs G and H, the task is to find a maximum subgraph sub_g of G and a subgraph sub_h of H such that sub_g and sub_h are isomorphic. That means some nodes of G and H should be put in the nodes lists sub_g_nodes and sub_h_nodes respectively satisfying the following 3 simple requirements. Firstly, sub_g_nodes and sub_h_nodes has the equal length. Secondly, any two nodes in sub_g_nodes or sub_h_nodes are different. Thirdly, for any available indices i and j, if (sub_g_nodes[i], sub_g_nodes[j]) is an edge of G, then (sub_h_nodes[i], sub_h_nodes[j]) must be also an edge of H, and vice versa. The objective is to maximize the length of sub_g_nodes. For each iteration, please choose a node u of G and another node v of H such that the indices of u'neighbors in sub_g_nodes must be same to the indices of v's neighbors in sub_h_nodes.",
        TaskKind::Ged => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge, we call i and j are neighbors. Next, I'll give you two special graphs, where each node has a label. You are required to solve the Graph Edit Distance problem between two graphs. The problem is to establish a one-to-one mapping between nodes from graph G to graph H, ensuring that each node in graph G corresponds to exactly one node in graph H, vice versa. For convenience, the notation i~j denotes one node mapping from node i in graph G to node j in graph H, also abbreviated as map(i)=j. For the node mapping i~j, if labels of node i and node j are the same, then the cost associated with i~j is 0, otherwise the cost is 1. For any two node mapping i~j and p~q from graph G to graph H, if (i,p) is an edge of G and (j,q) is not an edge of H, then i~j and p~q incur an edge deletion cost of 1, else if (i,p) is not an edge of G and (j,q) is an edge of H, then the edge insertion cost is 1, otherwise the edge cost is 0. The total cost is the sum of all node mapping costs and all edge costs. The objective is to minimize the total cost of a node mapping from G to H. You should represent the node mapping with an integer list L, such that node i~L[i] for all i. For instance, if node 0 in graph G corresponds to node 1 in graph H, node 1 in graph G corresponds to node 0 in graph H, and node 2 remains unchanged, the mapping would be represented as [1, 0, 2, ...].",
    }
}

/// Prompt text for one instance: description preamble plus instance text.
pub fn record_input(inst: &TaskInstance) -> String {
    format!("{}\n{}", task_description(inst.kind), inst.render_text())
}

/// Per-slot sampling seed, stable across runs and worker counts.
pub fn derive_instance_seed(master: u64, kind: TaskKind, size: SizeClass, index: usize, attempt: u64) -> u64 {
    derive_seed(master, kind, size, index, attempt)
}

fn derive_seed(master: u64, kind: TaskKind, size: SizeClass, index: usize, attempt: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update([kind as u8, size as u8]);
    hasher.update((index as u64).to_le_bytes());
    hasher.update(attempt.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

fn build_one(
    spec: &CorpusSpec,
    kind: TaskKind,
    size: SizeClass,
    index: usize,
) -> Result<DatasetRecord, DatasetError> {
    for attempt in 0..MAX_ATTEMPTS {
        let seed = derive_seed(spec.master_seed, kind, size, index, attempt);
        let inst = sample_instance(kind, size, seed);
        let trace = match generate_trace_with(&inst, &TimeBudget::default()) {
            Ok(trace) => trace,
            Err(ThoughtError::Solve(SolveError::Timeout)) => {
                log::warn!("solver timeout on {}; resampling (attempt {attempt})", inst.instance_id);
                continue;
            }
            Err(other) => return Err(other.into()),
        };
        let output = match spec.mode {
            CorpusMode::Thought => trace.render(),
            CorpusMode::AnswerOnly => trace.lines.last().expect("traces are non-empty").rendered.clone(),
        };
        if spec.max_output_chars.is_some_and(|cap| output.chars().count() > cap) {
            log::debug!("output over the length cap on {}; resampling (attempt {attempt})", inst.instance_id);
            continue;
        }
        let (solver, exact) = solver_info(&inst);
        return Ok(DatasetRecord {
            input: record_input(&inst),
            output,
            meta: RecordMeta {
                instance_id: inst.instance_id.clone(),
                kind,
                size_class: size,
                seed,
                solver: solver.to_string(),
                exact,
                generator_version: GENERATOR_VERSION.to_string(),
            },
        });
    }
    Err(DatasetError::Exhausted { kind, size, index, attempts: MAX_ATTEMPTS })
}

/// Builds the corpus described by `spec`. Deterministic in the master seed;
/// parallel generation never changes record order or content.
pub fn build_corpus(spec: &CorpusSpec) -> Result<Vec<DatasetRecord>, DatasetError> {
    let slots: Vec<(TaskKind, SizeClass, usize)> = spec
        .counts
        .iter()
        .flat_map(|(&(kind, size), &count)| (0..count).map(move |i| (kind, size, i)))
        .collect();
    slots
        .par_iter()
        .map(|&(kind, size, index)| build_one(spec, kind, size, index))
        .collect()
}

/// Same instances and inputs as [`build_corpus`] under the same seed, with
/// outputs reduced to the final-solution line.
pub fn build_answer_only(spec: &CorpusSpec) -> Result<Vec<DatasetRecord>, DatasetError> {
    let spec = CorpusSpec { mode: CorpusMode::AnswerOnly, ..spec.clone() };
    build_corpus(&spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCount {
    pub kind: TaskKind,
    pub size_class: SizeClass,
    pub count: usize,
}

/// The fixed synthetic-sampling constants, recorded for reproducibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingParams {
    pub edge_probability_range: (f64, f64),
    pub tsp_weight_range: (u32, u32),
    pub label_alphabet: Vec<String>,
}

impl Default for SamplingParams {
    fn default() -> Self {
        SamplingParams {
            edge_probability_range: crate::graph::EDGE_PROB_RANGE,
            tsp_weight_range: crate::graph::TSP_WEIGHT_RANGE,
            label_alphabet: crate::graph::LABEL_ALPHABET.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Everything needed to regenerate and verify a corpus file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub counts: Vec<CellCount>,
    pub total: usize,
    pub master_seed: Option<u64>,
    pub mode: Option<CorpusMode>,
    pub max_output_chars: Option<usize>,
    pub sampling: SamplingParams,
    pub generator_version: String,
    /// SHA-256 of the corpus file bytes, hex.
    pub digest: String,
}

impl Manifest {
    pub fn write(&self, path: &Path) -> Result<(), DatasetError> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(path, json).map_err(|source| DatasetError::Io { path: path.to_owned(), source })
    }

    pub fn read(path: &Path) -> Result<Manifest, DatasetError> {
        let text = fs::read_to_string(path).map_err(|source| DatasetError::Io { path: path.to_owned(), source })?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Sibling manifest path for a corpus file.
pub fn manifest_path(corpus: &Path) -> PathBuf {
    let mut name = corpus.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    corpus.with_file_name(name)
}

fn cell_counts(records: &[DatasetRecord]) -> Vec<CellCount> {
    let mut counts: BTreeMap<(TaskKind, SizeClass), usize> = BTreeMap::new();
    for r in records {
        *counts.entry((r.meta.kind, r.meta.size_class)).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|((kind, size_class), count)| CellCount { kind, size_class, count })
        .collect()
}

/// Writes records as JSON Lines plus a sibling manifest; returns the manifest.
pub fn emit_records(records: &[DatasetRecord], path: &Path) -> Result<Manifest, DatasetError> {
    emit_with_provenance(records, path, None, None, None)
}

/// [`emit_records`] with the generating spec recorded in the manifest.
pub fn emit_corpus(spec: &CorpusSpec, records: &[DatasetRecord], path: &Path) -> Result<Manifest, DatasetError> {
    emit_with_provenance(records, path, Some(spec.master_seed), Some(spec.mode), spec.max_output_chars)
}

fn emit_with_provenance(
    records: &[DatasetRecord],
    path: &Path,
    master_seed: Option<u64>,
    mode: Option<CorpusMode>,
    max_output_chars: Option<usize>,
) -> Result<Manifest, DatasetError> {
    let io_err = |source| DatasetError::Io { path: path.to_owned(), source };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut writer = BufWriter::new(file);
    let mut hasher = Sha256::new();
    for record in records {
        let line = serde_json::to_string(record).expect("record serializes");
        hasher.update(line.as_bytes());
        hasher.update(b"\n");
        writer.write_all(line.as_bytes()).map_err(io_err)?;
        writer.write_all(b"\n").map_err(io_err)?;
    }
    writer.flush().map_err(io_err)?;
    let digest = hex_digest(hasher);
    let manifest = Manifest {
        counts: cell_counts(records),
        total: records.len(),
        master_seed,
        mode,
        max_output_chars,
        sampling: SamplingParams::default(),
        generator_version: GENERATOR_VERSION.to_string(),
        digest,
    };
    manifest.write(&manifest_path(path))?;
    Ok(manifest)
}

fn hex_digest(hasher: Sha256) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    for b in hasher.finalize() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Reloads a JSON Lines corpus.
pub fn load_records(path: &Path) -> Result<Vec<DatasetRecord>, DatasetError> {
    let text = fs::read_to_string(path).map_err(|source| DatasetError::Io { path: path.to_owned(), source })?;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let record = serde_json::from_str(line).map_err(|source| DatasetError::BadRecord { line: i + 1, source })?;
        records.push(record);
    }
    Ok(records)
}
