//! Solve ten graph combinatorial-optimization tasks exactly, emit
//! step-by-step reasoning-trace training corpora, and grade free-text model
//! answers with optimality metrics.
//!
//! The ten tasks split into four polynomial ones (common neighbors, shortest
//! distance, connected components, diameter) and six NP-hard ones (max
//! clique, max independent set, min vertex cover, max common subgraph, graph
//! edit distance, TSP). For each task the crate provides:
//!
//! - an exact solver with deterministic canonical output ([`solve`]),
//! - a step-by-step trace generator in a fixed line grammar ([`thought`]),
//! - a free-text answer parser and grader ([`eval`]),
//! - synthetic instance sampling and corpus construction ([`graph`],
//!   [`dataset`]),
//! - a chat-completions gateway with a built-in stub server ([`gateway`]).
//!
//! Start with the runnable examples (`cargo run --example ...`); the thin
//! `graphtrace` binary wires the same functions into reproducible pipelines.

pub mod cli;
pub mod dataset;
pub mod eval;
pub mod fixtures;
pub mod gateway;
pub mod graph;
pub mod solve;
pub mod thought;
