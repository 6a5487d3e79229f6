//! The instance text grammar, both directions.
//!
//! One-graph kinds:
//! `The graph has {n} nodes. The nodes are numbered from 0 to {n-1}, and the
//! edges are: [{edges}].` with a query suffix for Neighbor/Distance and
//! weighted `(u, v, w)` triples for TSP. MCS and GED use the two-graph form,
//! GED with `(i, '{label}')` node lists. Edges render ascending with `u < v`;
//! the parser accepts any edge order and canonicalizes.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{Graph, InstanceError, TaskInstance, TaskKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected `{expected}` at byte {at}, found `{found}`")]
    Expected {
        expected: String,
        at: usize,
        found: String,
    },
    #[error("malformed {what}: offending token `{token}`")]
    Malformed { what: &'static str, token: String },
    #[error("trailing input after instance: `{0}`")]
    Trailing(String),
    #[error("node numbering says 0 to {said} but the graph has {n} nodes")]
    NumberingMismatch { said: u32, n: u32 },
    #[error("{0}")]
    Invalid(#[from] InstanceError),
}

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn peek_token(&self) -> String {
        let rest = self.rest();
        let end = rest
            .char_indices()
            .take(24)
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        rest[..end].to_string()
    }

    fn expect(&mut self, literal: &str) -> Result<(), ParseError> {
        if self.rest().starts_with(literal) {
            self.pos += literal.len();
            Ok(())
        } else {
            Err(ParseError::Expected {
                expected: literal.to_string(),
                at: self.pos,
                found: self.peek_token(),
            })
        }
    }

    fn eat(&mut self, literal: &str) -> bool {
        if self.rest().starts_with(literal) {
            self.pos += literal.len();
            true
        } else {
            false
        }
    }

    fn parse_u32(&mut self, what: &'static str) -> Result<u32, ParseError> {
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(ParseError::Malformed {
                what,
                token: self.peek_token(),
            });
        }
        let value = rest[..len].parse().map_err(|_| ParseError::Malformed {
            what,
            token: rest[..len].to_string(),
        })?;
        self.pos += len;
        Ok(value)
    }

    fn done(&self) -> bool {
        self.pos == self.input.len()
    }
}

fn parse_edge_list(c: &mut Cursor, weighted: bool) -> Result<Vec<(u32, u32, u32)>, ParseError> {
    c.expect("[")?;
    let mut edges = Vec::new();
    if c.eat("]") {
        return Ok(edges);
    }
    loop {
        c.expect("(")?;
        let u = c.parse_u32("edge list")?;
        c.expect(", ")?;
        let v = c.parse_u32("edge list")?;
        let w = if weighted {
            c.expect(", ")?;
            c.parse_u32("edge weight")?
        } else {
            0
        };
        c.expect(")")?;
        edges.push((u, v, w));
        if c.eat("]") {
            return Ok(edges);
        }
        c.expect(", ")?;
    }
}

fn parse_labeled_nodes(c: &mut Cursor) -> Result<Vec<(u32, String)>, ParseError> {
    c.expect("[")?;
    let mut out = Vec::new();
    if c.eat("]") {
        return Ok(out);
    }
    loop {
        c.expect("(")?;
        let u = c.parse_u32("node list")?;
        c.expect(", '")?;
        let rest = c.rest();
        let len = rest.find('\'').ok_or_else(|| ParseError::Malformed {
            what: "node label",
            token: c.peek_token(),
        })?;
        let label = rest[..len].to_string();
        c.pos += len;
        c.expect("')")?;
        out.push((u, label));
        if c.eat("]") {
            return Ok(out);
        }
        c.expect(", ")?;
    }
}

/// Header of a one-graph instance; returns the node count.
fn parse_header(c: &mut Cursor) -> Result<u32, ParseError> {
    c.expect("The graph has ")?;
    let n = c.parse_u32("node count")?;
    c.expect(" nodes. The nodes are numbered from 0 to ")?;
    let hi = c.parse_u32("node numbering")?;
    if n == 0 || hi != n - 1 {
        return Err(ParseError::NumberingMismatch { said: hi, n });
    }
    c.expect(", and the edges are: ")?;
    Ok(n)
}

/// One side of a two-graph instance. GED carries labeled node lists.
fn parse_two_graph_side(c: &mut Cursor, name: &str, labeled: bool) -> Result<Graph, ParseError> {
    c.expect(&format!("The graph {name} has "))?;
    let n = c.parse_u32("node count")?;
    let labels = if labeled {
        c.expect(" nodes, the nodes are: ")?;
        let labels = parse_labeled_nodes(c)?;
        c.expect(", and the edges are: ")?;
        Some(labels)
    } else {
        c.expect(" nodes, the nodes are numbered from 0 to ")?;
        let hi = c.parse_u32("node numbering")?;
        if n == 0 || hi != n - 1 {
            return Err(ParseError::NumberingMismatch { said: hi, n });
        }
        c.expect(", and the edges are: ")?;
        None
    };
    let edges = parse_edge_list(c, false)?;
    c.expect(".")?;
    let plain: Vec<(u32, u32)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let graph = match labels {
        Some(labels) => {
            let mut sorted = labels;
            sorted.sort_unstable();
            Graph::labeled(n, &sorted, &plain)
        }
        None => Graph::new(n, &plain),
    };
    graph.map_err(|e| ParseError::Invalid(e.into()))
}

pub(super) fn parse_instance_text(input: &str, kind: TaskKind) -> Result<TaskInstance, ParseError> {
    let mut c = Cursor::new(input);
    let (g, h, query) = match kind {
        TaskKind::Mcs | TaskKind::Ged => {
            let labeled = kind == TaskKind::Ged;
            let g = parse_two_graph_side(&mut c, "G", labeled)?;
            c.expect(" ")?;
            let h = parse_two_graph_side(&mut c, "H", labeled)?;
            (g, Some(h), None)
        }
        _ => {
            let n = parse_header(&mut c)?;
            let edges = parse_edge_list(&mut c, kind == TaskKind::Tsp)?;
            c.expect(".")?;
            let g = if kind == TaskKind::Tsp {
                Graph::weighted(n, &edges)
            } else {
                let plain: Vec<(u32, u32)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
                Graph::new(n, &plain)
            }
            .map_err(|e| ParseError::Invalid(e.into()))?;
            let query = match kind {
                TaskKind::Neighbor => {
                    c.expect(" The given nodes are [")?;
                    let a = c.parse_u32("query node")?;
                    c.expect(", ")?;
                    let b = c.parse_u32("query node")?;
                    c.expect("].")?;
                    Some((a, b))
                }
                TaskKind::Distance => {
                    c.expect(" The source node is ")?;
                    let s = c.parse_u32("source node")?;
                    c.expect(", and the target node is ")?;
                    let t = c.parse_u32("target node")?;
                    c.expect(".")?;
                    Some((s, t))
                }
                _ => None,
            };
            (g, None, query)
        }
    };
    if !c.done() {
        return Err(ParseError::Trailing(c.peek_token()));
    }
    let id = derived_id(kind, input);
    Ok(TaskInstance::new(kind, g, h, query, id)?)
}

/// Stable identifier for instances that arrive as bare text.
fn derived_id(kind: TaskKind, text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(kind.slug().as_bytes());
    hasher.update(b"\x00");
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::new();
    for b in &digest[..6] {
        let _ = write!(hex, "{b:02x}");
    }
    format!("{}-text-{hex}", kind.slug())
}

fn fmt_edges(g: &Graph, weighted: bool) -> String {
    let mut out = String::from("[");
    for (i, (u, v)) in g.edges().into_iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        if weighted {
            let w = g.weight(u, v).expect("weighted graph");
            let _ = write!(out, "({u}, {v}, {w})");
        } else {
            let _ = write!(out, "({u}, {v})");
        }
    }
    out.push(']');
    out
}

fn fmt_labeled_nodes(g: &Graph) -> String {
    let mut out = String::from("[");
    for (i, &u) in g.nodes().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let label = g.label(u).expect("labeled graph");
        let _ = write!(out, "({u}, '{label}')");
    }
    out.push(']');
    out
}

fn fmt_two_graph_side(g: &Graph, name: &str, labeled: bool) -> String {
    let n = g.node_count();
    if labeled {
        format!(
            "The graph {name} has {n} nodes, the nodes are: {}, and the edges are: {}.",
            fmt_labeled_nodes(g),
            fmt_edges(g, false)
        )
    } else {
        format!(
            "The graph {name} has {n} nodes, the nodes are numbered from 0 to {}, and the edges are: {}.",
            n - 1,
            fmt_edges(g, false)
        )
    }
}

pub(super) fn render_instance_text(inst: &TaskInstance) -> String {
    match inst.kind {
        TaskKind::Mcs | TaskKind::Ged => {
            let labeled = inst.kind == TaskKind::Ged;
            format!(
                "{} {}",
                fmt_two_graph_side(&inst.g, "G", labeled),
                fmt_two_graph_side(inst.second_graph(), "H", labeled)
            )
        }
        _ => {
            let n = inst.g.node_count();
            let mut out = format!(
                "The graph has {n} nodes. The nodes are numbered from 0 to {}, and the edges are: {}.",
                n - 1,
                fmt_edges(&inst.g, inst.kind == TaskKind::Tsp)
            );
            match inst.kind {
                TaskKind::Neighbor => {
                    let (a, b) = inst.query_pair();
                    let _ = write!(out, " The given nodes are [{a}, {b}].");
                }
                TaskKind::Distance => {
                    let (s, t) = inst.query_pair();
                    let _ = write!(out, " The source node is {s}, and the target node is {t}.");
                }
                _ => {}
            }
            out
        }
    }
}
