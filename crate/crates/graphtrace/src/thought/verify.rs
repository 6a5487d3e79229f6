//! Replay verification: re-execute a trace's claims against its instance.
//!
//! Free choices (which optimal node was added, the sweep source, the tour
//! start) are read from the trace; every consequence — adjacency lists,
//! isolated-node lists, removals, remaining nodes, hop weights, running
//! costs, subtours — is recomputed and compared byte-for-byte. The report
//! carries the first divergent line, plus validity of the embedded final
//! solution. Divergence is data, not an error.

use crate::eval;
use crate::graph::{Graph, TaskInstance, TaskKind};
use crate::solve::Solution;

use super::forward::diameter_trace_from;
use super::templates as t;
use super::ThoughtTrace;

/// First line where the trace disagrees with recomputation (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub line: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayReport {
    pub consistent: bool,
    pub divergence: Option<Divergence>,
    pub final_solution: Option<Solution>,
    pub final_valid: bool,
    pub final_reason: String,
}

/// Replays `trace_text` against the instance.
pub fn verify_trace(inst: &TaskInstance, trace_text: &str) -> ReplayReport {
    let lines: Vec<&str> = trace_text.lines().collect();
    let divergence = replay(inst, &lines).err();
    let final_solution = eval::parse_answer(inst.kind, trace_text);
    let (final_valid, final_reason) = match &final_solution {
        Some(sol) => eval::validate_solution(inst, sol),
        None => (false, "no parseable final solution".to_string()),
    };
    ReplayReport {
        consistent: divergence.is_none(),
        divergence,
        final_solution,
        final_valid,
        final_reason,
    }
}

struct Cursor<'a> {
    lines: &'a [&'a str],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(lines: &'a [&'a str]) -> Self {
        Cursor { lines, pos: 0 }
    }

    fn lineno(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn diverge(&self, expected: impl Into<String>) -> Divergence {
        Divergence {
            line: self.lineno(),
            expected: expected.into(),
            found: self.peek().unwrap_or("<end of trace>").to_string(),
        }
    }

    /// The next line must equal the recomputed text exactly.
    fn expect(&mut self, expected: String) -> Result<(), Divergence> {
        match self.peek() {
            Some(found) if found == expected => {
                self.advance();
                Ok(())
            }
            _ => Err(self.diverge(expected)),
        }
    }

    fn end(&self) -> Result<(), Divergence> {
        if self.pos == self.lines.len() {
            Ok(())
        } else {
            Err(Divergence {
                line: self.lineno(),
                expected: "<end of trace>".into(),
                found: self.peek().unwrap().to_string(),
            })
        }
    }

    /// Extracts `{prefix}{number}{suffix}` from the next line.
    fn take_u32(&mut self, prefix: &str, suffix: &str) -> Result<u32, Divergence> {
        let parsed = self.peek().and_then(|line| {
            line.strip_prefix(prefix)?
                .strip_suffix(suffix)?
                .parse::<u32>()
                .ok()
        });
        match parsed {
            Some(v) => {
                self.advance();
                Ok(v)
            }
            None => Err(self.diverge(format!("{prefix}<node>{suffix}"))),
        }
    }
}

fn replay(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    match inst.kind {
        TaskKind::Neighbor => diff_generated(super::forward::trace_neighbor(inst).unwrap(), lines),
        TaskKind::Distance => diff_generated(super::forward::trace_distance(inst).unwrap(), lines),
        TaskKind::Connected => diff_generated(super::forward::trace_connected(inst).unwrap(), lines),
        TaskKind::Diameter => replay_diameter(inst, lines),
        TaskKind::Mis => replay_mis(inst, lines),
        TaskKind::Mvc => replay_mvc(inst, lines),
        TaskKind::Mcp => replay_mcp(inst, lines),
        TaskKind::Tsp => replay_tsp(inst, lines),
        TaskKind::Mcs => replay_mcs(inst, lines),
        TaskKind::Ged => replay_ged(inst, lines),
    }
}

/// Fully deterministic traces replay as regenerate-and-diff: every line is
/// recomputed from the instance.
fn diff_generated(expected: ThoughtTrace, found: &[&str]) -> Result<(), Divergence> {
    let mut cursor = Cursor::new(found);
    for line in &expected.lines {
        cursor.expect(line.rendered.clone())?;
    }
    cursor.end()
}

fn replay_diameter(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    let mut cursor = Cursor::new(lines);
    let source = cursor.take_u32(
        "Choose the most appropriate node as source node of the diameter path: ",
        ".",
    )?;
    if !inst.g.contains_node(source) {
        return Err(Divergence {
            line: 1,
            expected: "a source node of the graph".into(),
            found: lines[0].to_string(),
        });
    }
    // The sweep from the claimed source is deterministic.
    let expected = diameter_trace_from(inst, source);
    for line in &expected.lines[1..] {
        cursor.expect(line.rendered.clone())?;
    }
    cursor.end()
}

fn replay_mis(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    let mut cursor = Cursor::new(lines);
    let mut residual = inst.g.clone();
    let mut acc: Vec<u32> = Vec::new();
    loop {
        let isolated = residual.isolated_nodes();
        cursor.expect(t::add_isolated(&isolated))?;
        acc.extend(&isolated);
        residual = residual.remove_nodes(&isolated).unwrap();
        if residual.node_count() == 0 {
            cursor.expect(t::remaining_nodes(&[]))?;
            break;
        }
        let u = cursor.take_u32("Add the most appropriate node: ", ".")?;
        if !residual.contains_node(u) {
            return Err(Divergence {
                line: cursor.lineno() - 1,
                expected: "a node of the remaining graph".into(),
                found: t::add_best(u),
            });
        }
        acc.push(u);
        cursor.expect(t::current_independent_set(&acc))?;
        let neighbors = residual.neighbors(u).unwrap().to_vec();
        cursor.expect(t::remove_neighbors_of(u, &neighbors))?;
        let mut gone = neighbors;
        gone.push(u);
        residual = residual.remove_nodes(&gone).unwrap();
        cursor.expect(t::remaining_nodes(residual.nodes()))?;
        if residual.node_count() == 0 {
            break;
        }
    }
    cursor.expect(t::finished())?;
    cursor.expect(t::mis_final(&acc))?;
    cursor.end()
}

fn replay_mvc(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    let mut cursor = Cursor::new(lines);
    let mut residual = inst.g.clone();
    let mut acc: Vec<u32> = Vec::new();
    loop {
        let isolated = residual.isolated_nodes();
        cursor.expect(t::remove_isolated(&isolated))?;
        residual = residual.remove_nodes(&isolated).unwrap();
        if residual.edge_count() == 0 {
            cursor.expect(t::no_edge_left())?;
            break;
        }
        let u = cursor.take_u32("Add the most appropriate node: ", ".")?;
        if !residual.contains_node(u) {
            return Err(Divergence {
                line: cursor.lineno() - 1,
                expected: "a node of the remaining graph".into(),
                found: t::add_best(u),
            });
        }
        acc.push(u);
        cursor.expect(t::current_vertex_cover(&acc))?;
        let mut incident: Vec<(u32, u32)> = residual
            .neighbors(u)
            .unwrap()
            .iter()
            .map(|&v| (u.min(v), u.max(v)))
            .collect();
        incident.sort_unstable();
        cursor.expect(t::remove_edges_of(u, &incident))?;
        residual = residual.remove_edges(&incident);
    }
    cursor.expect(t::finished())?;
    cursor.expect(t::mvc_final(&acc))?;
    cursor.end()
}

fn replay_mcp(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    let g = &inst.g;
    let mut cursor = Cursor::new(lines);
    let mut acc: Vec<u32> = Vec::new();
    let mut candidates: Vec<u32> = g.nodes().to_vec();
    loop {
        let u = cursor.take_u32("Add the most appropriate node: ", ".")?;
        if !candidates.contains(&u) {
            return Err(Divergence {
                line: cursor.lineno() - 1,
                expected: "a common neighbor of the current clique".into(),
                found: t::add_best(u),
            });
        }
        acc.push(u);
        cursor.expect(t::current_clique(&acc))?;
        candidates = g
            .nodes()
            .iter()
            .copied()
            .filter(|&w| acc.iter().all(|&c| g.has_edge(c, w)))
            .collect();
        if candidates.is_empty() {
            break;
        }
        cursor.expect(t::clique_common_neighbors(&candidates))?;
    }
    cursor.expect(t::finished())?;
    cursor.expect(t::mcp_final(&acc))?;
    cursor.end()
}

fn replay_tsp(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    let g = &inst.g;
    let n = g.node_count();
    let mut cursor = Cursor::new(lines);
    let start = cursor.take_u32("Choose starting node: ", ".")?;
    if !g.contains_node(start) {
        return Err(Divergence {
            line: 1,
            expected: "a starting node of the graph".into(),
            found: lines[0].to_string(),
        });
    }
    let mut subtour = vec![start];
    if n > 1 {
        while subtour.len() < n as usize + 1 {
            let found = cursor.peek().map(str::to_string);
            let (v, after, w) = parse_hop(&mut cursor)?;
            let prev = *subtour.last().unwrap();
            let closing = subtour.len() == n as usize;
            let valid_next = if closing {
                v == start
            } else {
                g.contains_node(v) && !subtour.contains(&v)
            };
            let true_weight = g.weight(after, v);
            if after != prev || !valid_next || true_weight != Some(w) {
                let expected = match true_weight {
                    Some(tw) if after == prev && valid_next => t::choose_hop(v, prev, tw),
                    _ => format!("a hop from node {prev} to an unvisited node with its true weight"),
                };
                return Err(Divergence {
                    line: cursor.lineno() - 1,
                    expected,
                    found: found.unwrap_or_default(),
                });
            }
            subtour.push(v);
            cursor.expect(t::current_subtour(&subtour))?;
        }
    } else {
        subtour.push(start);
    }
    cursor.expect(t::finished())?;
    cursor.expect(t::tsp_final(&subtour))?;
    cursor.end()
}

fn parse_hop(cursor: &mut Cursor) -> Result<(u32, u32, u32), Divergence> {
    let parsed = cursor.peek().and_then(|line| {
        let rest = line.strip_prefix("Choose node ")?;
        let (v, rest) = rest.split_once(" after node ")?;
        let (after, rest) = rest.split_once(" with weight ")?;
        let w = rest.strip_suffix('.')?;
        Some((v.parse().ok()?, after.parse().ok()?, w.parse().ok()?))
    });
    match parsed {
        Some(t) => {
            cursor.advance();
            Ok(t)
        }
        None => Err(cursor.diverge("Choose node <v> after node <u> with weight <w>.")),
    }
}

/// `(index, node)` pairs of the current list, split by adjacency to `node`.
type IndexedNodes = Vec<(u32, u32)>;

fn mcs_split(graph: &Graph, node: u32, chosen: &[u32]) -> (IndexedNodes, IndexedNodes) {
    let mut connected = Vec::new();
    let mut rest = Vec::new();
    for (i, &c) in chosen.iter().enumerate() {
        if graph.has_edge(c, node) {
            connected.push((i as u32, c));
        } else {
            rest.push((i as u32, c));
        }
    }
    (connected, rest)
}

fn replay_mcs(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    let g = &inst.g;
    let h = inst.second_graph();
    let mut cursor = Cursor::new(lines);
    let (u0, v0) = parse_pair_line(
        &mut cursor,
        "Choose node ",
        " of G, and node ",
        " of H that has a similar neighborhood structure.",
    )?;
    if !g.contains_node(u0) || !h.contains_node(v0) {
        return Err(Divergence {
            line: cursor.lineno() - 1,
            expected: "a node of G paired with a node of H".into(),
            found: t::choose_first_pair(u0, v0),
        });
    }
    let mut gsel = vec![u0];
    let mut hsel = vec![v0];
    cursor.expect(t::current_subgraph_lists(&gsel, &hsel))?;
    loop {
        if cursor.peek() == Some("Finished!") {
            cursor.advance();
            break;
        }
        let u = parse_justify_node(&mut cursor, "sub_g_nodes")?;
        let (cg, rg) = mcs_split(g, u, &gsel);
        // Re-render the whole justification from the claimed node.
        cursor.pos -= 1;
        cursor.expect(t::justify(t::McsSide::G, u, &cg, &rg))?;
        let v = parse_justify_node(&mut cursor, "sub_h_nodes")?;
        let (ch, rh) = mcs_split(h, v, &hsel);
        cursor.pos -= 1;
        cursor.expect(t::justify(t::McsSide::H, v, &ch, &rh))?;
        let same_indices =
            cg.iter().map(|p| p.0).collect::<Vec<_>>() == ch.iter().map(|p| p.0).collect::<Vec<_>>();
        if !same_indices || gsel.contains(&u) || hsel.contains(&v) {
            return Err(Divergence {
                line: cursor.lineno(),
                expected: format!(
                    "a fresh pair whose neighbor indices match (node {u} of G vs node {v} of H)"
                ),
                found: cursor.peek().unwrap_or("<end of trace>").to_string(),
            });
        }
        cursor.expect(t::choose_pair(u, v))?;
        gsel.push(u);
        hsel.push(v);
        cursor.expect(t::current_subgraph_lists(&gsel, &hsel))?;
    }
    cursor.expect(t::mcs_final(&gsel, &hsel))?;
    cursor.end()
}

fn parse_pair_line(
    cursor: &mut Cursor,
    prefix: &str,
    mid: &str,
    suffix: &str,
) -> Result<(u32, u32), Divergence> {
    let parsed = cursor.peek().and_then(|line| {
        let rest = line.strip_prefix(prefix)?;
        let (a, rest) = rest.split_once(mid)?;
        let b = rest.strip_suffix(suffix)?;
        Some((a.parse().ok()?, b.parse().ok()?))
    });
    match parsed {
        Some(p) => {
            cursor.advance();
            Ok(p)
        }
        None => Err(cursor.diverge(format!("{prefix}<u>{mid}<v>{suffix}"))),
    }
}

/// Pulls the subject node out of a justification line, whatever its variant.
fn parse_justify_node(cursor: &mut Cursor, list_name: &str) -> Result<u32, Divergence> {
    let prefix = format!("In {list_name}, node ");
    let parsed = cursor.peek().and_then(|line| {
        let rest = line.strip_prefix(prefix.as_str())?;
        let end = rest.find(' ')?;
        rest[..end].parse::<u32>().ok()
    });
    match parsed {
        Some(u) => {
            cursor.advance();
            Ok(u)
        }
        None => Err(cursor.diverge(format!("{prefix}<node> ..."))),
    }
}

fn replay_ged(inst: &TaskInstance, lines: &[&str]) -> Result<(), Divergence> {
    let g = &inst.g;
    let h = inst.second_graph();
    let n = g.node_count();
    let mut cursor = Cursor::new(lines);
    let mut mapping: Vec<u32> = Vec::new();
    let mut cost = 0i64;
    for i in 0..n {
        let j = parse_map_target(&mut cursor, i)?;
        if !h.contains_node(j) || mapping.contains(&j) {
            return Err(Divergence {
                line: cursor.lineno() - 1,
                expected: format!("an unused node of H as the image of node {i}"),
                found: lines[cursor.pos - 1].to_string(),
            });
        }
        // Re-render with the true labels; a lied label diverges here.
        cursor.pos -= 1;
        cursor.expect(t::map_node(i, g.label(i).unwrap(), j, h.label(j).unwrap()))?;
        let same = g.label(i) == h.label(j);
        cost += i64::from(!same);
        cursor.expect(t::label_cost(i, j, same))?;
        let mut deletions = Vec::new();
        let mut additions = Vec::new();
        for u in 0..i {
            let in_g = g.has_edge(u, i);
            let in_h = h.has_edge(mapping[u as usize], j);
            if in_g && !in_h {
                deletions.push(u);
            } else if !in_g && in_h {
                additions.push(u);
            }
        }
        mapping.push(j);
        if !deletions.is_empty() {
            cost += deletions.len() as i64;
            cursor.expect(t::edge_deletion_cost(&deletions, i, j))?;
        }
        if !additions.is_empty() {
            cost += additions.len() as i64;
            cursor.expect(t::edge_addition_cost(&additions, i, j))?;
        }
        cursor.expect(t::current_mapping(&mapping, cost))?;
    }
    cursor.expect(t::finished())?;
    cursor.expect(t::ged_final(&mapping))?;
    cursor.end()
}

fn parse_map_target(cursor: &mut Cursor, i: u32) -> Result<u32, Divergence> {
    let prefix = format!("Mapping node {i} labeled <");
    let parsed = cursor.peek().and_then(|line| {
        let rest = line.strip_prefix(prefix.as_str())?;
        let (_, rest) = rest.split_once("> of graph G to node ")?;
        let (j, _) = rest.split_once(" labeled <")?;
        j.parse::<u32>().ok()
    });
    match parsed {
        Some(j) => {
            cursor.advance();
            Ok(j)
        }
        None => Err(cursor.diverge(format!("{prefix}label> of graph G to node <j> ..."))),
    }
}
