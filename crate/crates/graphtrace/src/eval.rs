//! Free-text answer grading: parse, validate, score, and aggregate.
//!
//! Parsing first looks for the task's final-solution sentence (last
//! occurrence wins), then falls back to the last well-formed bracketed
//! integer list in the text, arity-matched to the task. Scoring grades
//! structural validity, the objective, exact optimality, and the symmetric
//! optimality ratio `min(opt/x, x/opt)` for the six NP-hard tasks. Invalid
//! or unparseable answers score ratio 0 rather than being dropped, so
//! best-of-n and means penalize invalidity.

use std::collections::BTreeMap;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, SizeClass, TaskInstance, TaskKind};
use crate::solve::{mapping_cost, tour_weight, ObjectiveSense, Solution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("optimality ratio is defined for the NP-hard tasks only, not {0}")]
    PolynomialRatio(TaskKind),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("best-of-n needs at least one candidate")]
    EmptyCandidates,
}

/// Everything the grader concluded about one candidate answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub parsed: Option<Solution>,
    pub valid: bool,
    /// Why the answer is invalid; empty when valid.
    pub reason: String,
    pub objective: Option<i64>,
    pub optimal: bool,
    /// In [0, 1]; 1 exactly for optimal answers. For the four polynomial
    /// tasks this is the 0/1 optimality indicator (the fractional ratio is
    /// defined for the NP-hard tasks only).
    pub ratio: f64,
}

impl EvalOutcome {
    fn unparsed() -> Self {
        EvalOutcome {
            parsed: None,
            valid: false,
            reason: "no parseable answer".into(),
            objective: None,
            optimal: false,
            ratio: 0.0,
        }
    }
}

fn final_line_marker(kind: TaskKind) -> &'static str {
    match kind {
        TaskKind::Neighbor => "The common neighbor nodes of the two nodes are",
        TaskKind::Distance => "The shortest path is",
        TaskKind::Connected => "The representative nodes for each connected component are",
        TaskKind::Diameter => "The diameter path is",
        TaskKind::Mis => "The maximum independent set is",
        TaskKind::Mvc => "The minimum vertex cover is",
        TaskKind::Mcp => "The maximum clique is",
        TaskKind::Tsp => "The optimal solution of TSP is",
        TaskKind::Mcs => "The optimal solution of MCS is",
        TaskKind::Ged => "The optimal mapping of GED is",
    }
}

fn int_list_regex() -> &'static Regex {
    static RE: std::sync::OnceLock<Regex> = std::sync::OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\[\s*\]|\[\d+(?:,\s*\d+)*\]").unwrap())
}

fn parse_int_list(text: &str) -> Vec<u32> {
    text.trim_matches(['[', ']'])
        .split(',')
        .filter_map(|t| t.trim().parse().ok())
        .collect()
}

/// First one or two integer lists in `text`, depending on arity.
fn leading_lists(text: &str, pair: bool) -> Option<(Vec<u32>, Option<Vec<u32>>)> {
    let re = int_list_regex();
    let first = re.find(text)?;
    let a = parse_int_list(first.as_str());
    if !pair {
        return Some((a, None));
    }
    let rest = &text[first.end()..];
    if !rest.starts_with(", ") {
        return None;
    }
    let second = re.find(rest)?;
    if second.start() != 2 {
        return None;
    }
    Some((a, Some(parse_int_list(second.as_str()))))
}

fn shape_solution(kind: TaskKind, a: Vec<u32>, b: Option<Vec<u32>>) -> Solution {
    match kind {
        TaskKind::Neighbor | TaskKind::Connected | TaskKind::Mis | TaskKind::Mvc | TaskKind::Mcp => {
            Solution::NodeSet(a)
        }
        TaskKind::Distance | TaskKind::Diameter => Solution::Path(a),
        TaskKind::Tsp => Solution::Tour(a),
        TaskKind::Ged => Solution::Mapping(a),
        TaskKind::Mcs => Solution::PairedNodeLists(a, b.unwrap_or_default()),
    }
}

/// Extracts a solution from free text, or `None` when nothing parses.
pub fn parse_answer(kind: TaskKind, text: &str) -> Option<Solution> {
    let pair = kind == TaskKind::Mcs;
    // Primary: the task's final-solution sentence, last occurrence.
    let marker = final_line_marker(kind);
    let mut search_from = 0;
    let mut last_hit = None;
    while let Some(pos) = text[search_from..].find(marker) {
        let at = search_from + pos;
        last_hit = Some(at + marker.len());
        search_from = at + marker.len();
    }
    if let Some(after) = last_hit {
        if let Some((a, b)) = leading_lists(&text[after..], pair) {
            if !pair || b.is_some() {
                return Some(shape_solution(kind, a, b));
            }
        }
    }
    // Fallback: last well-formed bracketed integer list(s) anywhere.
    let re = int_list_regex();
    let matches: Vec<_> = re.find_iter(text).collect();
    if pair {
        for i in (1..matches.len()).rev() {
            let gap = &text[matches[i - 1].end()..matches[i].start()];
            if gap == ", " {
                return Some(Solution::PairedNodeLists(
                    parse_int_list(matches[i - 1].as_str()),
                    parse_int_list(matches[i].as_str()),
                ));
            }
        }
        return None;
    }
    matches
        .last()
        .map(|m| shape_solution(kind, parse_int_list(m.as_str()), None))
}

fn component_ids(g: &Graph) -> Vec<u32> {
    let n = g.node_count() as usize;
    let mut comp = vec![u32::MAX; n];
    let mut id = 0;
    for u in 0..n as u32 {
        if comp[u as usize] != u32::MAX {
            continue;
        }
        comp[u as usize] = id;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x).unwrap() {
                if comp[y as usize] == u32::MAX {
                    comp[y as usize] = id;
                    stack.push(y);
                }
            }
        }
        id += 1;
    }
    comp
}

fn bfs_distance(g: &Graph, s: u32, t: u32) -> Option<u32> {
    let mut dist = vec![u32::MAX; g.node_count() as usize];
    dist[s as usize] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u).unwrap() {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    (dist[t as usize] != u32::MAX).then(|| dist[t as usize])
}

fn check_distinct(v: &[u32]) -> Result<(), String> {
    let mut seen = std::collections::BTreeSet::new();
    for &u in v {
        if !seen.insert(u) {
            return Err(format!("node {u} appears twice"));
        }
    }
    Ok(())
}

fn check_in_range(g: &Graph, v: &[u32]) -> Result<(), String> {
    for &u in v {
        if !g.contains_node(u) {
            return Err(format!("node {u} is not in the graph"));
        }
    }
    Ok(())
}

fn validate(inst: &TaskInstance, sol: &Solution) -> Result<(), String> {
    let g = &inst.g;
    match (inst.kind, sol) {
        (TaskKind::Neighbor, Solution::NodeSet(v)) => {
            check_in_range(g, v)?;
            check_distinct(v)?;
            let (a, b) = inst.query_pair();
            for &u in v {
                if !g.has_edge(u, a) || !g.has_edge(u, b) {
                    return Err(format!("node {u} is not a common neighbor of {a} and {b}"));
                }
            }
            Ok(())
        }
        (TaskKind::Distance, Solution::Path(p)) => {
            let (s, t) = inst.query_pair();
            if p.is_empty() {
                return if bfs_distance(g, s, t).is_none() {
                    Ok(())
                } else {
                    Err("empty path, but the target is reachable".into())
                };
            }
            check_in_range(g, p)?;
            check_distinct(p)?;
            if p[0] != s {
                return Err(format!("path starts at {} instead of the source {s}", p[0]));
            }
            if *p.last().unwrap() != t {
                return Err(format!("path ends at {} instead of the target {t}", p.last().unwrap()));
            }
            check_path_edges(g, p)
        }
        (TaskKind::Connected, Solution::NodeSet(v)) => {
            check_in_range(g, v)?;
            check_distinct(v)?;
            let comp = component_ids(g);
            let total = comp.iter().copied().max().map_or(0, |m| m + 1);
            let mut covered = vec![false; total as usize];
            for &u in v {
                let c = comp[u as usize] as usize;
                if covered[c] {
                    return Err(format!("two representatives in the component of node {u}"));
                }
                covered[c] = true;
            }
            if let Some(missing) = covered.iter().position(|&c| !c) {
                let witness = comp.iter().position(|&c| c as usize == missing).unwrap();
                return Err(format!("no representative for the component of node {witness}"));
            }
            Ok(())
        }
        (TaskKind::Diameter, Solution::Path(p)) => {
            if p.is_empty() {
                return Err("empty path".into());
            }
            check_in_range(g, p)?;
            check_distinct(p)?;
            check_path_edges(g, p)
        }
        (TaskKind::Mis, Solution::NodeSet(v)) => {
            check_in_range(g, v)?;
            check_distinct(v)?;
            for (i, &a) in v.iter().enumerate() {
                for &b in &v[i + 1..] {
                    if g.has_edge(a, b) {
                        return Err(format!("nodes {a} and {b} are adjacent; edge ({}, {}) is inside the set", a.min(b), a.max(b)));
                    }
                }
            }
            Ok(())
        }
        (TaskKind::Mvc, Solution::NodeSet(v)) => {
            check_in_range(g, v)?;
            check_distinct(v)?;
            for (a, b) in g.edges() {
                if !v.contains(&a) && !v.contains(&b) {
                    return Err(format!("edge ({a}, {b}) is uncovered"));
                }
            }
            Ok(())
        }
        (TaskKind::Mcp, Solution::NodeSet(v)) => {
            check_in_range(g, v)?;
            check_distinct(v)?;
            if v.is_empty() {
                return Err("empty clique".into());
            }
            for (i, &a) in v.iter().enumerate() {
                for &b in &v[i + 1..] {
                    if !g.has_edge(a, b) {
                        return Err(format!("nodes {a} and {b} are not adjacent"));
                    }
                }
            }
            Ok(())
        }
        (TaskKind::Tsp, Solution::Tour(t)) => {
            let n = g.node_count();
            if t.len() != n as usize + 1 {
                return Err(format!("tour visits {} stops, expected {}", t.len(), n + 1));
            }
            if t.first() != t.last() {
                return Err("tour does not return to its start".into());
            }
            let interior = &t[..t.len() - 1];
            check_in_range(g, interior)?;
            check_distinct(interior)?;
            Ok(())
        }
        (TaskKind::Mcs, Solution::PairedNodeLists(a, b)) => {
            let h = inst.second_graph();
            if a.len() != b.len() {
                return Err(format!("lists have different lengths ({} vs {})", a.len(), b.len()));
            }
            check_in_range(g, a)?;
            check_in_range(h, b)?;
            check_distinct(a)?;
            check_distinct(b)?;
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if g.has_edge(a[i], a[j]) != h.has_edge(b[i], b[j]) {
                        return Err(format!(
                            "pairs ({}, {}) and ({}, {}) break the induced-subgraph condition",
                            a[i], b[i], a[j], b[j]
                        ));
                    }
                }
            }
            Ok(())
        }
        (TaskKind::Ged, Solution::Mapping(l)) => {
            let n = g.node_count();
            if l.len() != n as usize {
                return Err(format!("mapping has {} entries, expected {n}", l.len()));
            }
            check_in_range(inst.second_graph(), l)?;
            check_distinct(l)?;
            Ok(())
        }
        (kind, other) => Err(format!("wrong solution shape for {kind}: {other:?}")),
    }
}

fn check_path_edges(g: &Graph, p: &[u32]) -> Result<(), String> {
    for hop in p.windows(2) {
        if !g.has_edge(hop[0], hop[1]) {
            return Err(format!("({}, {}) is not an edge", hop[0], hop[1]));
        }
    }
    Ok(())
}

/// Structural validity plus a reason when invalid.
pub fn validate_solution(inst: &TaskInstance, sol: &Solution) -> (bool, String) {
    match validate(inst, sol) {
        Ok(()) => (true, String::new()),
        Err(reason) => (false, reason),
    }
}

/// Objective of a valid solution; errors on invalid ones.
pub fn objective_value(inst: &TaskInstance, sol: &Solution) -> Result<i64, EvalError> {
    validate(inst, sol).map_err(EvalError::InvalidSolution)?;
    Ok(raw_objective(inst, sol))
}

fn raw_objective(inst: &TaskInstance, sol: &Solution) -> i64 {
    match sol {
        Solution::NodeSet(v) => v.len() as i64,
        Solution::Path(p) => p.len().saturating_sub(1) as i64,
        Solution::Tour(t) => tour_weight(&inst.g, t).unwrap_or(i64::MAX),
        Solution::Mapping(l) => mapping_cost(&inst.g, inst.second_graph(), l),
        Solution::PairedNodeLists(a, _) => a.len() as i64,
    }
}

/// `min(opt/x, x/opt)` with the zero conventions: 0/0 is 1, x/0 and 0/x are 0.
fn ratio_of(candidate: Option<i64>, optimum: i64) -> f64 {
    let Some(c) = candidate else { return 0.0 };
    if c == 0 && optimum == 0 {
        return 1.0;
    }
    if c == 0 || optimum == 0 {
        return 0.0;
    }
    let (c, o) = (c as f64, optimum as f64);
    (c / o).min(o / c)
}

/// The symmetric optimality ratio for an NP-hard task. Invalid solutions
/// score 0; errors when called on a polynomial task.
pub fn optimality_ratio(inst: &TaskInstance, sol: &Solution, optimum: i64) -> Result<f64, EvalError> {
    if !inst.kind.is_np_hard() {
        return Err(EvalError::PolynomialRatio(inst.kind));
    }
    let objective = validate(inst, sol).ok().map(|()| raw_objective(inst, sol));
    Ok(ratio_of(objective, optimum))
}

/// A diameter answer must also be a shortest path between its endpoints;
/// otherwise its hop count overstates the distance it claims to witness.
fn diameter_witness_ok(inst: &TaskInstance, sol: &Solution) -> bool {
    let Solution::Path(p) = sol else { return false };
    if p.is_empty() {
        return false;
    }
    let (s, t) = (p[0], *p.last().unwrap());
    bfs_distance(&inst.g, s, t) == Some(p.len() as u32 - 1)
}

/// Grades one free-text candidate against the known optimum objective.
pub fn score_candidate(inst: &TaskInstance, optimum: i64, text: &str) -> EvalOutcome {
    let Some(sol) = parse_answer(inst.kind, text) else {
        return EvalOutcome::unparsed();
    };
    let (valid, reason) = validate_solution(inst, &sol);
    let objective = valid.then(|| raw_objective(inst, &sol));
    let mut optimal = valid && objective == Some(optimum);
    if optimal && inst.kind == TaskKind::Diameter {
        optimal = diameter_witness_ok(inst, &sol);
    }
    let ratio = if inst.kind.is_np_hard() {
        ratio_of(objective, optimum)
    } else if optimal {
        1.0
    } else {
        0.0
    };
    EvalOutcome { parsed: Some(sol), valid, reason, objective, optimal, ratio }
}

/// Fraction of optimal outcomes; an empty slice yields 0 with a warning flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSummary {
    pub rate: f64,
    pub empty: bool,
}

pub fn optimality_rate(outcomes: &[EvalOutcome]) -> RateSummary {
    if outcomes.is_empty() {
        return RateSummary { rate: 0.0, empty: true };
    }
    let hits = outcomes.iter().filter(|o| o.optimal).count();
    RateSummary {
        rate: hits as f64 / outcomes.len() as f64,
        empty: false,
    }
}

/// Scores every candidate and keeps the best one: highest ratio, earliest on
/// ties. When everything is invalid the first candidate's outcome (ratio 0)
/// is returned.
pub fn best_of_n(inst: &TaskInstance, optimum: i64, candidates: &[String]) -> Result<EvalOutcome, EvalError> {
    if candidates.is_empty() {
        return Err(EvalError::EmptyCandidates);
    }
    let mut best: Option<EvalOutcome> = None;
    for text in candidates {
        let outcome = score_candidate(inst, optimum, text);
        let better = best.as_ref().is_none_or(|b| outcome.ratio > b.ratio);
        if better {
            best = Some(outcome);
        }
    }
    Ok(best.unwrap())
}

/// One graded instance, tagged for aggregation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredRow {
    pub instance_id: String,
    pub kind: TaskKind,
    pub size_class: SizeClass,
    pub outcome: EvalOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportCell {
    pub count: usize,
    pub optimality_rate: f64,
    pub validity_rate: f64,
    /// Mean symmetric ratio; absent for the four polynomial tasks.
    pub mean_ratio: Option<f64>,
    /// No outcomes landed in this cell.
    pub empty: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub kind: TaskKind,
    pub size_class: SizeClass,
    pub cell: ReportCell,
}

/// Per-(task, size) optimality rates, validity rates, and mean ratios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub total_count: usize,
    pub overall_optimality_rate: f64,
    /// Provenance pointer (manifest path or digest), when known.
    pub manifest: Option<String>,
}

impl Report {
    pub fn cell(&self, kind: TaskKind, size: SizeClass) -> Option<&ReportCell> {
        self.rows
            .iter()
            .find(|r| r.kind == kind && r.size_class == size)
            .map(|r| &r.cell)
    }

    /// Aligned text rendering: an optimality-rate matrix (tasks as columns,
    /// one row per size class), then per-cell details.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let sizes: Vec<SizeClass> = {
            let mut s: Vec<SizeClass> = self.rows.iter().map(|r| r.size_class).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        if !sizes.is_empty() {
            out.push_str("optimality rate\n");
            out.push_str(&format!("{:<7}", "size"));
            for kind in crate::graph::ALL_TASKS {
                out.push_str(&format!(" {:>9}", kind.slug()));
            }
            out.push('\n');
            for size in sizes {
                out.push_str(&format!("{:<7}", size.slug()));
                for kind in crate::graph::ALL_TASKS {
                    match self.cell(kind, size) {
                        Some(cell) => out.push_str(&format!(" {:>9.4}", cell.optimality_rate)),
                        None => out.push_str(&format!(" {:>9}", "-")),
                    }
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{:<10} {:<6} {:>7} {:>9} {:>9} {:>11}\n",
            "task", "size", "count", "opt-rate", "validity", "mean-ratio"
        ));
        for row in &self.rows {
            let ratio = row
                .cell
                .mean_ratio
                .map_or_else(|| "-".to_string(), |r| format!("{r:.4}"));
            out.push_str(&format!(
                "{:<10} {:<6} {:>7} {:>9.4} {:>9.4} {:>11}\n",
                row.kind.slug(),
                row.size_class.slug(),
                row.cell.count,
                row.cell.optimality_rate,
                row.cell.validity_rate,
                ratio
            ));
        }
        out.push_str(&format!(
            "total      {:<6} {:>7} {:>9.4}\n",
            "", self.total_count, self.overall_optimality_rate
        ));
        out
    }
}

/// Folds scored rows into a per-(task, size) report. Order-insensitive.
pub fn aggregate_report(rows: &[ScoredRow]) -> Report {
    let mut groups: BTreeMap<(TaskKind, SizeClass), Vec<&EvalOutcome>> = BTreeMap::new();
    for row in rows {
        groups.entry((row.kind, row.size_class)).or_default().push(&row.outcome);
    }
    let mut report_rows = Vec::new();
    let mut total_optimal = 0usize;
    for ((kind, size_class), outcomes) in groups {
        let count = outcomes.len();
        let optimal = outcomes.iter().filter(|o| o.optimal).count();
        total_optimal += optimal;
        let valid = outcomes.iter().filter(|o| o.valid).count();
        let mean_ratio = kind.is_np_hard().then(|| {
            outcomes.iter().map(|o| o.ratio).sum::<f64>() / count.max(1) as f64
        });
        report_rows.push(ReportRow {
            kind,
            size_class,
            cell: ReportCell {
                count,
                optimality_rate: optimal as f64 / count.max(1) as f64,
                validity_rate: valid as f64 / count.max(1) as f64,
                mean_ratio,
                empty: count == 0,
            },
        });
    }
    Report {
        rows: report_rows,
        total_count: rows.len(),
        overall_optimality_rate: if rows.is_empty() {
            0.0
        } else {
            total_optimal as f64 / rows.len() as f64
        },
        manifest: None,
    }
}

/// Sense of the objective, re-exported for graders.
pub fn objective_sense(kind: TaskKind) -> ObjectiveSense {
    ObjectiveSense::of(kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{Graph, TaskInstance};
    use crate::solve::{oracle_solve, solve, Solution};

    #[test]
    fn parses_final_line_from_trace_block() {
        let text = "Add isolated nodes: [0, 1, 2, 7].\nAdd the most appropriate node: 3.\nThe maximum independent set is [0, 1, 2, 7, 3, 5].";
        let sol = parse_answer(TaskKind::Mis, text).unwrap();
        assert_eq!(sol, Solution::NodeSet(vec![0, 1, 2, 7, 3, 5]));
    }

    #[test]
    fn no_bracketed_list_parses_to_none() {
        assert!(parse_answer(TaskKind::Mis, "I do not know.").is_none());
    }

    #[test]
    fn fallback_takes_last_list() {
        let sol = parse_answer(TaskKind::Mvc, "maybe [1, 2, 3] or rather [4, 5]").unwrap();
        assert_eq!(sol, Solution::NodeSet(vec![4, 5]));
    }

    #[test]
    fn mcs_answers_need_two_lists() {
        let text = "The optimal solution of MCS is: [0, 1], [3, 2].";
        let sol = parse_answer(TaskKind::Mcs, text).unwrap();
        assert_eq!(sol, Solution::PairedNodeLists(vec![0, 1], vec![3, 2]));
        assert!(parse_answer(TaskKind::Mcs, "only [0, 1] here").is_none());
    }

    #[test]
    fn edge_tuples_do_not_match_the_list_fallback() {
        let sol = parse_answer(TaskKind::Mvc, "Remove the edges of node 1: [(1, 5), (1, 6)]. Cover [1, 2]");
        assert_eq!(sol.unwrap(), Solution::NodeSet(vec![1, 2]));
    }

    #[test]
    fn validate_worked_mvc() {
        let inst = fixtures::example_instance(TaskKind::Mvc);
        let (ok, _) = validate_solution(&inst, &Solution::NodeSet(vec![1, 2]));
        assert!(ok);
        let (ok, reason) = validate_solution(&inst, &Solution::NodeSet(vec![1]));
        assert!(!ok);
        assert!(reason.contains("(2, 7)"), "{reason}");
    }

    #[test]
    fn invalid_mis_reason_names_the_edge() {
        let inst = fixtures::example_instance(TaskKind::Mis);
        let (ok, reason) = validate_solution(&inst, &Solution::NodeSet(vec![3, 4]));
        assert!(!ok);
        assert!(reason.contains("(3, 4)"), "{reason}");
    }

    #[test]
    fn objective_of_reference_tour() {
        let inst = fixtures::example_instance(TaskKind::Tsp);
        let tour = Solution::Tour(vec![0, 4, 1, 2, 6, 3, 5, 0]);
        assert_eq!(objective_value(&inst, &tour).unwrap(), 15301);
    }

    #[test]
    fn empty_cover_on_edgeless_graph_scores_zero() {
        let g = Graph::new(4, &[]).unwrap();
        let inst = TaskInstance::new(TaskKind::Mvc, g, None, None, "t").unwrap();
        let sol = Solution::NodeSet(vec![]);
        assert_eq!(objective_value(&inst, &sol).unwrap(), 0);
        // 0/0 convention.
        assert_eq!(optimality_ratio(&inst, &sol, 0).unwrap(), 1.0);
        // x/0 convention.
        let sol1 = Solution::NodeSet(vec![1]);
        assert_eq!(optimality_ratio(&inst, &sol1, 0).unwrap(), 0.0);
    }

    #[test]
    fn eleven_out_of_twelve_scenario() {
        // Twelve disjoint edges: the optimum takes one endpoint of each.
        let edges: Vec<(u32, u32)> = (0..12).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::new(24, &edges).unwrap();
        let inst = TaskInstance::new(TaskKind::Mis, g, None, None, "t").unwrap();
        let eleven: Vec<u32> = (0..11).map(|i| 2 * i).collect();
        let ratio = optimality_ratio(&inst, &Solution::NodeSet(eleven), 12).unwrap();
        assert!((ratio - 11.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_errors_on_polynomial_tasks() {
        let inst = fixtures::example_instance(TaskKind::Connected);
        let err = optimality_ratio(&inst, &Solution::NodeSet(vec![0, 1, 5]), 3).unwrap_err();
        assert!(matches!(err, EvalError::PolynomialRatio(TaskKind::Connected)));
    }

    #[test]
    fn rate_counts_mixed_pool() {
        let optimal = EvalOutcome { optimal: true, ..EvalOutcome::unparsed() };
        let sub = EvalOutcome::unparsed();
        let pool = vec![optimal.clone(), optimal.clone(), optimal, sub];
        assert_eq!(optimality_rate(&pool).rate, 0.75);
        let empty = optimality_rate(&[]);
        assert_eq!(empty.rate, 0.0);
        assert!(empty.empty);
    }

    #[test]
    fn best_of_n_takes_the_argmax() {
        let inst = fixtures::example_instance(TaskKind::Mis);
        let optimum = solve(&inst).unwrap().objective;
        let candidates = vec![
            "gibberish".to_string(),
            "The maximum independent set is [0, 1, 2, 7].".to_string(),
            "The maximum independent set is [0, 1, 2, 7, 3, 5].".to_string(),
        ];
        let best = best_of_n(&inst, optimum, &candidates).unwrap();
        assert!(best.optimal);
        assert_eq!(best.ratio, 1.0);
        assert!(best_of_n(&inst, optimum, &[]).is_err());
    }

    #[test]
    fn oracle_solutions_validate_and_score_one() {
        use crate::graph::{sample_instance, SizeClass, ALL_TASKS};
        use crate::solve::oracle::within_oracle_limits;
        for kind in ALL_TASKS {
            let mut done = 0;
            let mut seed = 0;
            while done < 20 && seed < 2000 {
                let inst = sample_instance(kind, SizeClass::Small, seed);
                seed += 1;
                if !within_oracle_limits(&inst) {
                    continue;
                }
                let sol = oracle_solve(&inst).unwrap();
                let (ok, reason) = validate_solution(&inst, &sol);
                assert!(ok, "{kind} seed {}: {reason}", seed - 1);
                done += 1;
            }
            assert!(done > 0, "no in-range samples for {kind}");
        }
    }

    #[test]
    fn report_totals_add_up() {
        let inst = fixtures::example_instance(TaskKind::Mis);
        let optimum = solve(&inst).unwrap().objective;
        let mk = |text: &str| ScoredRow {
            instance_id: "x".into(),
            kind: inst.kind,
            size_class: inst.size_class,
            outcome: score_candidate(&inst, optimum, text),
        };
        let rows = vec![
            mk("The maximum independent set is [0, 1, 2, 7, 3, 5]."),
            mk("The maximum independent set is [0, 1, 2, 7]."),
        ];
        let report = aggregate_report(&rows);
        assert_eq!(report.total_count, 2);
        let cell = report.cell(TaskKind::Mis, inst.size_class).unwrap();
        assert_eq!(cell.count, 2);
        assert_eq!(cell.optimality_rate, 0.5);
        assert_eq!(cell.validity_rate, 1.0);
        assert!(report.render_text().contains("mis"));
    }
}
