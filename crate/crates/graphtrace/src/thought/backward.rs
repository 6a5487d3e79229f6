//! Backward-mode traces for the six NP-hard tasks: the exact solver supplies
//! the optimum first, then the trace narrates its construction one element
//! per iteration.
//!
//! The "most appropriate" element is always drawn from the remaining optimal
//! solution — highest residual degree first, lowest id on ties — so traces
//! are deterministic given the canonical solver output.

use crate::graph::{Graph, TaskInstance};
use crate::solve::{self, Solution, TimeBudget};

use super::templates::{self as t, McsSide, TemplateId};
use super::{ThoughtError, ThoughtLine, ThoughtTrace};

fn line(template: TemplateId, rendered: String) -> ThoughtLine {
    ThoughtLine::new(template, rendered)
}

/// Highest residual degree, lowest id on ties.
fn most_appropriate(residual: &Graph, pool: &[u32]) -> u32 {
    pool.iter()
        .copied()
        .filter(|&u| residual.contains_node(u))
        .max_by_key(|&u| (residual.degree(u), std::cmp::Reverse(u)))
        .expect("pool intersects the residual graph")
}

pub fn trace_mis(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    trace_mis_with(inst, &TimeBudget::default())
}

pub(super) fn trace_mis_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
    let Solution::NodeSet(optimal) = solve::solve_mis_with(inst, budget)? else { unreachable!() };
    let mut residual = inst.g.clone();
    let mut pool = optimal;
    let mut acc: Vec<u32> = Vec::new();
    let mut lines = Vec::new();

    loop {
        let isolated = residual.isolated_nodes();
        lines.push(line(TemplateId::AddIsolated, t::add_isolated(&isolated)));
        acc.extend(&isolated);
        pool.retain(|u| !isolated.contains(u));
        residual = residual.remove_nodes(&isolated).unwrap();
        if residual.node_count() == 0 {
            lines.push(line(TemplateId::RemainingNodes, t::remaining_nodes(&[])));
            break;
        }
        let u = most_appropriate(&residual, &pool);
        pool.retain(|&x| x != u);
        lines.push(line(TemplateId::AddBest, t::add_best(u)));
        acc.push(u);
        lines.push(line(TemplateId::CurrentIndependentSet, t::current_independent_set(&acc)));
        let neighbors = residual.neighbors(u).unwrap().to_vec();
        lines.push(line(TemplateId::RemoveNeighborsOf, t::remove_neighbors_of(u, &neighbors)));
        let mut gone = neighbors;
        gone.push(u);
        residual = residual.remove_nodes(&gone).unwrap();
        lines.push(line(TemplateId::RemainingNodes, t::remaining_nodes(residual.nodes())));
        if residual.node_count() == 0 {
            break;
        }
    }
    lines.push(line(TemplateId::Finished, t::finished()));
    lines.push(line(TemplateId::MisFinal, t::mis_final(&acc)));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::NodeSet(acc),
    })
}

pub fn trace_mvc(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    trace_mvc_with(inst, &TimeBudget::default())
}

pub(super) fn trace_mvc_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
    let Solution::NodeSet(cover) = solve::solve_mvc_with(inst, budget)? else { unreachable!() };
    let mut residual = inst.g.clone();
    let mut pool = cover;
    let mut acc: Vec<u32> = Vec::new();
    let mut lines = Vec::new();

    loop {
        let isolated = residual.isolated_nodes();
        lines.push(line(TemplateId::RemoveIsolated, t::remove_isolated(&isolated)));
        residual = residual.remove_nodes(&isolated).unwrap();
        if residual.edge_count() == 0 {
            lines.push(line(TemplateId::NoEdgeLeft, t::no_edge_left()));
            break;
        }
        let u = most_appropriate(&residual, &pool);
        pool.retain(|&x| x != u);
        lines.push(line(TemplateId::AddBest, t::add_best(u)));
        acc.push(u);
        lines.push(line(TemplateId::CurrentVertexCover, t::current_vertex_cover(&acc)));
        let incident: Vec<(u32, u32)> = residual
            .neighbors(u)
            .unwrap()
            .iter()
            .map(|&v| (u.min(v), u.max(v)))
            .collect();
        let mut incident = incident;
        incident.sort_unstable();
        lines.push(line(TemplateId::RemoveEdgesOf, t::remove_edges_of(u, &incident)));
        residual = residual.remove_edges(&incident);
    }
    lines.push(line(TemplateId::Finished, t::finished()));
    lines.push(line(TemplateId::MvcFinal, t::mvc_final(&acc)));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::NodeSet(acc),
    })
}

pub fn trace_mcp(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    trace_mcp_with(inst, &TimeBudget::default())
}

pub(super) fn trace_mcp_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
    let Solution::NodeSet(clique) = solve::solve_mcp_with(inst, budget)? else { unreachable!() };
    let g = &inst.g;
    let mut pool = clique;
    let mut acc: Vec<u32> = Vec::new();
    let mut candidates: Vec<u32> = g.nodes().to_vec();
    let mut lines = Vec::new();

    loop {
        // Degree within the candidate-induced subgraph, lowest id on ties.
        let u = pool
            .iter()
            .copied()
            .max_by_key(|&u| {
                let degree = g
                    .neighbors(u)
                    .unwrap()
                    .iter()
                    .filter(|v| candidates.contains(v))
                    .count();
                (degree, std::cmp::Reverse(u))
            })
            .expect("remaining clique nodes are candidates");
        pool.retain(|&x| x != u);
        lines.push(line(TemplateId::AddBest, t::add_best(u)));
        acc.push(u);
        lines.push(line(TemplateId::CurrentClique, t::current_clique(&acc)));
        candidates = g
            .nodes()
            .iter()
            .copied()
            .filter(|&w| acc.iter().all(|&c| g.has_edge(c, w)))
            .collect();
        if candidates.is_empty() {
            break;
        }
        lines.push(line(
            TemplateId::CliqueCommonNeighbors,
            t::clique_common_neighbors(&candidates),
        ));
    }
    lines.push(line(TemplateId::Finished, t::finished()));
    lines.push(line(TemplateId::McpFinal, t::mcp_final(&acc)));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::NodeSet(acc),
    })
}

pub fn trace_tsp(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    trace_tsp_with(inst, &TimeBudget::default())
}

pub(super) fn trace_tsp_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
    let Solution::Tour(tour) = solve::solve_tsp_with(inst, budget)? else { unreachable!() };
    let g = &inst.g;
    let mut lines = vec![line(TemplateId::ChooseStartingNode, t::choose_starting_node(tour[0]))];
    let mut subtour = vec![tour[0]];
    if g.node_count() > 1 {
        for hop in tour.windows(2) {
            let (prev, next) = (hop[0], hop[1]);
            let weight = g.weight(prev, next).expect("complete weighted graph");
            lines.push(line(TemplateId::ChooseHop, t::choose_hop(next, prev, weight)));
            subtour.push(next);
            lines.push(line(TemplateId::CurrentSubtour, t::current_subtour(&subtour)));
        }
    }
    lines.push(line(TemplateId::Finished, t::finished()));
    lines.push(line(TemplateId::TspFinal, t::tsp_final(&tour)));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::Tour(tour),
    })
}

pub fn trace_mcs(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    trace_mcs_with(inst, &TimeBudget::default())
}

pub(super) fn trace_mcs_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
    let Solution::PairedNodeLists(gsel, hsel) = solve::solve_mcs_with(inst, budget)? else {
        unreachable!()
    };
    let g = &inst.g;
    let h = inst.second_graph();
    let mut lines = Vec::new();
    for k in 0..gsel.len() {
        let (u, v) = (gsel[k], hsel[k]);
        if k == 0 {
            lines.push(line(TemplateId::ChooseFirstPair, t::choose_first_pair(u, v)));
        } else {
            let split = |graph: &Graph, node: u32, chosen: &[u32]| {
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
            };
            let (cg, rg) = split(g, u, &gsel[..k]);
            lines.push(line(TemplateId::JustifyG, t::justify(McsSide::G, u, &cg, &rg)));
            let (ch, rh) = split(h, v, &hsel[..k]);
            lines.push(line(TemplateId::JustifyH, t::justify(McsSide::H, v, &ch, &rh)));
            lines.push(line(TemplateId::ChoosePair, t::choose_pair(u, v)));
        }
        lines.push(line(
            TemplateId::CurrentSubgraphLists,
            t::current_subgraph_lists(&gsel[..=k], &hsel[..=k]),
        ));
    }
    lines.push(line(TemplateId::Finished, t::finished()));
    lines.push(line(TemplateId::McsFinal, t::mcs_final(&gsel, &hsel)));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::PairedNodeLists(gsel, hsel),
    })
}

pub fn trace_ged(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    trace_ged_with(inst, &TimeBudget::default())
}

pub(super) fn trace_ged_with(inst: &TaskInstance, budget: &TimeBudget) -> Result<ThoughtTrace, ThoughtError> {
    let Solution::Mapping(mapping) = solve::solve_ged_with(inst, budget)? else { unreachable!() };
    let g = &inst.g;
    let h = inst.second_graph();
    let mut lines = Vec::new();
    let mut cost = 0i64;
    for (i, &j) in mapping.iter().enumerate() {
        let i = i as u32;
        let g_label = g.label(i).unwrap();
        let h_label = h.label(j).unwrap();
        lines.push(line(TemplateId::MapNode, t::map_node(i, g_label, j, h_label)));
        let same = g_label == h_label;
        cost += i64::from(!same);
        lines.push(line(TemplateId::LabelCost, t::label_cost(i, j, same)));
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
        if !deletions.is_empty() {
            cost += deletions.len() as i64;
            lines.push(line(TemplateId::EdgeDeletionCost, t::edge_deletion_cost(&deletions, i, j)));
        }
        if !additions.is_empty() {
            cost += additions.len() as i64;
            lines.push(line(TemplateId::EdgeAdditionCost, t::edge_addition_cost(&additions, i, j)));
        }
        lines.push(line(
            TemplateId::CurrentMapping,
            t::current_mapping(&mapping[..=i as usize], cost),
        ));
    }
    lines.push(line(TemplateId::Finished, t::finished()));
    lines.push(line(TemplateId::GedFinal, t::ged_final(&mapping)));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::Mapping(mapping),
    })
}
