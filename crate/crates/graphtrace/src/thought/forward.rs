//! Forward-mode traces: deterministic heuristic unrolls for the four
//! polynomial tasks. Start nodes and queue insertions always go in
//! ascending node order, so each trace is a pure function of the instance.

use std::collections::VecDeque;

use crate::graph::TaskInstance;
use crate::solve::{self, Solution};

use super::templates::{self as t, TemplateId};
use super::{ThoughtError, ThoughtLine, ThoughtTrace};

/// A component snapshot line is emitted after every third visited node,
/// while the search queue is still non-empty.
pub(super) const COMPONENT_SNAPSHOT_EVERY: usize = 3;

pub fn trace_connected(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    let g = &inst.g;
    let n = g.node_count();
    let mut lines = Vec::new();
    let mut visited = vec![false; n as usize];
    let mut reps = Vec::new();
    let mut component_index = 0usize;

    for start in 0..n {
        if visited[start as usize] {
            continue;
        }
        component_index += 1;
        lines.push(ThoughtLine::new(TemplateId::ChooseStart, t::choose_start(start)));
        let mut component = Vec::new();
        let mut queue = VecDeque::from([start]);
        let mut enqueued = vec![false; n as usize];
        enqueued[start as usize] = true;
        while let Some(v) = queue.pop_front() {
            visited[v as usize] = true;
            component.push(v);
            lines.push(ThoughtLine::new(TemplateId::AddToComponent, t::add_to_component(v)));
            let fresh: Vec<u32> = g
                .neighbors(v)
                .unwrap()
                .iter()
                .copied()
                .filter(|&w| !enqueued[w as usize])
                .collect();
            lines.push(ThoughtLine::new(
                TemplateId::EnqueueUnvisited,
                t::enqueue_unvisited(v, &fresh),
            ));
            for &w in &fresh {
                enqueued[w as usize] = true;
                queue.push_back(w);
            }
            if component.len() % COMPONENT_SNAPSHOT_EVERY == 0 && !queue.is_empty() {
                lines.push(ThoughtLine::new(
                    TemplateId::CurrentComponent,
                    t::current_component(&component),
                ));
            }
        }
        lines.push(ThoughtLine::new(TemplateId::Finished, t::finished()));
        let rep = component[0]; // ascending start scan: the minimum identifier
        reps.push(rep);
        lines.push(ThoughtLine::new(
            TemplateId::ComponentSummary,
            t::component_summary(component_index, &component, rep),
        ));
    }
    lines.push(ThoughtLine::new(TemplateId::RepsFinal, t::reps_final(&reps)));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::NodeSet(reps),
    })
}

pub fn trace_distance(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    let g = &inst.g;
    let (source, target) = inst.query_pair();
    let mut lines = Vec::new();
    let mut expanded = vec![false; g.node_count() as usize];
    let mut queue: VecDeque<Vec<u32>> = VecDeque::from([vec![source]]);
    let mut found: Option<Vec<u32>> = None;

    while let Some(path) = queue.pop_front() {
        let v = *path.last().unwrap();
        if expanded[v as usize] {
            continue;
        }
        expanded[v as usize] = true;
        let adjacency = g.neighbors(v).unwrap();
        lines.push(ThoughtLine::new(
            TemplateId::CurrentPathAdjacency,
            t::current_path_adjacency(&path, v, adjacency),
        ));
        if adjacency.contains(&target) {
            lines.push(ThoughtLine::new(TemplateId::FoundTarget, t::found_target(target)));
            let mut full = path.clone();
            full.push(target);
            found = Some(full);
            break;
        }
        for &w in adjacency {
            if !expanded[w as usize] && !path.contains(&w) {
                let mut next = path.clone();
                next.push(w);
                queue.push_back(next);
            }
        }
    }

    let final_path = found.unwrap_or_default();
    lines.push(ThoughtLine::new(
        TemplateId::ShortestPathFinal,
        t::shortest_path_final(&final_path),
    ));
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::Path(final_path),
    })
}

pub fn trace_neighbor(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    let g = &inst.g;
    let (a, b) = inst.query_pair();
    let na = g.neighbors(a).unwrap().to_vec();
    let nb = g.neighbors(b).unwrap().to_vec();
    let common: Vec<u32> = na.iter().copied().filter(|u| nb.contains(u)).collect();
    let lines = vec![
        ThoughtLine::new(TemplateId::AdjacencyOf, t::adjacency_of(a, &na)),
        ThoughtLine::new(TemplateId::AdjacencyOf, t::adjacency_of(b, &nb)),
        ThoughtLine::new(TemplateId::CommonNeighborsFinal, t::common_neighbors_final(&common)),
    ];
    Ok(ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::NodeSet(common),
    })
}

pub fn trace_diameter(inst: &TaskInstance) -> Result<ThoughtTrace, ThoughtError> {
    // The source is the far endpoint of the solver's canonical diameter path.
    let canonical = solve::solve_diameter(inst)?;
    let Solution::Path(ref canonical_path) = canonical else { unreachable!() };
    let source = *canonical_path.last().unwrap();
    Ok(diameter_trace_from(inst, source))
}

/// Single-source sweep used both by the generator (solver-chosen source) and
/// the replay verifier (claimed source).
pub(super) fn diameter_trace_from(inst: &TaskInstance, source: u32) -> ThoughtTrace {
    let g = &inst.g;
    let n = g.node_count() as usize;
    let mut lines = vec![
        ThoughtLine::new(TemplateId::ChooseSource, t::choose_source(source)),
        ThoughtLine::new(TemplateId::AnnounceSweep, t::announce_sweep(source)),
    ];
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    dist[source as usize] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let adjacency = g.neighbors(v).unwrap();
        let fresh: Vec<u32> = adjacency
            .iter()
            .copied()
            .filter(|&w| dist[w as usize] == u32::MAX)
            .collect();
        if fresh.is_empty() {
            continue; // silent expansion
        }
        let d = dist[v as usize] + 1;
        lines.push(ThoughtLine::new(TemplateId::AdjacencyOf, t::adjacency_of(v, adjacency)));
        lines.push(ThoughtLine::new(TemplateId::UpdateDistance, t::update_distance(&fresh, d)));
        for &w in &fresh {
            dist[w as usize] = d;
            parent[w as usize] = v;
            queue.push_back(w);
        }
    }
    let (farthest, far_dist) = (0..n as u32)
        .filter(|&u| dist[u as usize] != u32::MAX)
        .map(|u| (u, dist[u as usize]))
        .max_by_key(|&(u, d)| (d, std::cmp::Reverse(u)))
        .unwrap();
    lines.push(ThoughtLine::new(
        TemplateId::FarthestTarget,
        t::farthest_target(source, farthest, far_dist),
    ));
    let mut path = vec![farthest];
    let mut cur = farthest;
    while cur != source {
        cur = parent[cur as usize];
        path.push(cur);
    }
    path.reverse();
    lines.push(ThoughtLine::new(TemplateId::DiameterFinal, t::diameter_final(&path)));
    ThoughtTrace {
        instance_id: inst.instance_id.clone(),
        lines,
        final_solution: Solution::Path(path),
    }
}
