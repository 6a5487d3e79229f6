//! Brute-force ground truth, implemented independently of the main solvers:
//! no shared search or pruning code. Subset tasks enumerate all 2^n subsets
//! (n ≤ 8), TSP enumerates permutations (n ≤ 9), MCS/GED enumerate injective
//! mappings (n ≤ 6), and the polynomial tasks recompute via Floyd–Warshall
//! and union-find.

use itertools::Itertools;

use crate::graph::{TaskInstance, TaskKind};

use super::{Solution, SolveError};

pub const ORACLE_SUBSET_LIMIT: u32 = 8;
pub const ORACLE_TSP_LIMIT: u32 = 9;
pub const ORACLE_PAIR_LIMIT: u32 = 6;

/// True when the instance is small enough for [`oracle_solve`].
pub fn within_oracle_limits(inst: &TaskInstance) -> bool {
    let n = inst.g.node_count();
    match inst.kind {
        TaskKind::Mcp | TaskKind::Mis | TaskKind::Mvc => n <= ORACLE_SUBSET_LIMIT,
        TaskKind::Tsp => n <= ORACLE_TSP_LIMIT,
        TaskKind::Mcs => n.max(inst.second_graph().node_count()) <= ORACLE_PAIR_LIMIT,
        TaskKind::Ged => n <= ORACLE_PAIR_LIMIT,
        _ => n <= 64,
    }
}

pub fn oracle_solve(inst: &TaskInstance) -> Result<Solution, SolveError> {
    if !within_oracle_limits(inst) {
        return Err(SolveError::TooLarge {
            kind: inst.kind,
            n: inst.g.node_count(),
            limit: match inst.kind {
                TaskKind::Mcp | TaskKind::Mis | TaskKind::Mvc => ORACLE_SUBSET_LIMIT,
                TaskKind::Tsp => ORACLE_TSP_LIMIT,
                TaskKind::Mcs | TaskKind::Ged => ORACLE_PAIR_LIMIT,
                _ => 64,
            },
        });
    }
    Ok(match inst.kind {
        TaskKind::Neighbor => neighbor(inst),
        TaskKind::Distance => distance(inst),
        TaskKind::Connected => components(inst),
        TaskKind::Diameter => diameter(inst)?,
        TaskKind::Mcp => subset_best(inst, SubsetGoal::Clique),
        TaskKind::Mis => subset_best(inst, SubsetGoal::Independent),
        TaskKind::Mvc => subset_best(inst, SubsetGoal::Cover),
        TaskKind::Tsp => tsp(inst),
        TaskKind::Mcs => mcs(inst),
        TaskKind::Ged => ged(inst),
    })
}

/// Common neighbors by scanning the edge list twice, no adjacency reuse.
fn neighbor(inst: &TaskInstance) -> Solution {
    let (a, b) = inst.query_pair();
    let edges = inst.g.edges();
    let touches = |u: u32, x: u32| edges.iter().any(|&(p, q)| (p, q) == (u.min(x), u.max(x)));
    let common: Vec<u32> = (0..inst.g.node_count())
        .filter(|&u| u != a && u != b && touches(u, a) && touches(u, b))
        .collect();
    Solution::NodeSet(common)
}

/// All-pairs shortest hop counts with explicit next-hop reconstruction.
fn floyd_warshall(inst: &TaskInstance) -> (Vec<Vec<u32>>, Vec<Vec<Option<u32>>>) {
    let n = inst.g.node_count() as usize;
    const INF: u32 = u32::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    let mut next: Vec<Vec<Option<u32>>> = vec![vec![None; n]; n];
    for u in 0..n {
        dist[u][u] = 0;
        next[u][u] = Some(u as u32);
    }
    for (u, v) in inst.g.edges() {
        let (u, v) = (u as usize, v as usize);
        dist[u][v] = 1;
        dist[v][u] = 1;
        next[u][v] = Some(v as u32);
        next[v][u] = Some(u as u32);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = dist[i][k].saturating_add(dist[k][j]);
                if through < dist[i][j] {
                    dist[i][j] = through;
                    next[i][j] = next[i][k];
                }
            }
        }
    }
    (dist, next)
}

fn fw_path(next: &[Vec<Option<u32>>], s: u32, t: u32) -> Vec<u32> {
    let mut path = vec![s];
    let mut cur = s;
    while cur != t {
        cur = next[cur as usize][t as usize].expect("reachable");
        path.push(cur);
    }
    path
}

fn distance(inst: &TaskInstance) -> Solution {
    let (s, t) = inst.query_pair();
    let (dist, next) = floyd_warshall(inst);
    if dist[s as usize][t as usize] >= u32::MAX / 4 {
        return Solution::Path(Vec::new());
    }
    Solution::Path(fw_path(&next, s, t))
}

fn components(inst: &TaskInstance) -> Solution {
    let n = inst.g.node_count() as usize;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for (u, v) in inst.g.edges() {
        let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if ru != rv {
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let reps: Vec<u32> = (0..n).filter(|&u| find(&mut parent, u) == u).map(|u| u as u32).collect();
    Solution::NodeSet(reps)
}

fn diameter(inst: &TaskInstance) -> Result<Solution, SolveError> {
    let n = inst.g.node_count();
    let (dist, next) = floyd_warshall(inst);
    let mut best = (0u32, 0u32, 0u32);
    for u in 0..n {
        for v in u + 1..n {
            let d = dist[u as usize][v as usize];
            if d >= u32::MAX / 4 {
                return Err(SolveError::Disconnected);
            }
            if d > best.0 {
                best = (d, u, v);
            }
        }
    }
    if n == 1 {
        return Ok(Solution::Path(vec![0]));
    }
    Ok(Solution::Path(fw_path(&next, best.1, best.2)))
}

enum SubsetGoal {
    Clique,
    Independent,
    Cover,
}

fn subset_best(inst: &TaskInstance, goal: SubsetGoal) -> Solution {
    let n = inst.g.node_count();
    let edges = inst.g.edges();
    let mut best: Option<Vec<u32>> = None;
    for mask in 0u32..1 << n {
        let set: Vec<u32> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let ok = match goal {
            SubsetGoal::Clique => set
                .iter()
                .tuple_combinations()
                .all(|(&a, &b)| edges.contains(&(a.min(b), a.max(b)))),
            SubsetGoal::Independent => set
                .iter()
                .tuple_combinations()
                .all(|(&a, &b)| !edges.contains(&(a.min(b), a.max(b)))),
            SubsetGoal::Cover => edges
                .iter()
                .all(|&(a, b)| set.contains(&a) || set.contains(&b)),
        };
        if !ok {
            continue;
        }
        let better = match (&best, &goal) {
            (None, _) => true,
            (Some(b), SubsetGoal::Cover) => set.len() < b.len(),
            (Some(b), _) => set.len() > b.len(),
        };
        if better {
            best = Some(set);
        }
    }
    Solution::NodeSet(best.unwrap_or_default())
}

fn tsp(inst: &TaskInstance) -> Solution {
    let g = &inst.g;
    let n = g.node_count();
    if n == 1 {
        return Solution::Tour(vec![0, 0]);
    }
    let mut best: Option<(i64, Vec<u32>)> = None;
    for perm in (1..n).permutations(n as usize - 1) {
        let mut tour = vec![0u32];
        tour.extend(&perm);
        tour.push(0);
        let weight: i64 = tour
            .windows(2)
            .map(|h| g.weight(h[0], h[1]).unwrap() as i64)
            .sum();
        if best.as_ref().is_none_or(|(bw, _)| weight < *bw) {
            best = Some((weight, tour));
        }
    }
    Solution::Tour(best.unwrap().1)
}

fn mcs(inst: &TaskInstance) -> Solution {
    let g = &inst.g;
    let h = inst.second_graph();
    let n = g.node_count();
    let m = h.node_count();
    let k_max = n.min(m);
    for k in (1..=k_max).rev() {
        for g_nodes in (0..n).combinations(k as usize) {
            for h_nodes in (0..m).permutations(k as usize) {
                let iso = g_nodes.iter().enumerate().tuple_combinations().all(|((i, &gu), (j, &gv))| {
                    g.has_edge(gu, gv) == h.has_edge(h_nodes[i], h_nodes[j])
                });
                if iso {
                    return Solution::PairedNodeLists(g_nodes, h_nodes);
                }
            }
        }
    }
    Solution::PairedNodeLists(Vec::new(), Vec::new())
}

fn ged(inst: &TaskInstance) -> Solution {
    let g = &inst.g;
    let h = inst.second_graph();
    let n = g.node_count();
    let mut best: Option<(i64, Vec<u32>)> = None;
    for perm in (0..n).permutations(n as usize) {
        let mut cost = 0i64;
        for i in 0..n as usize {
            if g.label(i as u32) != h.label(perm[i]) {
                cost += 1;
            }
            for j in 0..i {
                if g.has_edge(j as u32, i as u32) != h.has_edge(perm[j], perm[i]) {
                    cost += 1;
                }
            }
        }
        if best.as_ref().is_none_or(|(bc, _)| cost < *bc) {
            best = Some((cost, perm));
        }
    }
    Solution::Mapping(best.map(|(_, p)| p).unwrap_or_default())
}
