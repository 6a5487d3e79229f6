//! The four polynomial tasks: common neighbors, shortest distance, connected
//! components, diameter.

use crate::graph::{Graph, TaskInstance};

use super::{Solution, SolveError};

pub(super) fn solve_neighbor(inst: &TaskInstance) -> Solution {
    let (a, b) = inst.query_pair();
    let na = inst.g.neighbors(a).unwrap();
    let nb = inst.g.neighbors(b).unwrap();
    let mut common = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < na.len() && j < nb.len() {
        match na[i].cmp(&nb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common.push(na[i]);
                i += 1;
                j += 1;
            }
        }
    }
    Solution::NodeSet(common)
}

/// BFS distances from `src`; `u32::MAX` marks unreachable nodes.
pub(crate) fn bfs_distances(g: &Graph, src: u32) -> Vec<u32> {
    let n = g.node_count() as usize;
    let mut dist = vec![u32::MAX; n];
    dist[src as usize] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u).unwrap() {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Lexicographically smallest shortest path from `s` to `t`: walk from `s`
/// always taking the smallest neighbor that still decreases the distance
/// to `t`.
fn lex_shortest_path(g: &Graph, s: u32, t: u32, dist_to_t: &[u32]) -> Vec<u32> {
    let mut path = vec![s];
    let mut cur = s;
    while cur != t {
        let need = dist_to_t[cur as usize] - 1;
        let next = g
            .neighbors(cur)
            .unwrap()
            .iter()
            .copied()
            .find(|&v| dist_to_t[v as usize] == need)
            .expect("distance-decreasing neighbor exists on a shortest path");
        path.push(next);
        cur = next;
    }
    path
}

pub(super) fn solve_distance(inst: &TaskInstance) -> Option<Solution> {
    let (s, t) = inst.query_pair();
    let dist_to_t = bfs_distances(&inst.g, t);
    if dist_to_t[s as usize] == u32::MAX {
        return None;
    }
    Some(Solution::Path(lex_shortest_path(&inst.g, s, t, &dist_to_t)))
}

pub(super) fn solve_components(inst: &TaskInstance) -> Solution {
    let g = &inst.g;
    let n = g.node_count();
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    for u in 0..n {
        if seen[u as usize] {
            continue;
        }
        // Ascending scan makes u the minimum identifier of its component.
        reps.push(u);
        let mut queue = std::collections::VecDeque::from([u]);
        seen[u as usize] = true;
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x).unwrap() {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    Solution::NodeSet(reps)
}

/// Longest shortest path. The endpoint pair is the lexicographically smallest
/// `(u, v)` with `u < v` among maximizers; the returned path is the
/// lexicographically smallest shortest path from `u` to `v`.
pub(super) fn solve_diameter(inst: &TaskInstance) -> Result<Solution, SolveError> {
    let g = &inst.g;
    let n = g.node_count();
    let mut best: Option<(u32, u32, u32)> = None; // (dist, u, v)
    let mut dist_rows: Vec<Vec<u32>> = Vec::with_capacity(n as usize);
    for u in 0..n {
        let dist = bfs_distances(g, u);
        if dist.contains(&u32::MAX) {
            return Err(SolveError::Disconnected);
        }
        dist_rows.push(dist);
    }
    for u in 0..n {
        for v in u + 1..n {
            let d = dist_rows[u as usize][v as usize];
            if best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, u, v));
            }
        }
    }
    let (_, u, v) = best.unwrap_or((0, 0, 0));
    if n == 1 {
        return Ok(Solution::Path(vec![0]));
    }
    let dist_to_v = &dist_rows[v as usize];
    Ok(Solution::Path(lex_shortest_path(g, u, v, dist_to_v)))
}
