//! Exact TSP via Held–Karp dynamic programming, n ≤ 20.
//!
//! The DP table holds the cheapest completion cost `h[mask][j]`: starting at
//! node `j`, visit every node in `mask` exactly once, then return to node 0.
//! Completion costs make a forward lexicographic reconstruction possible, so
//! among all optimal tours the returned one is the lexicographically smallest
//! sequence starting at 0 — which also fixes the orientation to the lower-id
//! second node.

use crate::graph::{Graph, TaskKind};

use super::{Solution, SolveError, TimeBudget, TSP_LIMIT};

const INF: u32 = u32::MAX / 4;

pub(super) fn solve_tsp(g: &Graph, budget: &TimeBudget) -> Result<Solution, SolveError> {
    let n = g.node_count() as usize;
    if n as u32 > TSP_LIMIT {
        return Err(SolveError::TooLarge {
            kind: TaskKind::Tsp,
            n: n as u32,
            limit: TSP_LIMIT,
        });
    }
    if n == 1 {
        return Ok(Solution::Tour(vec![0, 0]));
    }
    let w = weight_matrix(g);

    // Bit i of a mask is node i+1; node 0 is the fixed start/end.
    let masks = 1usize << (n - 1);
    let mut h = vec![INF; masks * n];
    for j in 0..n {
        h[j] = w[j][0]; // h[mask=0][j]: straight home
    }
    for mask in 1..masks {
        if mask & 0xFF == 0 {
            budget.check()?;
        }
        for j in 0..n {
            if j > 0 && mask & (1 << (j - 1)) != 0 {
                continue; // j still unvisited by definition of h
            }
            let mut bestc = INF;
            let mut rest = mask;
            while rest != 0 {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let k = bit + 1;
                let c = w[j][k].saturating_add(h[(mask & !(1 << bit)) * n + k]);
                if c < bestc {
                    bestc = c;
                }
            }
            h[mask * n + j] = bestc;
        }
    }

    let full = masks - 1;
    let mut tour = vec![0u32];
    let mut cur = 0usize;
    let mut mask = full;
    while mask != 0 {
        let want = h[mask * n + cur];
        let mut rest = mask;
        let mut next = None;
        while rest != 0 {
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let k = bit + 1;
            if w[cur][k].saturating_add(h[(mask & !(1 << bit)) * n + k]) == want {
                next = Some((bit, k));
                break; // ascending bit scan -> lexicographically smallest tour
            }
        }
        let (bit, k) = next.expect("optimal tour reconstruction");
        tour.push(k as u32);
        cur = k;
        mask &= !(1 << bit);
    }
    tour.push(0);
    Ok(Solution::Tour(tour))
}

fn weight_matrix(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.node_count() as usize;
    let mut w = vec![vec![0u32; n]; n];
    for (u, row) in w.iter_mut().enumerate() {
        for (v, cell) in row.iter_mut().enumerate() {
            if u != v {
                *cell = g.weight(u as u32, v as u32).expect("complete weighted graph");
            }
        }
    }
    w
}

/// Total weight of a closed tour; `None` if some hop has no edge.
pub fn tour_weight(g: &Graph, tour: &[u32]) -> Option<i64> {
    if tour.len() < 2 {
        return Some(0);
    }
    let mut total = 0i64;
    for hop in tour.windows(2) {
        if hop[0] == hop[1] && g.node_count() == 1 {
            continue; // single-node tour [0, 0]
        }
        total += g.weight(hop[0], hop[1])? as i64;
    }
    Some(total)
}
