//! Maximum common induced subgraph by backtracking with pairwise
//! compatibility pruning.
//!
//! A pair `(u, v)` is compatible with the partial mapping when, for every
//! already-chosen pair `(u', v')`, the edge `(u, u')` exists in G exactly
//! when `(v, v')` exists in H. Exact when the smaller graph has at most
//! [`MCS_EXACT_LIMIT`](super::MCS_EXACT_LIMIT) nodes; beyond that a greedy
//! first-fit pairing is returned, flagged non-exact.

use crate::graph::Graph;

use super::{adjacency_masks, Solution, SolveError, TimeBudget, MCS_EXACT_LIMIT};

struct Search<'a> {
    g_adj: &'a [u64],
    h_adj: &'a [u64],
    n: u32,
    m: u32,
    budget: &'a TimeBudget,
    ticks: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), SolveError> {
        self.ticks += 1;
        if self.ticks & 0xFFF == 0 {
            self.budget.check()?;
        }
        Ok(())
    }

    fn compatible(&self, u: u32, v: u32, gsel: &[u32], hsel: &[u32]) -> bool {
        gsel.iter().zip(hsel).all(|(&gu, &hv)| {
            let in_g = self.g_adj[gu as usize] >> u & 1;
            let in_h = self.h_adj[hv as usize] >> v & 1;
            in_g == in_h
        })
    }

    fn best_size(
        &mut self,
        next_u: u32,
        h_used: u64,
        gsel: &mut Vec<u32>,
        hsel: &mut Vec<u32>,
        best: &mut u32,
    ) -> Result<(), SolveError> {
        self.tick()?;
        if gsel.len() as u32 > *best {
            *best = gsel.len() as u32;
        }
        for u in next_u..self.n {
            if gsel.len() as u32 + (self.n - u) <= *best {
                break;
            }
            for v in 0..self.m {
                if h_used >> v & 1 == 1 || !self.compatible(u, v, gsel, hsel) {
                    continue;
                }
                gsel.push(u);
                hsel.push(v);
                self.best_size(u + 1, h_used | 1 << v, gsel, hsel, best)?;
                gsel.pop();
                hsel.pop();
            }
        }
        Ok(())
    }

    /// First solution of exactly `target` pairs in lexicographic order
    /// (ascending G subset, then ascending H assignment).
    fn first_of_size(
        &mut self,
        target: u32,
        next_u: u32,
        h_used: u64,
        gsel: &mut Vec<u32>,
        hsel: &mut Vec<u32>,
        out: &mut Option<(Vec<u32>, Vec<u32>)>,
    ) -> Result<(), SolveError> {
        self.tick()?;
        if gsel.len() as u32 == target {
            *out = Some((gsel.clone(), hsel.clone()));
            return Ok(());
        }
        for u in next_u..self.n {
            if gsel.len() as u32 + (self.n - u) < target {
                break;
            }
            for v in 0..self.m {
                if h_used >> v & 1 == 1 || !self.compatible(u, v, gsel, hsel) {
                    continue;
                }
                gsel.push(u);
                hsel.push(v);
                self.first_of_size(target, u + 1, h_used | 1 << v, gsel, hsel, out)?;
                if out.is_some() {
                    return Ok(());
                }
                gsel.pop();
                hsel.pop();
            }
        }
        Ok(())
    }
}

pub(super) fn solve_mcs(
    g: &Graph,
    h: &Graph,
    budget: &TimeBudget,
) -> Result<(Solution, bool), SolveError> {
    let g_adj = adjacency_masks(g)?;
    let h_adj = adjacency_masks(h)?;
    let n = g.node_count();
    let m = h.node_count();
    if n.min(m) > MCS_EXACT_LIMIT {
        let (gsel, hsel) = greedy_pairing(&g_adj, &h_adj, n, m);
        return Ok((Solution::PairedNodeLists(gsel, hsel), false));
    }
    let mut search = Search { g_adj: &g_adj, h_adj: &h_adj, n, m, budget, ticks: 0 };
    let mut best = 0;
    search.best_size(0, 0, &mut Vec::new(), &mut Vec::new(), &mut best)?;
    let mut out = None;
    search.first_of_size(best, 0, 0, &mut Vec::new(), &mut Vec::new(), &mut out)?;
    let (gsel, hsel) = out.expect("a maximum common subgraph exists");
    Ok((Solution::PairedNodeLists(gsel, hsel), true))
}

/// First-fit pairing: each G node in ascending order takes the smallest
/// unused compatible H node, if any.
fn greedy_pairing(g_adj: &[u64], h_adj: &[u64], n: u32, m: u32) -> (Vec<u32>, Vec<u32>) {
    let mut gsel: Vec<u32> = Vec::new();
    let mut hsel: Vec<u32> = Vec::new();
    let mut used = 0u64;
    for u in 0..n {
        let pick = (0..m).find(|&v| {
            used >> v & 1 == 0
                && gsel.iter().zip(&hsel).all(|(&gu, &hv)| {
                    (g_adj[gu as usize] >> u & 1) == (h_adj[hv as usize] >> v & 1)
                })
        });
        if let Some(v) = pick {
            gsel.push(u);
            hsel.push(v);
            used |= 1 << v;
        }
    }
    (gsel, hsel)
}
