//! One branch-and-bound kernel for the three vertex-subset tasks.
//!
//! Maximum clique runs directly on the instance graph; maximum independent
//! set is a maximum clique of the complement; minimum vertex cover is built
//! from independent-set feasibility queries so its canonical (smallest-lex)
//! optimum comes out right. Duality `|MIS| + |MVC| = n` holds by
//! construction and is cross-checked in tests.

use crate::graph::Graph;

use super::{adjacency_masks, Solution, SolveError, TimeBudget};

struct CliqueSearch<'a> {
    adj: &'a [u64],
    budget: &'a TimeBudget,
    ticks: u64,
    best: u32,
}

impl<'a> CliqueSearch<'a> {
    fn new(adj: &'a [u64], budget: &'a TimeBudget) -> Self {
        CliqueSearch { adj, budget, ticks: 0, best: 0 }
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.ticks += 1;
        if self.ticks & 0xFFF == 0 {
            self.budget.check()?;
        }
        Ok(())
    }

    /// Greedy coloring of `cand`; returns `(node, color)` with colors
    /// ascending, so a reverse scan sees the loosest bound first.
    fn color_order(&self, cand: u64) -> Vec<(u32, u32)> {
        let mut order = Vec::with_capacity(cand.count_ones() as usize);
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut class = uncolored;
            while class != 0 {
                let v = class.trailing_zeros();
                let bit = 1u64 << v;
                class &= !bit & !self.adj[v as usize];
                uncolored &= !bit;
                order.push((v, color));
            }
        }
        order
    }

    fn expand(&mut self, size: u32, cand: u64) -> Result<(), SolveError> {
        self.tick()?;
        if cand == 0 {
            if size > self.best {
                self.best = size;
            }
            return Ok(());
        }
        let order = self.color_order(cand);
        let mut cand = cand;
        for &(v, color) in order.iter().rev() {
            if size + color <= self.best {
                return Ok(());
            }
            self.expand(size + 1, cand & self.adj[v as usize])?;
            cand &= !(1u64 << v);
        }
        Ok(())
    }
}

/// Size of the largest clique within the node subset `mask`.
fn max_clique_size_in(adj: &[u64], mask: u64, budget: &TimeBudget) -> Result<u32, SolveError> {
    // Restrict adjacency to the mask so every branch stays inside it.
    let restricted: Vec<u64> = adj.iter().map(|&a| a & mask).collect();
    let mut s = CliqueSearch::new(&restricted, budget);
    s.expand(0, mask)?;
    Ok(s.best)
}

/// Lexicographically smallest maximum clique: find the clique number first,
/// then take the first size-`target` clique of an include-smallest-first
/// DFS over ascending vertices, pruning with the coloring bound.
fn max_clique_lex(adj: &[u64], budget: &TimeBudget) -> Result<Vec<u32>, SolveError> {
    let full: u64 = if adj.is_empty() { 0 } else { (0..adj.len()).fold(0u64, |m, v| m | (1 << v)) };
    let target = max_clique_size_in(adj, full, budget)?;
    let mut search = CliqueSearch::new(adj, budget);
    let mut current = Vec::with_capacity(target as usize);
    let mut out = None;
    search.lex_dfs(full, target, &mut current, &mut out)?;
    Ok(out.unwrap_or_default())
}

impl CliqueSearch<'_> {
    /// Colors needed for `cand`: an upper bound on any clique inside it.
    fn color_bound(&self, cand: u64) -> u32 {
        let mut uncolored = cand;
        let mut colors = 0;
        while uncolored != 0 {
            colors += 1;
            let mut class = uncolored;
            while class != 0 {
                let v = class.trailing_zeros();
                let bit = 1u64 << v;
                class &= !bit & !self.adj[v as usize];
                uncolored &= !bit;
            }
        }
        colors
    }

    fn lex_dfs(
        &mut self,
        cand: u64,
        target: u32,
        current: &mut Vec<u32>,
        out: &mut Option<Vec<u32>>,
    ) -> Result<(), SolveError> {
        self.tick()?;
        if current.len() as u32 == target {
            *out = Some(current.clone());
            return Ok(());
        }
        if current.len() as u32 + self.color_bound(cand) < target {
            return Ok(());
        }
        let mut scan = cand;
        while scan != 0 {
            let v = scan.trailing_zeros();
            scan &= !(1u64 << v);
            // Ascending construction: later vertices only.
            let above = !((1u64 << v) | ((1u64 << v) - 1));
            current.push(v);
            self.lex_dfs(cand & self.adj[v as usize] & above, target, current, out)?;
            if out.is_some() {
                return Ok(());
            }
            current.pop();
        }
        Ok(())
    }
}

fn complement_masks(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let full: u64 = (0..n).fold(0u64, |m, v| m | (1 << v));
    adj.iter()
        .enumerate()
        .map(|(v, &a)| (full & !a) & !(1u64 << v))
        .collect()
}

pub(super) fn solve_mcp(g: &Graph, budget: &TimeBudget) -> Result<Solution, SolveError> {
    let adj = adjacency_masks(g)?;
    if adj.is_empty() {
        return Ok(Solution::NodeSet(Vec::new()));
    }
    Ok(Solution::NodeSet(max_clique_lex(&adj, budget)?))
}

pub(super) fn solve_mis(g: &Graph, budget: &TimeBudget) -> Result<Solution, SolveError> {
    let adj = adjacency_masks(g)?;
    if adj.is_empty() {
        return Ok(Solution::NodeSet(Vec::new()));
    }
    Ok(Solution::NodeSet(max_clique_lex(&complement_masks(&adj), budget)?))
}

pub(super) fn solve_mvc(g: &Graph, budget: &TimeBudget) -> Result<Solution, SolveError> {
    let adj = adjacency_masks(g)?;
    let n = adj.len();
    if n == 0 {
        return Ok(Solution::NodeSet(Vec::new()));
    }
    let comp = complement_masks(&adj);
    let full: u64 = (0..n).fold(0u64, |m, v| m | (1 << v));
    let mis_size = max_clique_size_in(&comp, full, budget)?;
    let cover_size = n as u32 - mis_size;

    // Greedy lexicographic construction: take v whenever a minimum cover can
    // still contain everything chosen so far plus v. Feasibility reduces to
    // an independent-set size query on the untouched remainder.
    let mut chosen: Vec<u32> = Vec::with_capacity(cover_size as usize);
    let mut removed = 0u64;
    for v in 0..n as u32 {
        if chosen.len() as u32 == cover_size {
            break;
        }
        let with_v = removed | (1 << v);
        let rest = full & !with_v;
        let rest_nodes = rest.count_ones();
        let rest_mis = max_clique_size_in(&comp, rest, budget)?;
        let rest_cover = rest_nodes - rest_mis;
        if chosen.len() as u32 + 1 + rest_cover <= cover_size {
            chosen.push(v);
            removed = with_v;
        }
    }
    debug_assert_eq!(chosen.len() as u32, cover_size);
    Ok(Solution::NodeSet(chosen))
}
