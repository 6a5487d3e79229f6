//! Graph edit distance over node bijections: 1 per label mismatch plus 1 per
//! edge present on exactly one side, minimized by branch-and-bound over
//! partial assignments with an admissible label-mismatch lower bound.
//!
//! Exact for n ≤ [`GED_EXACT_LIMIT`](super::GED_EXACT_LIMIT); larger
//! instances fall back to a greedy assignment, flagged non-exact.

use std::collections::BTreeMap;

use crate::graph::Graph;

use super::{Solution, SolveError, TimeBudget, GED_EXACT_LIMIT};

/// Total cost of a bijection `l` from G nodes to H nodes.
pub fn mapping_cost(g: &Graph, h: &Graph, l: &[u32]) -> i64 {
    let mut cost = 0i64;
    for (i, &j) in l.iter().enumerate() {
        if g.label(i as u32) != h.label(j) {
            cost += 1;
        }
        for (p, &q) in l.iter().enumerate().take(i) {
            let in_g = g.has_edge(p as u32, i as u32);
            let in_h = h.has_edge(q, j);
            if in_g != in_h {
                cost += 1;
            }
        }
    }
    cost
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    n: u32,
    /// Label counts of G nodes i..n, indexed by i.
    g_suffix: Vec<BTreeMap<&'a str, u32>>,
    budget: &'a TimeBudget,
    ticks: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, h: &'a Graph, budget: &'a TimeBudget) -> Self {
        let n = g.node_count();
        let mut g_suffix = vec![BTreeMap::new(); n as usize + 1];
        for i in (0..n).rev() {
            let mut counts = g_suffix[i as usize + 1].clone();
            *counts.entry(g.label(i).unwrap()).or_insert(0) += 1;
            g_suffix[i as usize] = counts;
        }
        Search { g, h, n, g_suffix, budget, ticks: 0 }
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.ticks += 1;
        if self.ticks & 0xFFF == 0 {
            self.budget.check()?;
        }
        Ok(())
    }

    /// Minimum label mismatches any completion must pay for nodes i..n.
    fn label_bound(&self, i: u32, used: u64) -> i64 {
        let remaining = (self.n - i) as i64;
        let mut h_counts: BTreeMap<&str, u32> = BTreeMap::new();
        for j in 0..self.n {
            if used >> j & 1 == 0 {
                *h_counts.entry(self.h.label(j).unwrap()).or_insert(0) += 1;
            }
        }
        let matches: i64 = self.g_suffix[i as usize]
            .iter()
            .map(|(label, &c)| c.min(h_counts.get(label).copied().unwrap_or(0)) as i64)
            .sum();
        remaining - matches
    }

    fn step_cost(&self, mapping: &[u32], i: u32, j: u32) -> i64 {
        let mut cost = i64::from(self.g.label(i) != self.h.label(j));
        for (p, &q) in mapping.iter().enumerate() {
            if self.g.has_edge(p as u32, i) != self.h.has_edge(q, j) {
                cost += 1;
            }
        }
        cost
    }

    fn min_cost(&mut self, mapping: &mut Vec<u32>, used: u64, cost: i64, best: &mut i64) -> Result<(), SolveError> {
        self.tick()?;
        let i = mapping.len() as u32;
        if i == self.n {
            if cost < *best {
                *best = cost;
            }
            return Ok(());
        }
        if cost + self.label_bound(i, used) >= *best {
            return Ok(());
        }
        for j in 0..self.n {
            if used >> j & 1 == 1 {
                continue;
            }
            let c = cost + self.step_cost(mapping, i, j);
            if c >= *best {
                continue;
            }
            mapping.push(j);
            self.min_cost(mapping, used | 1 << j, c, best)?;
            mapping.pop();
        }
        Ok(())
    }

    /// First mapping with cost exactly `target`, in lexicographic order.
    fn first_of_cost(
        &mut self,
        target: i64,
        mapping: &mut Vec<u32>,
        used: u64,
        cost: i64,
        out: &mut Option<Vec<u32>>,
    ) -> Result<(), SolveError> {
        self.tick()?;
        let i = mapping.len() as u32;
        if i == self.n {
            if cost == target {
                *out = Some(mapping.clone());
            }
            return Ok(());
        }
        if cost + self.label_bound(i, used) > target {
            return Ok(());
        }
        for j in 0..self.n {
            if used >> j & 1 == 1 {
                continue;
            }
            let c = cost + self.step_cost(mapping, i, j);
            if c > target {
                continue;
            }
            mapping.push(j);
            self.first_of_cost(target, mapping, used | 1 << j, c, out)?;
            if out.is_some() {
                return Ok(());
            }
            mapping.pop();
        }
        Ok(())
    }
}

pub(super) fn solve_ged(
    g: &Graph,
    h: &Graph,
    budget: &TimeBudget,
) -> Result<(Solution, bool), SolveError> {
    let n = g.node_count();
    if n > GED_EXACT_LIMIT {
        return Ok((Solution::Mapping(greedy_assignment(g, h)), false));
    }
    let mut search = Search::new(g, h, budget);
    let mut best = i64::MAX;
    search.min_cost(&mut Vec::new(), 0, 0, &mut best)?;
    let mut out = None;
    search.first_of_cost(best, &mut Vec::new(), 0, 0, &mut out)?;
    Ok((Solution::Mapping(out.expect("a bijection exists")), true))
}

/// Maps each G node in ascending order to the unused H node with the
/// cheapest incremental cost, smallest id on ties.
fn greedy_assignment(g: &Graph, h: &Graph) -> Vec<u32> {
    let n = g.node_count();
    let mut mapping: Vec<u32> = Vec::with_capacity(n as usize);
    let mut used = 0u64;
    for i in 0..n {
        let mut best_j = None;
        let mut best_c = i64::MAX;
        for j in 0..n {
            if used >> j & 1 == 1 {
                continue;
            }
            let mut c = i64::from(g.label(i) != h.label(j));
            for (p, &q) in mapping.iter().enumerate() {
                if g.has_edge(p as u32, i) != h.has_edge(q, j) {
                    c += 1;
                }
            }
            if c < best_c {
                best_c = c;
                best_j = Some(j);
            }
        }
        let j = best_j.expect("unused H node exists");
        mapping.push(j);
        used |= 1 << j;
    }
    mapping
}
