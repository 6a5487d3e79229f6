//! Classical heuristic baselines for the six NP-hard tasks: greedy rules and
//! seeded uniform-random valid constructions. Always valid, not necessarily
//! optimal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{TaskInstance, TaskKind};

use super::{adjacency_masks, mapping_cost, Solution, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Greedy,
    Random(u64),
}

pub fn heuristic_solve(inst: &TaskInstance, strategy: Strategy) -> Result<Solution, SolveError> {
    if !inst.kind.is_np_hard() {
        return Err(SolveError::Unsupported(format!(
            "heuristics cover the NP-hard tasks only, not {}",
            inst.kind
        )));
    }
    let mut rng = match strategy {
        Strategy::Greedy => None,
        Strategy::Random(seed) => {
            let mut key = [0u8; 32];
            key[0] = 0x68;
            key[1] = inst.kind as u8;
            key[2..10].copy_from_slice(&seed.to_le_bytes());
            Some(ChaCha8Rng::from_seed(key))
        }
    };
    Ok(match inst.kind {
        TaskKind::Mis => mis(inst, rng.as_mut())?,
        TaskKind::Mvc => mvc(inst, rng.as_mut())?,
        TaskKind::Mcp => mcp(inst, rng.as_mut())?,
        TaskKind::Tsp => tsp(inst, rng.as_mut()),
        TaskKind::Mcs => mcs(inst, rng.as_mut())?,
        TaskKind::Ged => ged(inst, rng.as_mut()),
        _ => unreachable!("guarded above"),
    })
}

fn pick<R: Rng>(candidates: &[u32], rng: Option<&mut R>) -> u32 {
    match rng {
        // Greedy ties break to the lowest id; candidates arrive best-first.
        None => candidates[0],
        Some(rng) => candidates[rng.gen_range(0..candidates.len())],
    }
}

/// Repeated minimum-degree selection (isolated nodes first for free).
fn mis(inst: &TaskInstance, mut rng: Option<&mut ChaCha8Rng>) -> Result<Solution, SolveError> {
    let adj = adjacency_masks(&inst.g)?;
    let n = adj.len();
    let mut alive: u64 = (0..n).fold(0, |m, v| m | (1 << v));
    let mut out = Vec::new();
    while alive != 0 {
        let degree = |v: usize| (adj[v] & alive).count_ones();
        let candidates: Vec<u32> = match rng {
            None => {
                let best = bits(alive).map(|v| degree(v as usize)).min().unwrap();
                bits(alive).filter(|&v| degree(v as usize) == best).collect()
            }
            Some(_) => bits(alive).collect(),
        };
        let v = pick(&candidates, rng.as_deref_mut());
        out.push(v);
        alive &= !(1 << v);
        alive &= !adj[v as usize];
    }
    out.sort_unstable();
    Ok(Solution::NodeSet(out))
}

/// Repeated maximum-degree selection until every edge is covered.
fn mvc(inst: &TaskInstance, rng: Option<&mut ChaCha8Rng>) -> Result<Solution, SolveError> {
    let adj = adjacency_masks(&inst.g)?;
    let n = adj.len();
    let mut alive: u64 = (0..n).fold(0, |m, v| m | (1 << v));
    let mut out = Vec::new();
    if rng.is_some() {
        // Random valid cover: complement of a random maximal independent set.
        let mis = mis(inst, rng)?;
        let Solution::NodeSet(set) = mis else { unreachable!() };
        let cover: Vec<u32> = (0..n as u32).filter(|v| !set.contains(v)).collect();
        return Ok(Solution::NodeSet(cover));
    }
    loop {
        let degree = |v: usize| (adj[v] & alive).count_ones();
        let Some(best) = bits(alive).map(|v| degree(v as usize)).max() else { break };
        if best == 0 {
            break;
        }
        let candidates: Vec<u32> = bits(alive).filter(|&v| degree(v as usize) == best).collect();
        let v = pick::<ChaCha8Rng>(&candidates, None);
        out.push(v);
        alive &= !(1 << v);
    }
    out.sort_unstable();
    Ok(Solution::NodeSet(out))
}

/// Maximum-degree seed, then extend with compatible common neighbors.
fn mcp(inst: &TaskInstance, mut rng: Option<&mut ChaCha8Rng>) -> Result<Solution, SolveError> {
    let adj = adjacency_masks(&inst.g)?;
    let n = adj.len();
    if n == 0 {
        return Ok(Solution::NodeSet(Vec::new()));
    }
    let all: u64 = (0..n).fold(0, |m, v| m | (1 << v));
    let mut clique = Vec::new();
    let mut cand = all;
    loop {
        let candidates: Vec<u32> = match rng {
            None => {
                let best = bits(cand).map(|v| (adj[v as usize] & cand).count_ones()).max().unwrap();
                bits(cand)
                    .filter(|&v| (adj[v as usize] & cand).count_ones() == best)
                    .collect()
            }
            Some(_) => bits(cand).collect(),
        };
        let v = pick(&candidates, rng.as_deref_mut());
        clique.push(v);
        cand &= adj[v as usize];
        if cand == 0 {
            break;
        }
    }
    clique.sort_unstable();
    Ok(Solution::NodeSet(clique))
}

/// Nearest neighbor from node 0, smallest id on weight ties.
fn tsp(inst: &TaskInstance, rng: Option<&mut ChaCha8Rng>) -> Solution {
    let g = &inst.g;
    let n = g.node_count();
    if n == 1 {
        return Solution::Tour(vec![0, 0]);
    }
    if let Some(rng) = rng {
        // Random tour: shuffle 1..n.
        let mut rest: Vec<u32> = (1..n).collect();
        for i in (1..rest.len()).rev() {
            let j = rng.gen_range(0..=i);
            rest.swap(i, j);
        }
        let mut tour = vec![0];
        tour.extend(rest);
        tour.push(0);
        return Solution::Tour(tour);
    }
    let mut tour = vec![0u32];
    let mut visited = vec![false; n as usize];
    visited[0] = true;
    for _ in 1..n {
        let cur = *tour.last().unwrap();
        let next = (0..n)
            .filter(|&v| !visited[v as usize])
            .min_by_key(|&v| (g.weight(cur, v).unwrap(), v))
            .unwrap();
        visited[next as usize] = true;
        tour.push(next);
    }
    tour.push(0);
    Solution::Tour(tour)
}

/// First-fit compatible pairing, ascending (greedy) or shuffled (random).
fn mcs(inst: &TaskInstance, rng: Option<&mut ChaCha8Rng>) -> Result<Solution, SolveError> {
    let g_adj = adjacency_masks(&inst.g)?;
    let h_adj = adjacency_masks(inst.second_graph())?;
    let n = inst.g.node_count();
    let m = inst.second_graph().node_count();
    let mut g_order: Vec<u32> = (0..n).collect();
    let mut h_order: Vec<u32> = (0..m).collect();
    if let Some(rng) = rng {
        for i in (1..g_order.len()).rev() {
            let j = rng.gen_range(0..=i);
            g_order.swap(i, j);
        }
        for i in (1..h_order.len()).rev() {
            let j = rng.gen_range(0..=i);
            h_order.swap(i, j);
        }
    }
    let mut gsel: Vec<u32> = Vec::new();
    let mut hsel: Vec<u32> = Vec::new();
    let mut used = 0u64;
    for &u in &g_order {
        let pick = h_order.iter().copied().find(|&v| {
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
    // Canonical pair order: ascending G node.
    let mut pairs: Vec<(u32, u32)> = gsel.into_iter().zip(hsel).collect();
    pairs.sort_unstable();
    let (gsel, hsel) = pairs.into_iter().unzip();
    Ok(Solution::PairedNodeLists(gsel, hsel))
}

/// Cheapest-increment assignment (greedy) or a random bijection.
fn ged(inst: &TaskInstance, rng: Option<&mut ChaCha8Rng>) -> Solution {
    let g = &inst.g;
    let h = inst.second_graph();
    let n = g.node_count();
    if let Some(rng) = rng {
        let mut perm: Vec<u32> = (0..n).collect();
        for i in (1..perm.len()).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        return Solution::Mapping(perm);
    }
    let mut mapping: Vec<u32> = Vec::with_capacity(n as usize);
    let mut used = 0u64;
    for _ in 0..n {
        let j = (0..n)
            .filter(|&j| used >> j & 1 == 0)
            .min_by_key(|&j| {
                // mapping_cost works on prefixes: same accounting, fewer rows.
                let mut probe = mapping.clone();
                probe.push(j);
                (mapping_cost(g, h, &probe), j)
            })
            .expect("unused H node exists");
        mapping.push(j);
        used |= 1 << j;
    }
    Solution::Mapping(mapping)
}

fn bits(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |&b| mask >> b & 1 == 1)
}
