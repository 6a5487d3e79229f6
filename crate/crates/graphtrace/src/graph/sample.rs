//! Synthetic instance sampling.
//!
//! Deterministic in `(kind, size_class, seed)`: node counts uniform over the
//! size-class range, Erdős–Rényi edges with a per-graph edge probability
//! drawn uniformly from [0.15, 0.5], TSP weights uniform in [1, 9999], GED
//! labels uniform over a fixed 10-symbol alphabet. Diameter instances are
//! resampled until connected; Distance instances keep unreachable pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, SizeClass, TaskInstance, TaskKind};

pub const EDGE_PROB_RANGE: (f64, f64) = (0.15, 0.5);
pub const TSP_WEIGHT_RANGE: (u32, u32) = (1, 9999);
pub const LABEL_ALPHABET: [&str; 10] = ["C", "N", "O", "S", "Si", "Na", "Mg", "Cl", "P", "F"];

fn rng_for(kind: TaskKind, size: SizeClass, seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0] = kind as u8;
    key[1] = size as u8;
    key[2..10].copy_from_slice(&seed.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn sample_edges(rng: &mut ChaCha8Rng, n: u32) -> Vec<(u32, u32)> {
    let p = rng.gen_range(EDGE_PROB_RANGE.0..=EDGE_PROB_RANGE.1);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn sample_plain_graph(rng: &mut ChaCha8Rng, n: u32) -> Graph {
    Graph::new(n, &sample_edges(rng, n)).expect("sampled edges are valid")
}

fn sample_connected_graph(rng: &mut ChaCha8Rng, n: u32) -> Graph {
    for _ in 0..64 {
        let g = sample_plain_graph(rng, n);
        if g.is_connected() {
            return g;
        }
    }
    // Pathologically unlucky stream: chain the components together.
    let g = sample_plain_graph(rng, n);
    let mut edges = g.edges();
    let reps = component_reps(&g);
    for pair in reps.windows(2) {
        edges.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
    }
    Graph::new(n, &edges).expect("chained graph is valid")
}

fn component_reps(g: &Graph) -> Vec<u32> {
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for &u in g.nodes() {
        if seen.contains(&u) {
            continue;
        }
        reps.push(u);
        let mut stack = vec![u];
        seen.insert(u);
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x).unwrap() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    reps
}

fn sample_labels(rng: &mut ChaCha8Rng, n: u32) -> Vec<(u32, String)> {
    (0..n)
        .map(|u| {
            let idx = rng.gen_range(0..LABEL_ALPHABET.len());
            (u, LABEL_ALPHABET[idx].to_string())
        })
        .collect()
}

/// Samples one instance, deterministically in `(kind, size_class, seed)`.
pub fn sample_instance(kind: TaskKind, size: SizeClass, seed: u64) -> TaskInstance {
    let mut rng = rng_for(kind, size, seed);
    let (lo, hi) = kind.size_range(size);
    let n = rng.gen_range(lo..=hi);
    let id = format!("{}-{}-{seed:020}", kind.slug(), size.slug());

    let (g, h, query) = match kind {
        TaskKind::Neighbor | TaskKind::Distance => {
            let g = sample_plain_graph(&mut rng, n);
            let a = rng.gen_range(0..n);
            let b = loop {
                let b = rng.gen_range(0..n);
                if b != a {
                    break b;
                }
            };
            (g, None, Some((a, b)))
        }
        TaskKind::Connected | TaskKind::Mcp | TaskKind::Mis | TaskKind::Mvc => {
            (sample_plain_graph(&mut rng, n), None, None)
        }
        TaskKind::Diameter => (sample_connected_graph(&mut rng, n), None, None),
        TaskKind::Tsp => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let w = rng.gen_range(TSP_WEIGHT_RANGE.0..=TSP_WEIGHT_RANGE.1);
                    edges.push((u, v, w));
                }
            }
            let g = Graph::weighted(n, &edges).expect("complete weighted graph is valid");
            (g, None, None)
        }
        TaskKind::Mcs => {
            let g = sample_plain_graph(&mut rng, n);
            let m = rng.gen_range(lo..=hi);
            let h = sample_plain_graph(&mut rng, m);
            (g, Some(h), None)
        }
        TaskKind::Ged => {
            let g_labels = sample_labels(&mut rng, n);
            let g_edges = sample_edges(&mut rng, n);
            let g = Graph::labeled(n, &g_labels, &g_edges).expect("sampled labeled graph is valid");
            let h_labels = sample_labels(&mut rng, n);
            let h_edges = sample_edges(&mut rng, n);
            let h = Graph::labeled(n, &h_labels, &h_edges).expect("sampled labeled graph is valid");
            (g, Some(h), None)
        }
    };
    TaskInstance::new(kind, g, h, query, id).expect("sampled instance satisfies invariants")
}
