//! Seeded graph generators for tests, benchmarks and the `verify` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an edgeless graph")
}

/// Complete graph `K_n`, `n >= 2`.
pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, &edges)
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

/// Path `P_n` on `n >= 2` nodes, ids in path order.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    build(n, &edges)
}

/// Star `K_{1,leaves}` with the center as node 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &edges)
}

/// `G(n, p)`; isolated nodes are dropped by [`Graph`] construction, so the
/// result can have fewer than `n` nodes. Fails when no edge is drawn.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Connected random graph on exactly `n >= 2` nodes: a random spanning tree
/// plus independent extra edges with probability `p`.
pub fn connected_random(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

/// Barabási–Albert preferential attachment: start from a clique on
/// `attach + 1` nodes, then every new node links to `attach` distinct
/// existing nodes chosen proportionally to degree.
pub fn barabasi_albert(n: usize, attach: usize, seed: u64) -> Graph {
    assert!(attach >= 1 && n > attach, "need n > attach >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    // Each node appears once per incident edge endpoint.
    let mut targets: Vec<usize> = Vec::new();
    for u in 0..=attach {
        for v in u + 1..=attach {
            edges.push((u, v));
            targets.push(u);
            targets.push(v);
        }
    }
    let mut chosen = Vec::with_capacity(attach);
    for v in attach + 1..n {
        chosen.clear();
        while chosen.len() < attach {
            let u = targets[rng.gen_range(0..targets.len())];
            if !chosen.contains(&u) {
                chosen.push(u);
            }
        }
        for &u in &chosen {
            edges.push((u, v));
            targets.push(u);
            targets.push(v);
        }
    }
    build(n, &edges)
}

/// Sparse heavy-tailed graph: a preferential-attachment tree on `n` nodes
/// plus uniformly random extra edges until `edge_target` edges exist.
pub fn sparse_power_law(n: usize, edge_target: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1)];
    let mut targets = vec![0, 1];
    for v in 2..n {
        let u = targets[rng.gen_range(0..targets.len())];
        edges.push((u, v));
        targets.push(u);
        targets.push(v);
    }
    let mut present: std::collections::HashSet<(usize, usize)> = edges.iter().copied().collect();
    while edges.len() < edge_target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let key = (u.min(v), u.max(v));
        if u != v && present.insert(key) {
            edges.push(key);
        }
    }
    build(n, &edges)
}
