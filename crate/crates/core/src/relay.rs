//! Relaying a message along a simple path with local decisions only.
//!
//! The chain-rank relay keeps, at the current node `w` and step `i`, the set
//! `A_end(w, i - 1)` of `t` values maximizing the remaining extension
//! potential, picks one `t` from it and forwards to an unused neighbor with
//! the largest `C_t`. Every decision is made through a [`LocalView`], which
//! only answers questions about the current node and its neighbors.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::a_end_with;
use crate::chain::CoreSpectrum;
use crate::error::Error;
use crate::graph::Graph;

/// A simple path, in walk order from its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelayPath {
    pub nodes: Vec<usize>,
}

impl RelayPath {
    /// Number of hops.
    pub fn length(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    /// Nodes are distinct and consecutive nodes are adjacent.
    pub fn is_simple_path(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.node_count()];
        for &v in &self.nodes {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.nodes.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// Which member of `A_end` to use when several `t` tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TChoice {
    /// Closest to zero.
    Largest,
    Smallest,
    /// Uniformly at random from the policy seed.
    #[default]
    Uniform,
}

/// Tie-breaking for the chain-rank relay. Ties among score-maximal
/// neighbors are always broken uniformly at random from `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TiePolicy {
    pub t_choice: TChoice,
    pub seed: u64,
}

impl TiePolicy {
    pub fn seeded(seed: u64) -> Self {
        TiePolicy {
            t_choice: TChoice::default(),
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TMode {
    /// All `t` in `[-lambda, 0]`.
    Full,
    /// `t = 0` only (plain k-core ranks).
    ZeroOnly,
}

/// What the current node can see: its own spectrum column, its neighbors,
/// their ranks and whether they already carried the message.
pub struct LocalView<'a> {
    graph: &'a Graph,
    spectrum: &'a CoreSpectrum,
    visited: &'a [bool],
    current: usize,
}

impl<'a> LocalView<'a> {
    pub fn new(graph: &'a Graph, spectrum: &'a CoreSpectrum, visited: &'a [bool], current: usize) -> Self {
        LocalView {
            graph,
            spectrum,
            visited,
            current,
        }
    }

    pub fn neighbors(&self) -> &'a [usize] {
        self.graph.neighbors(self.current)
    }

    fn is_neighbor(&self, u: usize) -> bool {
        u < self.graph.node_count() && self.graph.has_edge(self.current, u)
    }

    /// `C_t(u)` for a neighbor `u`; `None` for any other node.
    pub fn rank(&self, t: i64, u: usize) -> Option<u32> {
        self.is_neighbor(u).then(|| self.spectrum.rank(t, u))
    }

    /// Whether neighbor `u` is already on the path; `None` for non-neighbors.
    pub fn is_used(&self, u: usize) -> Option<bool> {
        self.is_neighbor(u).then(|| self.visited[u])
    }

    pub fn own_rank(&self, t: i64) -> u32 {
        self.spectrum.rank(t, self.current)
    }

    pub fn lambda(&self) -> u32 {
        self.spectrum.lambda()
    }

    pub fn unused_neighbors(&self) -> Vec<usize> {
        self.neighbors()
            .iter()
            .copied()
            .filter(|&u| self.is_used(u) == Some(false))
            .collect()
    }
}

fn pick_uniform<R: Rng>(rng: &mut R, candidates: &[usize]) -> usize {
    *candidates.choose(rng).expect("candidates are nonempty")
}

/// One relay decision at step `step` (the current node is the `step`-th on
/// the path). Returns `None` when every neighbor is used.
fn decide(
    view: &LocalView,
    step: u64,
    girth: u32,
    mode: TMode,
    t_choice: TChoice,
    rng: &mut ChaCha8Rng,
) -> Option<usize> {
    let unused = view.unused_neighbors();
    if unused.is_empty() {
        return None;
    }
    let t = match mode {
        TMode::ZeroOnly => 0,
        TMode::Full => {
            let (_, ts) = a_end_with(view.lambda(), girth, step as i64 - 1, |t| view.own_rank(t));
            match t_choice {
                TChoice::Largest => *ts.last().unwrap(),
                TChoice::Smallest => ts[0],
                TChoice::Uniform => *ts.choose(rng).unwrap(),
            }
        }
    };
    let score = |u: usize| view.rank(t, u).expect("candidate is a neighbor");
    let best = unused.iter().map(|&u| score(u)).max().unwrap();
    let top: Vec<usize> = unused.into_iter().filter(|&u| score(u) == best).collect();
    Some(pick_uniform(rng, &top))
}

/// Runs the relay loop from `source` with `visited` as the initial used set.
/// Returns the nodes appended after `source`.
#[allow(clippy::too_many_arguments)]
fn run_arm(
    g: &Graph,
    spectrum: &CoreSpectrum,
    source: usize,
    girth: u32,
    mode: TMode,
    t_choice: TChoice,
    visited: &mut [bool],
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let mut arm = Vec::new();
    let mut step = 1u64;
    let mut w = source;
    loop {
        let next = {
            let view = LocalView::new(g, spectrum, visited, w);
            decide(&view, step, girth, mode, t_choice, rng)
        };
        let Some(x) = next else { break };
        visited[w] = true;
        step += 1;
        arm.push(x);
        w = x;
    }
    visited[w] = true;
    arm
}

/// Chain-rank relay from `v`; with [`TMode::ZeroOnly`] this is the
/// zero-core relay.
pub fn relay_start(
    g: &Graph,
    spectrum: &CoreSpectrum,
    v: usize,
    girth: u32,
    policy: TiePolicy,
    mode: TMode,
) -> RelayPath {
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut visited = vec![false; g.node_count()];
    let arm = run_arm(g, spectrum, v, girth, mode, policy.t_choice, &mut visited, &mut rng);
    let mut nodes = Vec::with_capacity(arm.len() + 1);
    nodes.push(v);
    nodes.extend(arm);
    RelayPath { nodes }
}

/// A path containing `v`: a first relay arm from `v`, then a second arm
/// from `v` that avoids the first, joined at `v`.
pub fn relay_containing(g: &Graph, spectrum: &CoreSpectrum, v: usize, girth: u32, policy: TiePolicy) -> RelayPath {
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut visited = vec![false; g.node_count()];
    let first = run_arm(
        g,
        spectrum,
        v,
        girth,
        TMode::Full,
        policy.t_choice,
        &mut visited,
        &mut rng,
    );
    let second = run_arm(
        g,
        spectrum,
        v,
        girth,
        TMode::Full,
        policy.t_choice,
        &mut visited,
        &mut rng,
    );
    let mut nodes: Vec<usize> = second.into_iter().rev().collect();
    nodes.push(v);
    nodes.extend(first);
    RelayPath { nodes }
}

fn baseline<R: Rng>(g: &Graph, v: usize, rng: &mut R, by_degree: bool) -> RelayPath {
    let mut visited = vec![false; g.node_count()];
    let mut nodes = vec![v];
    visited[v] = true;
    let mut w = v;
    let mut candidates = Vec::new();
    loop {
        candidates.clear();
        candidates.extend(g.neighbors(w).iter().copied().filter(|&u| !visited[u]));
        if candidates.is_empty() {
            break;
        }
        if by_degree {
            let top = candidates.iter().map(|&u| g.degree(u)).max().unwrap();
            candidates.retain(|&u| g.degree(u) == top);
        }
        let x = pick_uniform(rng, &candidates);
        visited[x] = true;
        nodes.push(x);
        w = x;
    }
    RelayPath { nodes }
}

/// Forwards to a uniformly random unused neighbor until none is left.
pub fn baseline_random<R: Rng>(g: &Graph, v: usize, rng: &mut R) -> RelayPath {
    baseline(g, v, rng, false)
}

/// Forwards to a uniformly random unused neighbor of maximal degree.
pub fn baseline_maxdeg<R: Rng>(g: &Graph, v: usize, rng: &mut R) -> RelayPath {
    baseline(g, v, rng, true)
}

/// Path-search strategies compared by the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    ChainRank,
    ZeroCore,
    Random,
    MaxDeg,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::ChainRank,
        Algorithm::ZeroCore,
        Algorithm::Random,
        Algorithm::MaxDeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ChainRank => "chainrank",
            Algorithm::ZeroCore => "zerocore",
            Algorithm::Random => "random",
            Algorithm::MaxDeg => "maxdeg",
        }
    }

    pub fn tag(self) -> u64 {
        self as u64 + 1
    }

    /// One search from `v`, with all randomness drawn from `seed`.
    pub fn run(self, g: &Graph, spectrum: &CoreSpectrum, v: usize, girth: u32, seed: u64) -> RelayPath {
        match self {
            Algorithm::ChainRank => relay_start(g, spectrum, v, girth, TiePolicy::seeded(seed), TMode::Full),
            Algorithm::ZeroCore => relay_start(g, spectrum, v, girth, TiePolicy::seeded(seed), TMode::ZeroOnly),
            Algorithm::Random => baseline_random(g, v, &mut ChaCha8Rng::seed_from_u64(seed)),
            Algorithm::MaxDeg => baseline_maxdeg(g, v, &mut ChaCha8Rng::seed_from_u64(seed)),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?} (chainrank, zerocore, random, maxdeg)")))
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::spectrum;
    use crate::generate;

    fn all_policies() -> Vec<TiePolicy> {
        let mut out = Vec::new();
        for t_choice in [TChoice::Largest, TChoice::Smallest, TChoice::Uniform] {
            for seed in 0..5 {
                out.push(TiePolicy { t_choice, seed });
            }
        }
        out
    }

    #[test]
    fn relay_start_examples() {
        let p3 = generate::path(3);
        let s = spectrum(&p3);
        for policy in all_policies() {
            let path = relay_start(&p3, &s, 0, 3, policy, TMode::Full);
            assert_eq!(path.nodes, vec![0, 1, 2]);
        }

        let k2 = generate::complete(2);
        let s = spectrum(&k2);
        assert_eq!(
            relay_start(&k2, &s, 1, 3, TiePolicy::default(), TMode::Full).length(),
            1
        );

        let k4 = generate::complete(4);
        let s = spectrum(&k4);
        for policy in all_policies() {
            for v in 0..4 {
                let path = relay_start(&k4, &s, v, 3, policy, TMode::Full);
                assert_eq!(path.length(), 3);
                assert!(path.is_simple_path(&k4));
            }
        }
    }

    #[test]
    fn relay_containing_examples() {
        let p3 = generate::path(3);
        let s = spectrum(&p3);
        let path = relay_containing(&p3, &s, 1, 3, TiePolicy::default());
        assert_eq!(path.length(), 2);
        assert!(path.is_simple_path(&p3));

        let k2 = generate::complete(2);
        let s = spectrum(&k2);
        assert_eq!(relay_containing(&k2, &s, 0, 3, TiePolicy::default()).length(), 1);

        let c5 = generate::cycle(5);
        let s = spectrum(&c5);
        for policy in all_policies() {
            for v in 0..5 {
                let path = relay_containing(&c5, &s, v, 5, policy);
                assert_eq!(path.length(), 4);
                assert!(path.nodes.contains(&v));
            }
        }
    }

    #[test]
    fn baseline_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p3 = generate::path(3);
        let star = generate::star(3);
        let k2 = generate::complete(2);
        let p4 = generate::path(4);
        let k4 = generate::complete(4);
        for _ in 0..50 {
            assert_eq!(baseline_random(&p3, 0, &mut rng).length(), 2);
            assert_eq!(baseline_random(&star, 0, &mut rng).length(), 1);
            assert_eq!(baseline_random(&k2, 0, &mut rng).length(), 1);
            assert_eq!(baseline_maxdeg(&p4, 0, &mut rng).length(), 3);
            assert_eq!(baseline_maxdeg(&star, 0, &mut rng).length(), 1);
            assert_eq!(baseline_maxdeg(&k4, 2, &mut rng).length(), 3);
        }
    }

    #[test]
    fn view_rejects_non_neighbors() {
        let g = generate::path(4);
        let s = spectrum(&g);
        let visited = vec![true, false, false, false];
        let view = LocalView::new(&g, &s, &visited, 1);
        assert_eq!(view.rank(0, 2), Some(1));
        assert_eq!(view.rank(0, 3), None);
        assert_eq!(view.rank(0, 1), None);
        assert_eq!(view.is_used(0), Some(true));
        assert_eq!(view.is_used(3), None);
        assert_eq!(view.unused_neighbors(), vec![2]);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("dijkstra".parse::<Algorithm>().is_err());
    }

    #[test]
    fn relay_prefers_high_rank_neighbors() {
        // Node 0 hangs off a triangle {1, 2, 3} and a pendant leaf 4.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 1), (0, 4)]).unwrap();
        let s = spectrum(&g);
        for seed in 0..10 {
            let path = relay_start(&g, &s, 0, 3, TiePolicy::seeded(seed), TMode::ZeroOnly);
            assert_eq!(path.length(), 3);
            assert_eq!(path.nodes[1], 1);
        }
    }
}
