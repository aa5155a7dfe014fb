//! Maximal `[t, p]`-separate chains computed as fixed points of a node-local
//! dynamical system.
//!
//! A chain `G = G_0 >= G_1 >= ...` of node-induced subgraphs is encoded by a
//! rank vector `c`, with `G_i = {v : c_v >= i}`. Each node `v` in `G_i` needs
//! at least `max(0, i + p_v)` neighbors in `G_i` and at least `i` neighbors in
//! `G_max(0, i + t_v)`. Starting from the degree vector and repeatedly
//! applying [`local_update`] at every node converges to the ranks of the
//! unique maximal chain.

use std::ops::Index;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-node `t` and `p` parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamVectors {
    pub t: Vec<i64>,
    pub p: Vec<i64>,
}

impl ParamVectors {
    pub fn new(t: Vec<i64>, p: Vec<i64>) -> Self {
        ParamVectors { t, p }
    }

    /// Constant `t` with `p_v = -degree(v)`, which makes the `p` constraint
    /// vacuous; ranks then depend on `t` alone.
    pub fn degenerate(g: &Graph, t: i64) -> Self {
        ParamVectors {
            t: vec![t; g.node_count()],
            p: g.degrees().iter().map(|&d| -i64::from(d)).collect(),
        }
    }

    pub fn uniform(g: &Graph, t: i64, p: i64) -> Self {
        ParamVectors {
            t: vec![t; g.node_count()],
            p: vec![p; g.node_count()],
        }
    }

    /// A chain exists iff `p_v <= degree(v)` for every node.
    pub fn check_feasible(&self, g: &Graph) -> Result<()> {
        let n = g.node_count();
        for len in [self.t.len(), self.p.len()] {
            if len != n {
                return Err(Error::ParamLength { expected: n, got: len });
            }
        }
        let nodes: Vec<usize> = (0..n).filter(|&v| self.p[v] > i64::from(g.degree(v))).collect();
        if nodes.is_empty() {
            Ok(())
        } else {
            Err(Error::Infeasible { nodes })
        }
    }
}

/// Per-node ranks; also a state of the `[t, p]`-system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RankVector(pub Vec<u32>);

impl RankVector {
    pub fn degrees(g: &Graph) -> Self {
        RankVector(g.degrees().to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Index of the last nonempty level of the induced chain.
    pub fn size(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Nodes of level `i` of the induced chain.
    pub fn level(&self, i: u32) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] >= i).collect()
    }

    pub fn pointwise_max(&self, other: &RankVector) -> RankVector {
        RankVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self <= other` at every node.
    pub fn le(&self, other: &RankVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Index<usize> for RankVector {
    type Output = u32;

    fn index(&self, v: usize) -> &u32 {
        &self.0[v]
    }
}

/// Update order for the dynamical system. All policies are fair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// Nodes `0..n` in order, repeated.
    #[default]
    RoundRobin,
    /// A fresh random permutation of the nodes every round.
    RandomPermutation { seed: u64 },
    /// Rounds only revisit nodes with a neighbor that changed in the previous
    /// round; the first round visits every node.
    Worklist,
}

/// Instrumentation of a fixed-point run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IterationStats {
    /// Total unit decrements over all node updates.
    pub decrements: u64,
    /// Total unit increments; zero whenever the run starts at or below a
    /// state the rule cannot raise (for example the degree vector).
    pub increments: u64,
    /// Rounds, including the final round without changes.
    pub sweeps: u64,
    /// Number of local-rule evaluations.
    pub updates: u64,
}

impl IterationStats {
    fn absorb(&mut self, other: IterationStats) {
        self.decrements += other.decrements;
        self.increments += other.increments;
        self.sweeps += other.sweeps;
        self.updates += other.updates;
    }
}

#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub ranks: RankVector,
    pub stats: IterationStats,
}

/// Largest `k` with at least `k` values `>= k + t` and at least
/// `max(0, k + p)` values `>= k`. `sorted_desc` holds the neighbor states in
/// non-increasing order.
fn rule_on_sorted(sorted_desc: &[u32], t: i64, p: i64) -> u32 {
    let deg = sorted_desc.len();
    for k in (1..=deg).rev() {
        let ki = k as i64;
        // At least k values >= k + t iff the k-th largest is.
        if i64::from(sorted_desc[k - 1]) < ki + t {
            continue;
        }
        let need = (ki + p).max(0) as usize;
        if need == 0 || (need <= deg && sorted_desc[need - 1] as usize >= k) {
            return k as u32;
        }
    }
    0
}

fn eval_into(buf: &mut Vec<u32>, g: &Graph, v: usize, state: &[u32], t: i64, p: i64) -> u32 {
    buf.clear();
    buf.extend(g.neighbors(v).iter().map(|&u| state[u]));
    buf.sort_unstable_by(|a, b| b.cmp(a));
    rule_on_sorted(buf, t, p)
}

/// The local function at `v`: the largest `k >= 0` such that at least `k`
/// neighbors have state `>= k + t_v` and at least `max(0, k + p_v)` neighbors
/// have state `>= k`.
pub fn local_update(g: &Graph, v: usize, state: &RankVector, t_v: i64, p_v: i64) -> u32 {
    let mut buf = Vec::with_capacity(g.degree(v) as usize);
    eval_into(&mut buf, g, v, &state.0, t_v, p_v)
}

/// Runs the `[t, p]`-system from `init` until a round changes nothing.
pub fn fixed_point(g: &Graph, params: &ParamVectors, init: &RankVector, schedule: Schedule) -> Result<FixedPoint> {
    fixed_point_observed(g, params, init, schedule, |_, _, _| {})
}

/// As [`fixed_point`], calling `observe(v, old, new)` after every local
/// update that changes a node state.
pub fn fixed_point_observed<F>(
    g: &Graph,
    params: &ParamVectors,
    init: &RankVector,
    schedule: Schedule,
    mut observe: F,
) -> Result<FixedPoint>
where
    F: FnMut(usize, u32, u32),
{
    params.check_feasible(g)?;
    let n = g.node_count();
    if init.len() != n {
        return Err(Error::ParamLength {
            expected: n,
            got: init.len(),
        });
    }
    for v in 0..n {
        if init[v] > g.degree(v) {
            return Err(Error::InitAboveDegree {
                node: v,
                value: init[v],
                degree: g.degree(v),
            });
        }
    }

    let mut state = init.0.clone();
    let mut stats = IterationStats::default();
    let budget = g.sum_degrees() + n as u64;
    let mut buf = Vec::new();

    let mut step = |v: usize, state: &mut Vec<u32>, stats: &mut IterationStats| -> bool {
        let new = eval_into(&mut buf, g, v, state, params.t[v], params.p[v]);
        stats.updates += 1;
        let old = state[v];
        if new == old {
            return false;
        }
        if new < old {
            stats.decrements += u64::from(old - new);
        } else {
            stats.increments += u64::from(new - old);
        }
        state[v] = new;
        observe(v, old, new);
        true
    };
    let over_budget = |stats: &IterationStats| {
        stats.decrements > budget || stats.increments > budget || stats.sweeps > 2 * budget + 2
    };

    match schedule {
        Schedule::RoundRobin | Schedule::RandomPermutation { .. } => {
            let mut order: Vec<usize> = (0..n).collect();
            let mut rng = match schedule {
                Schedule::RandomPermutation { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
                _ => None,
            };
            loop {
                if let Some(rng) = rng.as_mut() {
                    order.shuffle(rng);
                }
                let mut changed = false;
                for &v in &order {
                    changed |= step(v, &mut state, &mut stats);
                }
                stats.sweeps += 1;
                if !changed {
                    break;
                }
                if over_budget(&stats) {
                    return Err(Error::NonTermination {
                        decrements: stats.decrements,
                        sweeps: stats.sweeps,
                    });
                }
            }
        }
        Schedule::Worklist => {
            let mut current: Vec<usize> = (0..n).collect();
            let mut next = Vec::new();
            let mut queued = vec![false; n];
            while !current.is_empty() {
                for &v in &current {
                    if step(v, &mut state, &mut stats) {
                        for &u in g.neighbors(v) {
                            if !queued[u] {
                                queued[u] = true;
                                next.push(u);
                            }
                        }
                    }
                }
                stats.sweeps += 1;
                for &u in &next {
                    queued[u] = false;
                }
                next.sort_unstable();
                std::mem::swap(&mut current, &mut next);
                next.clear();
                if over_budget(&stats) {
                    return Err(Error::NonTermination {
                        decrements: stats.decrements,
                        sweeps: stats.sweeps,
                    });
                }
            }
        }
    }

    Ok(FixedPoint {
        ranks: RankVector(state),
        stats,
    })
}

/// Ranks of the maximal `[t, p]`-separate chain: the fixed point reached from
/// the degree vector under the round-robin schedule.
pub fn decompose(g: &Graph, params: &ParamVectors) -> Result<RankVector> {
    decompose_with_stats(g, params).map(|fp| fp.ranks)
}

pub fn decompose_with_stats(g: &Graph, params: &ParamVectors) -> Result<FixedPoint> {
    fixed_point(g, params, &RankVector::degrees(g), Schedule::RoundRobin)
}

/// Ranks `C_t(v)` for every constant `t` in `[-lambda, 0]` with degenerate
/// `p`. Row `t = -lambda` equals the degree vector, and rows are pointwise
/// non-increasing in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreSpectrum {
    lambda: u32,
    rows: Vec<RankVector>,
}

impl CoreSpectrum {
    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn t_min(&self) -> i64 {
        -i64::from(self.lambda)
    }

    /// `t` values from `-lambda` to `0`.
    pub fn t_values(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        self.t_min()..=0
    }

    pub fn row(&self, t: i64) -> &RankVector {
        &self.rows[(t - self.t_min()) as usize]
    }

    pub fn rows(&self) -> &[RankVector] {
        &self.rows
    }

    /// `C_t(v)`.
    pub fn rank(&self, t: i64, v: usize) -> u32 {
        self.rows[(t - self.t_min()) as usize][v]
    }

    pub fn node_count(&self) -> usize {
        self.rows.first().map_or(0, RankVector::len)
    }
}

/// Computes the spectrum with warm starts: row `-lambda` from the degree
/// vector, each later row from the previous one.
pub fn spectrum(g: &Graph) -> CoreSpectrum {
    spectrum_with_stats(g).0
}

pub fn spectrum_with_stats(g: &Graph) -> (CoreSpectrum, IterationStats) {
    let lambda = g.lambda();
    let mut rows = Vec::with_capacity(lambda as usize + 1);
    let mut total = IterationStats::default();
    let mut state = RankVector::degrees(g);
    for t in -i64::from(lambda)..=0 {
        let params = ParamVectors::degenerate(g, t);
        let fp = fixed_point(g, &params, &state, Schedule::RoundRobin)
            .expect("degenerate parameters are feasible and warm starts are monotone");
        total.absorb(fp.stats);
        state = fp.ranks;
        rows.push(state.clone());
    }
    (CoreSpectrum { lambda, rows }, total)
}

/// Checks that the chain induced by `ranks` is a `[t, p]`-separate chain.
pub fn verify_chain(g: &Graph, params: &ParamVectors, ranks: &RankVector) -> Result<bool> {
    params.check_feasible(g)?;
    let n = g.node_count();
    if ranks.len() != n {
        return Err(Error::ParamLength {
            expected: n,
            got: ranks.len(),
        });
    }
    let mut buf = Vec::new();
    for v in 0..n {
        buf.clear();
        buf.extend(g.neighbors(v).iter().map(|&u| ranks[u]));
        buf.sort_unstable_by(|a, b| b.cmp(a));
        // Neighbors with rank >= a.
        let count_at_least = |a: i64| buf.partition_point(|&r| i64::from(r) >= a) as i64;
        // Level 0 holds by feasibility.
        for i in 1..=i64::from(ranks[v]) {
            if count_at_least(i) < (i + params.p[v]).max(0) {
                return Ok(false);
            }
            if count_at_least((i + params.t[v]).max(0)) < i {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
