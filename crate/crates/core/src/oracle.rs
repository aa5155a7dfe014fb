//! Brute-force reference implementations for small graphs.
//!
//! Nothing here shares code with the fixed-point engine or the bound
//! formulas; these routines exist to check them.

use crate::chain::{ParamVectors, RankVector};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_nodes_chain: usize,
    pub max_nodes_path: usize,
    /// Cap on `prod (degree(v) + 1)` for chain enumeration.
    pub max_state_space: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_nodes_chain: 7,
            max_nodes_path: 14,
            max_state_space: 20_000_000,
        }
    }
}

/// Checks the separate-chain conditions at `v` for every level `1..=z_v`,
/// straight from the definition.
fn node_ok(g: &Graph, params: &ParamVectors, z: &[u32], v: usize) -> bool {
    let (t, p) = (params.t[v], params.p[v]);
    for i in 1..=i64::from(z[v]) {
        let same_level = g.neighbors(v).iter().filter(|&&u| i64::from(z[u]) >= i).count() as i64;
        if same_level < (i + p).max(0) {
            return false;
        }
        let j = (i + t).max(0);
        let reach = g.neighbors(v).iter().filter(|&&u| i64::from(z[u]) >= j).count() as i64;
        if reach < i {
            return false;
        }
    }
    true
}

/// Pointwise maximum of all rank vectors `0 <= z <= d` whose induced chain
/// is a `[t, p]`-separate chain. Merging two such chains level by level
/// gives another, so this is the maximal chain.
///
/// The enumeration assigns ranks in node order and rejects a partial
/// assignment as soon as some node with all neighbors assigned violates its
/// conditions; every valid vector is still visited.
pub fn brute_max_chain(g: &Graph, params: &ParamVectors, limits: &OracleLimits) -> Result<RankVector> {
    params.check_feasible(g)?;
    let n = g.node_count();
    if n > limits.max_nodes_chain {
        return Err(Error::OracleLimit(format!(
            "{n} nodes exceeds max_nodes_chain = {}",
            limits.max_nodes_chain
        )));
    }
    let space = g
        .degrees()
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(u64::from(d) + 1))
        .filter(|&s| s <= limits.max_state_space);
    if space.is_none() {
        return Err(Error::OracleLimit(format!(
            "state space exceeds max_state_space = {}",
            limits.max_state_space
        )));
    }

    // ready[i]: nodes whose closed neighborhood is fully assigned once node i is.
    let mut ready = vec![Vec::new(); n];
    for v in 0..n {
        let last = g.neighbors(v).iter().copied().chain([v]).max().unwrap();
        ready[last].push(v);
    }

    struct Search<'a> {
        g: &'a Graph,
        params: &'a ParamVectors,
        ready: Vec<Vec<usize>>,
        z: Vec<u32>,
        best: Option<Vec<u32>>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) {
            if i == self.z.len() {
                match &mut self.best {
                    Some(b) => b.iter_mut().zip(&self.z).for_each(|(b, &z)| *b = (*b).max(z)),
                    None => self.best = Some(self.z.clone()),
                }
                return;
            }
            for value in 0..=self.g.degree(i) {
                self.z[i] = value;
                if self.ready[i].iter().all(|&v| node_ok(self.g, self.params, &self.z, v)) {
                    self.go(i + 1);
                }
            }
            self.z[i] = 0;
        }
    }

    let mut search = Search {
        g,
        params,
        ready,
        z: vec![0; n],
        best: None,
    };
    search.go(0);
    search
        .best
        .map(RankVector)
        .ok_or_else(|| Error::OracleInternal("no valid rank vector; the zero vector should always qualify".into()))
}

fn check_path_limits(g: &Graph, limits: &OracleLimits) -> Result<()> {
    let n = g.node_count();
    if n > limits.max_nodes_path || n > 20 {
        return Err(Error::OracleLimit(format!(
            "{n} nodes exceeds max_nodes_path = {}",
            limits.max_nodes_path.min(20)
        )));
    }
    Ok(())
}

/// Length of the longest simple path with terminal `v`, by depth-first
/// enumeration. A branch is cut when the nodes still reachable from its end
/// cannot beat the best path found so far.
pub fn brute_longest_from(g: &Graph, v: usize, limits: &OracleLimits) -> Result<usize> {
    check_path_limits(g, limits)?;
    let mut visited = vec![false; g.node_count()];
    let mut best = 0;
    let mut scratch = Vec::new();
    visited[v] = true;
    dfs(g, v, 0, &mut visited, &mut best, &mut scratch);
    Ok(best)
}

fn reachable_unvisited(g: &Graph, from: usize, visited: &[bool], stack: &mut Vec<usize>) -> usize {
    let mut seen = visited.to_vec();
    stack.clear();
    stack.push(from);
    let mut count = 0;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count
}

fn dfs(g: &Graph, end: usize, len: usize, visited: &mut [bool], best: &mut usize, scratch: &mut Vec<usize>) {
    *best = (*best).max(len);
    if len + reachable_unvisited(g, end, visited, scratch) <= *best {
        return;
    }
    for &w in g.neighbors(end) {
        if !visited[w] {
            visited[w] = true;
            dfs(g, w, len + 1, visited, best, scratch);
            visited[w] = false;
        }
    }
}

/// Longest path lengths for every node, by dynamic programming over
/// (node subset, end node) pairs. Returns `(from, through)`: the longest
/// path with `v` as a terminal and the longest path containing `v`.
#[allow(clippy::needless_range_loop)]
pub fn longest_path_table(g: &Graph, limits: &OracleLimits) -> Result<(Vec<usize>, Vec<usize>)> {
    check_path_limits(g, limits)?;
    let n = g.node_count();
    // starts[mask * n + e]: set of start nodes s such that some simple path
    // from s to e visits exactly the nodes in mask.
    let mut starts = vec![0u32; (1usize << n) * n];
    for s in 0..n {
        starts[(1 << s) * n + s] = 1 << s;
    }
    let mut from = vec![0usize; n];
    let mut through = vec![0usize; n];
    for mask in 1usize..(1 << n) {
        let len = mask.count_ones() as usize - 1;
        for e in 0..n {
            let set = starts[mask * n + e];
            if set == 0 {
                continue;
            }
            for s in 0..n {
                if set >> s & 1 == 1 {
                    from[s] = from[s].max(len);
                }
            }
            for v in 0..n {
                if mask >> v & 1 == 1 {
                    through[v] = through[v].max(len);
                }
            }
            for &u in g.neighbors(e) {
                if mask >> u & 1 == 0 {
                    starts[(mask | 1 << u) * n + u] |= set;
                }
            }
        }
    }
    Ok((from, through))
}

/// Length of the longest simple path containing `v`.
pub fn brute_longest_through(g: &Graph, v: usize, limits: &OracleLimits) -> Result<usize> {
    longest_path_table(g, limits).map(|(_, through)| through[v])
}

/// Classic core numbers by repeatedly removing a node of minimum remaining
/// degree (bucket queue, linear time).
pub fn kcore_peeling(g: &Graph) -> RankVector {
    let n = g.node_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v) as usize).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut core = vec![0u32; n];
    let mut k = 0;
    let mut d = 0;
    let mut done = 0;
    while done < n {
        // Buckets may hold stale entries; skip them.
        let Some(v) = buckets[d].pop() else {
            d += 1;
            continue;
        };
        if removed[v] || deg[v] != d {
            continue;
        }
        k = k.max(d);
        core[v] = k as u32;
        removed[v] = true;
        done += 1;
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                buckets[deg[u]].push(u);
                d = d.min(deg[u]);
            }
        }
    }
    RankVector(core)
}
