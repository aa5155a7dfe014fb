//! Simple undirected graphs with dense node ids.
//!
//! Graphs are built from labeled edge lists. Self-loops, duplicate edges and
//! isolated nodes are dropped at construction time and the drop counts are
//! kept so that callers can report the discrepancy with the raw input.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Counters for input records discarded while building a [`Graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DropCounts {
    pub self_loops: usize,
    pub duplicate_edges: usize,
    pub isolated_nodes: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Accept lines with more than two tokens and use the first two
    /// (weighted or timestamped edge lists).
    pub ignore_extra_columns: bool,
    /// Labels to keep even if they carry no edge. They are still dropped as
    /// isolated nodes, but counted.
    pub declared_nodes: Vec<String>,
}

/// Immutable simple undirected graph.
///
/// Node ids are `0..n`. Adjacency lists are sorted and symmetric, and every
/// node has degree at least one.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    degree: Vec<u32>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edge_count: usize,
    dropped: DropCounts,
}

impl Graph {
    /// Builds a graph from labeled edges. Labels are densified by first
    /// appearance among the retained edges.
    pub fn from_labeled_edges<I, S>(edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut builder = Builder::default();
        for (a, b) in edges {
            builder.push(a.as_ref(), b.as_ref());
        }
        builder.finish(0)
    }

    /// Builds a graph from integer edges; labels are the decimal ids.
    /// Nodes in `0..n` without edges are counted as dropped isolated nodes.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut builder = Builder::default();
        for &(a, b) in edges {
            builder.push(&a.to_string(), &b.to_string());
        }
        let declared = n.saturating_sub(builder.seen_labels());
        builder.finish(declared)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn node_id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn dropped(&self) -> DropCounts {
        self.dropped
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn sum_degrees(&self) -> u64 {
        self.degree.iter().map(|&d| u64::from(d)).sum()
    }

    /// Largest absolute degree difference across an edge.
    pub fn lambda(&self) -> u32 {
        self.edges()
            .map(|(u, v)| self.degree[u].abs_diff(self.degree[v]))
            .max()
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.degree.iter().copied().min().unwrap_or(0)
    }

    /// Canonical edge list: one `label_u label_v` line per edge with `u < v`
    /// in internal-id order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edge_count * 8);
        for (u, v) in self.edges() {
            out.push_str(&self.labels[u]);
            out.push(' ');
            out.push_str(&self.labels[v]);
            out.push('\n');
        }
        out
    }

    fn labeled_edge_set(&self) -> HashSet<(&str, &str)> {
        self.edges()
            .map(|(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }
}

/// Two graphs are equal when they have the same labeled edge set; internal
/// ids are an encoding detail.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.node_count() == other.node_count()
            && self.edge_count == other.edge_count
            && self.labeled_edge_set() == other.labeled_edge_set()
    }
}

impl Eq for Graph {}

#[derive(Default)]
struct Builder {
    index: HashMap<String, usize>,
    labels: Vec<String>,
    edges: HashSet<(usize, usize)>,
    order: Vec<(usize, usize)>,
    dropped: DropCounts,
    loop_only: HashSet<String>,
}

impl Builder {
    fn seen_labels(&self) -> usize {
        self.labels.len() + self.loop_only.len()
    }

    fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.loop_only.remove(label);
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    fn push(&mut self, a: &str, b: &str) {
        if a == b {
            self.dropped.self_loops += 1;
            if !self.index.contains_key(a) {
                self.loop_only.insert(a.to_owned());
            }
            return;
        }
        let u = self.intern(a);
        let v = self.intern(b);
        let key = (u.min(v), u.max(v));
        if self.edges.insert(key) {
            self.order.push(key);
        } else {
            self.dropped.duplicate_edges += 1;
        }
    }

    fn finish(mut self, extra_isolated: usize) -> Result<Graph> {
        if self.order.is_empty() {
            return Err(Error::EmptyGraph);
        }
        self.dropped.isolated_nodes = self.loop_only.len() + extra_isolated;
        let n = self.labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &self.order {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let degree = adjacency.iter().map(|a| a.len() as u32).collect();
        Ok(Graph {
            adjacency,
            degree,
            labels: self.labels,
            index: self.index,
            edge_count: self.order.len(),
            dropped: self.dropped,
        })
    }
}

/// Parses a whitespace- or comma-separated edge list. Lines starting with
/// `#` or `%` are comments; blank lines are skipped.
pub fn load_edge_list(text: &str, options: &ParseOptions) -> Result<Graph> {
    let mut builder = Builder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        let ok = tokens.len() == 2 || (options.ignore_extra_columns && tokens.len() > 2);
        if !ok {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected 2 node labels, found {}", tokens.len()),
            });
        }
        builder.push(tokens[0], tokens[1]);
    }
    let extra = options
        .declared_nodes
        .iter()
        .filter(|l| !builder.index.contains_key(l.as_str()) && !builder.loop_only.contains(l.as_str()))
        .collect::<HashSet<_>>()
        .len();
    builder.finish(extra)
}

/// Girth of a graph; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<u32> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Exact girth by a breadth-first sweep from every root. A non-tree edge
/// `(u, w)` met during the sweep from `r` closes a closed walk of length
/// `dist(u) + dist(w) + 1` through `r`; the minimum over all roots is the
/// shortest cycle.
pub fn girth(g: &Graph) -> Girth {
    let n = g.node_count();
    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(u32::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // Nothing shorter can be found below this depth.
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == u32::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Average degree `2|E| / n`, kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AvgDegree {
    pub numerator: u64,
    pub denominator: u64,
}

impl AvgDegree {
    pub fn as_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for AvgDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.as_f64())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub edge_count: usize,
    pub k_max: u32,
    pub avg_degree: AvgDegree,
    pub lambda: u32,
    pub girth: Option<Girth>,
    pub dropped_self_loops: usize,
    pub dropped_duplicate_edges: usize,
    pub dropped_isolated_nodes: usize,
}

/// Summary statistics including the exact girth.
pub fn stats(g: &Graph) -> GraphStats {
    stats_with(g, true)
}

/// Summary statistics; the girth sweep costs `O(n |E|)` and can be skipped.
pub fn stats_with(g: &Graph, with_girth: bool) -> GraphStats {
    let d = g.dropped();
    GraphStats {
        n: g.node_count(),
        edge_count: g.edge_count(),
        k_max: g.max_degree(),
        avg_degree: AvgDegree {
            numerator: 2 * g.edge_count() as u64,
            denominator: g.node_count() as u64,
        },
        lambda: g.lambda(),
        girth: with_girth.then(|| girth(g)),
        dropped_self_loops: d.self_loops,
        dropped_duplicate_edges: d.duplicate_edges,
        dropped_isolated_nodes: d.isolated_nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn parse(text: &str) -> Result<Graph> {
        load_edge_list(text, &ParseOptions::default())
    }

    #[test]
    fn triangle() {
        let g = parse("1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), &[2, 2, 2]);
    }

    #[test]
    fn drops_loops_and_duplicates() {
        let g = parse("a b\nb a\na a\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let s = stats(&g);
        assert_eq!(s.dropped_self_loops, 1);
        assert_eq!(s.dropped_duplicate_edges, 1);
        assert_eq!(s.dropped_isolated_nodes, 0);
    }

    #[test]
    fn isolated_nodes_are_counted() {
        let g = parse("x x\na b\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.dropped().isolated_nodes, 1);
        let g = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.dropped().isolated_nodes, 2);
    }

    #[test]
    fn comments_commas_and_labels() {
        let g = parse("# header\n% konect\nfoo,bar\n  bar   baz  \n\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.node_id("foo"), Some(0));
        assert_eq!(g.node_id("baz"), Some(2));
        assert_eq!(g.label(1), "bar");
    }

    #[test]
    fn malformed_line_names_line_number() {
        match parse("1 2\n3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("1 2 7\n"), Err(Error::Parse { line: 1, .. })));
        let opts = ParseOptions {
            ignore_extra_columns: true,
            ..Default::default()
        };
        assert_eq!(load_edge_list("1 2 7\n", &opts).unwrap().edge_count(), 1);
    }

    #[test]
    fn empty_edge_set() {
        let err = parse("# nothing\n5 5\n").unwrap_err();
        assert_eq!(err.to_string(), "graph has no edges");
    }

    #[test]
    fn stats_of_small_graphs() {
        let k4 = generate::complete(4);
        let s = stats(&k4);
        assert_eq!((s.n, s.edge_count, s.k_max, s.lambda), (4, 6, 3, 0));
        assert_eq!(s.avg_degree.as_f64(), 3.0);
        assert_eq!(s.girth, Some(Girth::Finite(3)));

        let star = generate::star(3);
        let s = stats(&star);
        assert_eq!((s.k_max, s.lambda), (3, 2));
        assert_eq!(s.girth, Some(Girth::Infinite));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&generate::cycle(5)), Girth::Finite(5));
        assert_eq!(girth(&generate::path(6)), Girth::Infinite);
        assert_eq!(girth(&generate::complete(4)), Girth::Finite(3));
        assert_eq!(girth(&generate::cycle(4)), Girth::Finite(4));
        // Petersen graph
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = [outer, spokes, inner].concat();
        assert_eq!(girth(&Graph::from_edges(10, &edges).unwrap()), Girth::Finite(5));
    }

    #[test]
    fn canonical_round_trip() {
        let g = parse("q w\nw e\ne q\nr q\n").unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "q w\nq e\nq r\nw e\n");
        assert_eq!(parse(&text).unwrap(), g);
    }
}
