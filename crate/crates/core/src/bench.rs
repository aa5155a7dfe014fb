//! Benchmark harness: path searches from random sources, compared by the
//! gain of each algorithm's mean path length over the random-walk baseline.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{classical_bounds, BoundContext, ClassicalBounds, GirthMode, PathBoundSet};
use crate::chain::{spectrum, CoreSpectrum};
use crate::datasets::load_graph_file;
use crate::error::{Error, Result};
use crate::graph::{self, Girth, Graph, GraphStats, ParseOptions};
use crate::relay::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::Config(format!("unknown format {s:?} (csv, json)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub graph_path: PathBuf,
    pub source_count: usize,
    pub trials_per_source: usize,
    pub algorithms: Vec<Algorithm>,
    pub master_seed: u64,
    pub girth_mode: GirthMode,
    pub format: ReportFormat,
    /// Adds wall time to the provenance block, which makes reports differ
    /// between runs.
    pub record_timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            graph_path: PathBuf::new(),
            source_count: 100,
            trials_per_source: 1000,
            algorithms: Algorithm::ALL.to_vec(),
            master_seed: 0,
            girth_mode: GirthMode::Fixed(3),
            format: ReportFormat::Csv,
            record_timing: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.source_count == 0 || self.source_count > n {
            return Err(Error::Config(format!(
                "source count {} must be in 1..={n}",
                self.source_count
            )));
        }
        if self.trials_per_source == 0 {
            return Err(Error::Config("trials per source must be at least 1".into()));
        }
        if !self.algorithms.contains(&Algorithm::Random) {
            return Err(Error::Config(
                "algorithms must include 'random', the normalization baseline".into(),
            ));
        }
        Ok(())
    }
}

/// Path-length summary over the trials of one (source, algorithm) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialSummary {
    pub mean: f64,
    pub max: usize,
    pub min: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SourceResult {
    pub id: usize,
    pub label: String,
    pub results: BTreeMap<Algorithm, TrialSummary>,
}

impl SourceResult {
    /// `(mean_alg - mean_random) / mean_random`.
    pub fn gain(&self, algorithm: Algorithm) -> Option<f64> {
        let base = self.results.get(&Algorithm::Random)?.mean;
        let mean = self.results.get(&algorithm)?.mean;
        (base > 0.0).then(|| (mean - base) / base)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub graph: GraphStats,
    pub source_count: usize,
    pub trials_per_source: usize,
    pub algorithms: Vec<Algorithm>,
    pub master_seed: u64,
    pub lambda: u32,
    pub girth_used: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// Longest-path guarantees over the whole graph, next to textbook bounds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundComparison {
    pub max_le: i64,
    pub max_lm: i64,
    pub max_le_hat: Option<i64>,
    pub classical: ClassicalBounds,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub provenance: Provenance,
    pub comparison: BoundComparison,
    pub sources: Vec<SourceResult>,
}

impl BenchReport {
    pub fn algorithms(&self) -> &[Algorithm] {
        &self.provenance.algorithms
    }

    /// Mean of the per-source means.
    pub fn aggregate_mean(&self, algorithm: Algorithm) -> f64 {
        let total: f64 = self.sources.iter().map(|s| s.results[&algorithm].mean).sum();
        total / self.sources.len() as f64
    }

    pub fn aggregate_gain(&self, algorithm: Algorithm) -> f64 {
        let base = self.aggregate_mean(Algorithm::Random);
        (self.aggregate_mean(algorithm) - base) / base
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of the RNG stream for one trial.
pub fn trial_seed(master: u64, source: usize, trial: usize, algorithm: Algorithm) -> u64 {
    let mut h = splitmix64(master);
    for part in [source as u64, trial as u64, algorithm.tag()] {
        h = splitmix64(h ^ part);
    }
    h
}

/// Sorted sample of `count` distinct nodes.
pub fn sample_sources(n: usize, count: usize, master_seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(master_seed ^ 0x5eed));
    let mut picked = rand::seq::index::sample(&mut rng, n, count).into_vec();
    picked.sort_unstable();
    picked
}

/// Loads the configured graph and runs the benchmark on it.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    let g = load_graph_file(&cfg.graph_path, &ParseOptions::default())?;
    run_bench_on(&g, cfg)
}

pub fn run_bench_on(g: &Graph, cfg: &BenchConfig) -> Result<BenchReport> {
    let started = Instant::now();
    cfg.validate(g.node_count())?;
    let girth_used = cfg.girth_mode.resolve(g)?;
    let spec = spectrum(g);
    let algorithms: Vec<Algorithm> = {
        let mut a = cfg.algorithms.clone();
        a.sort();
        a.dedup();
        a
    };

    let sources: Vec<SourceResult> = sample_sources(g.node_count(), cfg.source_count, cfg.master_seed)
        .into_par_iter()
        .map(|v| evaluate_source(g, &spec, v, girth_used, cfg, &algorithms))
        .collect();

    // Girth only matters for resolving the formulas; skip the O(n|E|) sweep
    // in the reported stats unless it was computed anyway.
    let mut graph_stats = graph::stats_with(g, false);
    if cfg.girth_mode == GirthMode::Exact {
        graph_stats.girth = Some(graph::girth(g));
    }
    let ctx = BoundContext::new(&spec, girth_used, Girth::Infinite)?;
    let bounds = PathBoundSet::compute(&ctx);
    let comparison = BoundComparison {
        max_le: bounds.max_le(),
        max_lm: bounds.max_lm(),
        max_le_hat: bounds.max_le_hat(),
        classical: classical_bounds(g),
    };

    Ok(BenchReport {
        provenance: Provenance {
            graph: graph_stats,
            source_count: cfg.source_count,
            trials_per_source: cfg.trials_per_source,
            algorithms,
            master_seed: cfg.master_seed,
            lambda: spec.lambda(),
            girth_used,
            wall_time_ms: cfg.record_timing.then(|| started.elapsed().as_millis() as u64),
        },
        comparison,
        sources,
    })
}

fn evaluate_source(
    g: &Graph,
    spec: &CoreSpectrum,
    v: usize,
    girth: u32,
    cfg: &BenchConfig,
    algorithms: &[Algorithm],
) -> SourceResult {
    let results = algorithms
        .iter()
        .map(|&algorithm| {
            let mut total = 0usize;
            let mut max = 0usize;
            let mut min = usize::MAX;
            for trial in 0..cfg.trials_per_source {
                let seed = trial_seed(cfg.master_seed, v, trial, algorithm);
                let len = algorithm.run(g, spec, v, girth, seed).length();
                total += len;
                max = max.max(len);
                min = min.min(len);
            }
            let mean = total as f64 / cfg.trials_per_source as f64;
            (algorithm, TrialSummary { mean, max, min })
        })
        .collect();
    SourceResult {
        id: v,
        label: g.label(v).to_owned(),
        results,
    }
}

fn round4(x: f64) -> f64 {
    let r = (x * 1e4).round() / 1e4;
    // Avoid "-0.0" in the output.
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// CSV with header `source,algorithm,mean,gain`: per algorithm, one row per
/// source ordered by ascending gain, then one `aggregate` row per algorithm.
pub fn emit_csv(report: &BenchReport) -> String {
    let mut out = String::from("source,algorithm,mean,gain\n");
    for &algorithm in report.algorithms() {
        let mut rows: Vec<(f64, &SourceResult)> = report
            .sources
            .iter()
            .map(|s| (s.gain(algorithm).unwrap_or(0.0), s))
            .collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.id.cmp(&b.1.id)));
        for (gain, s) in rows {
            let mean = s.results[&algorithm].mean;
            let _ = writeln!(out, "{},{},{:.4},{:.4}", s.label, algorithm, round4(mean), round4(gain));
        }
    }
    for &algorithm in report.algorithms() {
        let _ = writeln!(
            out,
            "aggregate,{},{:.4},{:.4}",
            algorithm,
            round4(report.aggregate_mean(algorithm)),
            round4(report.aggregate_gain(algorithm))
        );
    }
    out
}

#[derive(Serialize)]
struct JsonSummary {
    mean: f64,
    max: usize,
    min: usize,
    gain: f64,
}

#[derive(Serialize)]
struct JsonAggregate {
    mean: f64,
    gain: f64,
}

#[derive(Serialize)]
struct JsonSource<'a> {
    id: usize,
    label: &'a str,
    results: BTreeMap<&'static str, JsonSummary>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    provenance: &'a Provenance,
    comparison: &'a BoundComparison,
    sources: Vec<JsonSource<'a>>,
    aggregate: BTreeMap<&'static str, JsonAggregate>,
}

/// Pretty JSON with sorted keys and values rounded to 4 decimals; parsing
/// and re-serializing it reproduces the same bytes.
pub fn emit_json(report: &BenchReport) -> String {
    let sources = report
        .sources
        .iter()
        .map(|s| JsonSource {
            id: s.id,
            label: &s.label,
            results: s
                .results
                .iter()
                .map(|(&a, r)| {
                    let summary = JsonSummary {
                        mean: round4(r.mean),
                        max: r.max,
                        min: r.min,
                        gain: round4(s.gain(a).unwrap_or(0.0)),
                    };
                    (a.name(), summary)
                })
                .collect(),
        })
        .collect();
    let aggregate = report
        .algorithms()
        .iter()
        .map(|&a| {
            let agg = JsonAggregate {
                mean: round4(report.aggregate_mean(a)),
                gain: round4(report.aggregate_gain(a)),
            };
            (a.name(), agg)
        })
        .collect();
    let doc = JsonReport {
        provenance: &report.provenance,
        comparison: &report.comparison,
        sources,
        aggregate,
    };
    let value = serde_json::to_value(&doc).expect("report serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
    text.push('\n');
    text
}

pub fn emit_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Json => emit_json(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn k4_config(algorithms: Vec<Algorithm>) -> BenchConfig {
        BenchConfig {
            source_count: 4,
            trials_per_source: 10,
            algorithms,
            master_seed: 42,
            ..Default::default()
        }
    }

    #[test]
    fn complete_graph_report() {
        let g = generate::complete(4);
        let report = run_bench_on(&g, &k4_config(Algorithm::ALL.to_vec())).unwrap();
        for a in Algorithm::ALL {
            assert_eq!(report.aggregate_mean(a), 3.0);
            assert_eq!(report.aggregate_gain(a), 0.0);
            for s in &report.sources {
                assert_eq!(
                    s.results[&a],
                    TrialSummary {
                        mean: 3.0,
                        max: 3,
                        min: 3
                    }
                );
            }
        }
        let csv = emit_csv(&report);
        assert!(csv.lines().any(|l| l == "aggregate,chainrank,3.0000,0.0000"), "{csv}");
        assert_eq!(report.comparison.max_le, 3);
        assert_eq!(report.comparison.classical.erdos_gallai, 3);
    }

    #[test]
    fn reports_are_deterministic() {
        let g = generate::barabasi_albert(120, 2, 4);
        let cfg = BenchConfig {
            source_count: 10,
            trials_per_source: 20,
            master_seed: 7,
            ..Default::default()
        };
        let a = run_bench_on(&g, &cfg).unwrap();
        let b = run_bench_on(&g, &cfg).unwrap();
        assert_eq!(emit_csv(&a), emit_csv(&b));
        assert_eq!(emit_json(&a), emit_json(&b));
    }

    #[test]
    fn json_is_canonical() {
        let g = generate::barabasi_albert(80, 2, 1);
        let cfg = BenchConfig {
            source_count: 5,
            trials_per_source: 7,
            master_seed: 3,
            ..Default::default()
        };
        let text = emit_json(&run_bench_on(&g, &cfg).unwrap());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        assert_eq!(again, text);
    }

    #[test]
    fn single_algorithm_csv_shape() {
        let g = generate::barabasi_albert(50, 2, 2);
        let cfg = BenchConfig {
            source_count: 6,
            trials_per_source: 3,
            algorithms: vec![Algorithm::Random],
            ..Default::default()
        };
        let csv = emit_csv(&run_bench_on(&g, &cfg).unwrap());
        assert_eq!(csv.lines().count() - 1, 6 + 1);
    }

    #[test]
    fn config_validation() {
        let g = generate::complete(4);
        let bad = [
            BenchConfig {
                source_count: 5,
                ..k4_config(Algorithm::ALL.to_vec())
            },
            BenchConfig {
                trials_per_source: 0,
                ..k4_config(Algorithm::ALL.to_vec())
            },
            k4_config(vec![Algorithm::ChainRank]),
            k4_config(vec![]),
        ];
        for cfg in bad {
            assert!(matches!(run_bench_on(&g, &cfg), Err(Error::Config(_))));
        }
    }

    #[test]
    fn aggregate_is_mean_of_source_means() {
        let g = generate::barabasi_albert(100, 3, 8);
        let cfg = BenchConfig {
            source_count: 9,
            trials_per_source: 5,
            ..Default::default()
        };
        let report = run_bench_on(&g, &cfg).unwrap();
        for a in Algorithm::ALL {
            let manual: f64 = report.sources.iter().map(|s| s.results[&a].mean).sum::<f64>() / 9.0;
            assert_eq!(report.aggregate_mean(a), manual);
        }
    }

    #[test]
    fn seeds_are_distinct_per_stream() {
        let mut seen = std::collections::HashSet::new();
        for s in 0..20 {
            for t in 0..20 {
                for a in Algorithm::ALL {
                    assert!(seen.insert(trial_seed(1, s, t, a)));
                }
            }
        }
        assert_eq!(sample_sources(10, 10, 5), (0..10).collect::<Vec<_>>());
    }
}
