//! Command-line front end. [`dispatch`] takes the argument vector and the
//! output streams so that it can be driven from tests.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bench::{emit_report, run_bench, BenchConfig, ReportFormat};
use crate::bounds::{BoundContext, GirthMode, PathBoundSet};
use crate::chain::{fixed_point, spectrum_with_stats, ParamVectors, RankVector, Schedule};
use crate::datasets::load_graph_file;
use crate::error::{Error, Result};
use crate::graph::{self, Girth, Graph, ParseOptions};
use crate::relay::{relay_containing, Algorithm, TiePolicy};
use crate::verify::{run_checks, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "sepchain",
    version,
    about = "Separate chain decomposition, path bounds and message relaying"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge-list file (looked up under $SEPCHAIN_DATA_DIR when not found).
    graph: PathBuf,
    /// Use the first two columns of lines with extra columns.
    #[arg(long)]
    ignore_extra_columns: bool,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph> {
        let opts = ParseOptions {
            ignore_extra_columns: self.ignore_extra_columns,
            ..Default::default()
        };
        load_graph_file(&self.graph, &opts)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScheduleArg {
    RoundRobin,
    Random,
    Worklist,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Node and edge counts, degree statistics, lambda and girth.
    Stats {
        #[command(flatten)]
        input: GraphArgs,
        /// Skip the exact girth computation.
        #[arg(long)]
        no_girth: bool,
    },
    /// Ranks of the maximal [t,p]-separate chain as CSV.
    Decompose {
        #[command(flatten)]
        input: GraphArgs,
        /// Constant t for every node.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        t: i64,
        /// Constant p for every node; defaults to -degree(v).
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
        /// Per-node overrides, lines "label,t,p".
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "round-robin")]
        schedule: ScheduleArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write {"decrements": N, "sweeps": M} here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// C_t(v) for every t in [-lambda, 0] as CSV.
    Spectrum {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Per-node longest-path lower bounds as CSV.
    Bounds {
        #[command(flatten)]
        input: GraphArgs,
        /// exact, 3, or an integer not above the exact girth.
        #[arg(long, default_value = "3")]
        girth: String,
    },
    /// Relay trials from one source node.
    Relay {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long)]
        source: String,
        #[arg(long, default_value = "chainrank")]
        algo: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "3")]
        girth: String,
        /// Search a path containing the source (chainrank only).
        #[arg(long)]
        containing: bool,
    },
    /// Benchmark the relay algorithms from random sources.
    Bench {
        #[command(flatten)]
        input: GraphArgs,
        /// key=value file with any of: sources, trials, algos, seed, girth,
        /// format, timing. Flags take precedence.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        sources: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        /// Comma-separated subset of chainrank,zerocore,random,maxdeg.
        #[arg(long)]
        algos: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        girth: Option<String>,
        #[arg(long)]
        format: Option<String>,
        /// Record wall time (reports then differ between runs).
        #[arg(long)]
        timing: bool,
    },
    /// Cross-check everything against brute-force oracles.
    Verify {
        /// Run on small generated graphs (the only supported mode).
        #[arg(long)]
        small: bool,
        #[arg(long, default_value_t = VerifyOptions::small().graphs)]
        graphs: usize,
        #[arg(long, default_value_t = VerifyOptions::small().seed)]
        seed: u64,
    },
}

/// Runs the CLI. Exit status: 0 success, 1 invalid input or usage, 2
/// internal error.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

fn write_sidecar(path: &Path, decrements: u64, sweeps: u64) -> Result<()> {
    #[derive(Serialize)]
    struct Sidecar {
        decrements: u64,
        sweeps: u64,
    }
    let text = serde_json::to_string(&Sidecar { decrements, sweeps }).expect("sidecar serializes");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn node_by_label(g: &Graph, label: &str) -> Result<usize> {
    g.node_id(label).ok_or_else(|| Error::UnknownNode(label.to_owned()))
}

fn read_params(g: &Graph, path: &Path, base: &mut ParamVectors) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<i64>().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("not an integer: {s:?}"),
            })
        };
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: i + 1,
                message: "expected label,t,p".into(),
            });
        }
        let v = node_by_label(g, fields[0])?;
        base.t[v] = parse(fields[1])?;
        base.p[v] = parse(fields[2])?;
    }
    Ok(())
}

fn parse_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            message: "expected key=value".into(),
        })?;
        let key = k.trim().to_owned();
        const KEYS: [&str; 7] = ["sources", "trials", "algos", "seed", "girth", "format", "timing"];
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("unknown config key {key:?}")));
        }
        map.insert(key, v.trim().to_owned());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Config(format!("invalid value for {key}: {s:?}")))
}

fn parse_algos(s: &str) -> Result<Vec<Algorithm>> {
    s.split(',').map(|a| a.trim().parse()).collect()
}

fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Stats { input, no_girth } => {
            let g = input.load()?;
            let s = graph::stats_with(&g, !no_girth);
            writeln!(out, "n={}", s.n)?;
            writeln!(out, "edges={}", s.edge_count)?;
            writeln!(out, "k_max={}", s.k_max)?;
            writeln!(out, "avg_degree={}", s.avg_degree)?;
            writeln!(out, "lambda={}", s.lambda)?;
            if let Some(girth) = s.girth {
                writeln!(out, "girth={girth}")?;
            }
            writeln!(out, "dropped_self_loops={}", s.dropped_self_loops)?;
            writeln!(out, "dropped_duplicate_edges={}", s.dropped_duplicate_edges)?;
            writeln!(out, "dropped_isolated_nodes={}", s.dropped_isolated_nodes)?;
        }
        Command::Decompose {
            input,
            t,
            p,
            params,
            schedule,
            seed,
            sidecar,
        } => {
            let g = input.load()?;
            let mut pv = match p {
                Some(p) => ParamVectors::uniform(&g, t, p),
                None => ParamVectors::degenerate(&g, t),
            };
            if let Some(path) = params {
                read_params(&g, &path, &mut pv)?;
            }
            let schedule = match schedule {
                ScheduleArg::RoundRobin => Schedule::RoundRobin,
                ScheduleArg::Random => Schedule::RandomPermutation { seed },
                ScheduleArg::Worklist => Schedule::Worklist,
            };
            let fp = fixed_point(&g, &pv, &RankVector::degrees(&g), schedule)?;
            writeln!(out, "node_label,rank")?;
            for v in 0..g.node_count() {
                writeln!(out, "{},{}", g.label(v), fp.ranks[v])?;
            }
            if let Some(path) = sidecar {
                write_sidecar(&path, fp.stats.decrements, fp.stats.sweeps)?;
            }
        }
        Command::Spectrum { input, sidecar } => {
            let g = input.load()?;
            let (spec, stats) = spectrum_with_stats(&g);
            let mut header = String::from("node_label");
            for t in spec.t_values() {
                header.push_str(&format!(",t={t}"));
            }
            writeln!(out, "{header}")?;
            for v in 0..g.node_count() {
                let mut line = g.label(v).to_owned();
                for t in spec.t_values() {
                    line.push_str(&format!(",{}", spec.rank(t, v)));
                }
                writeln!(out, "{line}")?;
            }
            if let Some(path) = sidecar {
                write_sidecar(&path, stats.decrements, stats.sweeps)?;
            }
        }
        Command::Bounds { input, girth } => {
            let g = input.load()?;
            let gv = girth.parse::<GirthMode>()?.resolve(&g)?;
            let (spec, _) = spectrum_with_stats(&g);
            let ctx = BoundContext::new(&spec, gv, Girth::Infinite)?;
            let set = PathBoundSet::compute(&ctx);
            writeln!(out, "node_label,L_e,L_m,L_e_hat,argmax_t_Le")?;
            for (v, b) in set.nodes.iter().enumerate() {
                let hat = b.le_hat.map(|a| a.value.to_string()).unwrap_or_default();
                writeln!(out, "{},{},{},{},{}", g.label(v), b.le.value, b.lm.value, hat, b.le.t)?;
            }
        }
        Command::Relay {
            input,
            source,
            algo,
            trials,
            seed,
            girth,
            containing,
        } => {
            let g = input.load()?;
            let v = node_by_label(&g, &source)?;
            let algorithm: Algorithm = algo.parse()?;
            if containing && algorithm != Algorithm::ChainRank {
                return Err(Error::Config("--containing requires --algo chainrank".into()));
            }
            if trials == 0 {
                return Err(Error::Config("trials must be at least 1".into()));
            }
            let gv = girth.parse::<GirthMode>()?.resolve(&g)?;
            let (spec, _) = spectrum_with_stats(&g);
            let mut master = ChaCha8Rng::seed_from_u64(seed);
            let mut lengths = Vec::with_capacity(trials);
            writeln!(out, "trial,length,path")?;
            for trial in 0..trials {
                let trial_seed = rand::Rng::gen(&mut master);
                let path = if containing {
                    relay_containing(&g, &spec, v, gv, TiePolicy::seeded(trial_seed))
                } else {
                    algorithm.run(&g, &spec, v, gv, trial_seed)
                };
                let labels: Vec<&str> = path.nodes.iter().map(|&u| g.label(u)).collect();
                writeln!(out, "{trial},{},{}", path.length(), labels.join(" "))?;
                lengths.push(path.length());
            }
            let mean = lengths.iter().sum::<usize>() as f64 / trials as f64;
            writeln!(out, "mean,max,min")?;
            writeln!(
                out,
                "{mean:.4},{},{}",
                lengths.iter().max().unwrap(),
                lengths.iter().min().unwrap()
            )?;
        }
        Command::Bench {
            input,
            config,
            sources,
            trials,
            algos,
            seed,
            girth,
            format,
            timing,
        } => {
            let file = match &config {
                Some(path) => parse_config_file(path)?,
                None => HashMap::new(),
            };
            let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
            let mut cfg = BenchConfig {
                graph_path: input.graph.clone(),
                ..Default::default()
            };
            if let Some(s) = pick(sources.map(|v| v.to_string()), "sources") {
                cfg.source_count = parse_value("sources", &s)?;
            }
            if let Some(s) = pick(trials.map(|v| v.to_string()), "trials") {
                cfg.trials_per_source = parse_value("trials", &s)?;
            }
            if let Some(s) = pick(algos, "algos") {
                cfg.algorithms = parse_algos(&s)?;
            }
            if let Some(s) = pick(seed.map(|v| v.to_string()), "seed") {
                cfg.master_seed = parse_value("seed", &s)?;
            }
            if let Some(s) = pick(girth, "girth") {
                cfg.girth_mode = s.parse()?;
            }
            if let Some(s) = pick(format, "format") {
                cfg.format = s.parse::<ReportFormat>()?;
            }
            cfg.record_timing = timing || file.get("timing").is_some_and(|v| v == "true");
            let report = if input.ignore_extra_columns {
                let g = input.load()?;
                crate::bench::run_bench_on(&g, &cfg)?
            } else {
                run_bench(&cfg)?
            };
            write!(out, "{}", emit_report(&report, cfg.format))?;
        }
        Command::Verify { small, graphs, seed } => {
            if !small {
                return Err(Error::Config("only `verify --small` is supported".into()));
            }
            let outcomes = run_checks(VerifyOptions { graphs, seed })?;
            let mut all = true;
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {} ({} cases)", o.name, o.cases)?;
                for f in &o.failures {
                    writeln!(out, "    {f}")?;
                }
                all &= o.passed();
            }
            return Ok(if all { 0 } else { 1 });
        }
    }
    Ok(0)
}
