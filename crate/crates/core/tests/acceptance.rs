//! Acceptance suite. Each criterion prints one PASS/FAIL/SKIP line; the
//! process exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepchain::bench::{emit_csv, emit_json, run_bench_on, BenchConfig};
use sepchain::bounds::{bound_le, bound_le_hat, bound_lm, classical_bounds, BoundContext, GirthMode, PathBoundSet};
use sepchain::chain::{
    decompose, decompose_with_stats, fixed_point, spectrum, spectrum_with_stats, ParamVectors, RankVector, Schedule,
};
use sepchain::datasets::{load_graph_file, REFERENCE_NETWORKS};
use sepchain::generate;
use sepchain::graph::{girth, stats, Girth, Graph, ParseOptions};
use sepchain::oracle::{brute_max_chain, kcore_peeling, longest_path_table, OracleLimits};
use sepchain::relay::Algorithm;
use sepchain::verify::random_params;

type Criterion = (&'static str, fn() -> Verdict);

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn timed(limit: Duration, start: Instant, detail: String, ok: bool) -> Verdict {
    let elapsed = start.elapsed();
    let detail = format!("{detail}; {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs());
    if ok && elapsed < limit {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn er_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(5..=40);
        let p = [0.1, 0.3, 0.5][rng.gen_range(0..3)];
        if let Ok(g) = generate::erdos_renyi(n, p, rng.gen()) {
            out.push(g);
        }
    }
    out
}

fn kcore_equivalence() -> Verdict {
    let start = Instant::now();
    let graphs = er_graphs(200, 1);
    let bad = graphs
        .iter()
        .filter(|g| spectrum(g).row(0) != &kcore_peeling(g))
        .count();
    timed(
        Duration::from_secs(10),
        start,
        format!("{bad}/200 mismatches"),
        bad == 0,
    )
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let limits = OracleLimits::default();
    let (mut cases, mut bad) = (0, 0);
    let mut graphs = 0;
    while graphs < 500 {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.15..0.9);
        let Ok(g) = generate::erdos_renyi(n, p, rng.gen()) else {
            continue;
        };
        graphs += 1;
        for _ in 0..5 {
            let params = random_params(&g, &mut rng);
            cases += 1;
            let fast = decompose(&g, &params).expect("feasible");
            let brute = brute_max_chain(&g, &params, &limits).expect("within limits");
            if fast != brute {
                bad += 1;
                if bad <= 3 {
                    eprintln!("  mismatch: {:?} vs {:?}", fast.0, brute.0);
                }
            }
        }
    }
    timed(
        Duration::from_secs(120),
        start,
        format!("{bad}/{cases} mismatches over 500 graphs"),
        bad == 0,
    )
}

fn schedule_graphs() -> Vec<Graph> {
    let mut graphs = er_graphs(40, 3);
    for seed in 0..10 {
        graphs.push(generate::barabasi_albert(
            60 + 10 * seed as usize,
            1 + seed as usize % 3,
            seed,
        ));
    }
    graphs
}

fn schedule_invariance() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    for g in schedule_graphs() {
        let params = random_params(&g, &mut rng);
        let d = RankVector::degrees(&g);
        let reference = decompose(&g, &params).unwrap();
        for seed in 0..3u64 {
            for schedule in [
                Schedule::RoundRobin,
                Schedule::RandomPermutation { seed: seed * 7919 + 1 },
                Schedule::Worklist,
            ] {
                if fixed_point(&g, &params, &d, schedule).unwrap().ranks != reference {
                    bad += 1;
                }
            }
        }
        let warm = spectrum(&g);
        for t in warm.t_values() {
            if &decompose(&g, &ParamVectors::degenerate(&g, t)).unwrap() != warm.row(t) {
                bad += 1;
            }
        }
    }
    timed(
        Duration::from_secs(60),
        start,
        format!("{bad} disagreements over 50 graphs"),
        bad == 0,
    )
}

fn endpoints_and_monotonicity() -> Verdict {
    let start = Instant::now();
    let mut bad = 0;
    let mut graphs = schedule_graphs();
    graphs.extend(er_graphs(100, 5));
    for g in &graphs {
        let s = spectrum(g);
        let d = RankVector::degrees(g);
        let ok = s.row(s.t_min()) == &d
            && s.rows().windows(2).all(|w| w[1].le(&w[0]))
            && decompose(g, &ParamVectors::degenerate(g, s.t_min() - 1)).unwrap() == d;
        bad += usize::from(!ok);
    }
    timed(
        Duration::from_secs(60),
        start,
        format!("{bad}/{} graphs violate", graphs.len()),
        bad == 0,
    )
}

fn bound_soundness() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let limits = OracleLimits::default();
    let (mut checks, mut bad) = (0usize, 0usize);
    let (mut hat_present, mut hat_above_le) = (0usize, 0usize);
    for _ in 0..300 {
        let n = rng.gen_range(2..=14);
        let p = rng.gen_range(0.0..0.45);
        let g = generate::connected_random(n, p, rng.gen());
        let spec = spectrum(&g);
        let (from, through) = longest_path_table(&g, &limits).unwrap();
        let exact = girth(&g);
        let mut girths = vec![3];
        if let Some(e) = exact.finite().filter(|&e| e > 3) {
            girths.push(e);
        }
        for gv in girths {
            let ctx = BoundContext::new(&spec, gv, exact).unwrap();
            for v in 0..g.node_count() {
                checks += 1;
                let le = bound_le(&ctx, v);
                let lm = bound_lm(&ctx, v);
                let hat = bound_le_hat(&ctx, v);
                if let Some(h) = hat {
                    hat_present += 1;
                    hat_above_le += usize::from(h > le);
                }
                let ok = le <= from[v] as i64 && lm <= through[v] as i64 && hat.is_none_or(|h| h <= from[v] as i64);
                if !ok {
                    bad += 1;
                    if bad <= 3 {
                        eprintln!(
                            "  violation g={gv} v={v}: Le={le} Lm={lm} Lhat={hat:?} from={} through={} edges={}",
                            from[v],
                            through[v],
                            g.to_edge_list().replace('\n', ";")
                        );
                    }
                }
            }
        }
    }
    let detail =
        format!("{bad} violations in {checks} node checks (L_e_hat present {hat_present}x, above L_e {hat_above_le}x)");
    timed(Duration::from_secs(300), start, detail, bad == 0)
}

fn tight_cases() -> Verdict {
    let limits = OracleLimits::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, g, gv, expect) in [("K4", generate::complete(4), 3, 3i64), ("C5", generate::cycle(5), 5, 4)] {
        let spec = spectrum(&g);
        let ctx = BoundContext::new(&spec, gv, girth(&g)).unwrap();
        let (from, through) = longest_path_table(&g, &limits).unwrap();
        for v in 0..g.node_count() {
            let le = bound_le(&ctx, v);
            let lm = bound_lm(&ctx, v);
            ok &= le == expect && lm == expect && from[v] as i64 == expect && through[v] as i64 == expect;
        }
        notes.push(format!("{name}: L_e = L_m = {expect}"));
    }
    if ok {
        Verdict::Pass(notes.join(", "))
    } else {
        Verdict::Fail(notes.join(", "))
    }
}

fn step_count_bound() -> Verdict {
    let mut bad = 0;
    let mut graphs = schedule_graphs();
    graphs.extend(er_graphs(100, 7));
    for g in &graphs {
        let fp = decompose_with_stats(g, &ParamVectors::degenerate(g, 0)).unwrap();
        let (_, spec_stats) = spectrum_with_stats(g);
        if fp.stats.decrements > g.sum_degrees() || spec_stats.decrements > g.sum_degrees() {
            bad += 1;
        }
    }
    let g = generate::sparse_power_law(5000, 6300, 8);
    let start = Instant::now();
    let (spec, st) = spectrum_with_stats(&g);
    let within = st.decrements <= g.sum_degrees();
    let detail = format!(
        "{bad}/{} small graphs over budget; n=5000 m={} lambda={} decrements={} <= {}",
        graphs.len(),
        g.edge_count(),
        spec.lambda(),
        st.decrements,
        g.sum_degrees()
    );
    timed(Duration::from_secs(60), start, detail, bad == 0 && within)
}

fn table_reproduction() -> Verdict {
    let mut present = Vec::new();
    let mut failures = Vec::new();
    for r in REFERENCE_NETWORKS {
        if !r.is_present() {
            continue;
        }
        present.push(r.name);
        let opts = ParseOptions {
            ignore_extra_columns: true,
            ..Default::default()
        };
        let g = match load_graph_file(&r.path(), &opts) {
            Ok(g) => g,
            Err(e) => {
                failures.push(format!("{}: {e}", r.name));
                continue;
            }
        };
        let s = stats(&g);
        let avg = s.avg_degree.as_f64();
        let ok = s.n == r.n
            && s.edge_count == r.edges
            && s.k_max == r.k_max
            && (avg - r.avg_degree).abs() <= r.avg_tolerance
            && s.lambda == r.lambda;
        if !ok {
            failures.push(format!(
                "{}: n={} edges={} k_max={} avg={avg:.4} lambda={}",
                r.name, s.n, s.edge_count, s.k_max, s.lambda
            ));
        }
    }
    if present.is_empty() {
        Verdict::Skip("no reference datasets under the data directory".into())
    } else if failures.is_empty() {
        Verdict::Pass(format!("matched {}", present.join(", ")))
    } else {
        Verdict::Fail(failures.join("; "))
    }
}

fn ba_config() -> BenchConfig {
    BenchConfig {
        source_count: 30,
        trials_per_source: 200,
        algorithms: Algorithm::ALL.to_vec(),
        master_seed: 2025,
        girth_mode: GirthMode::Fixed(3),
        ..Default::default()
    }
}

fn figure_direction() -> Verdict {
    let start = Instant::now();
    let g = generate::barabasi_albert(1000, 3, 11);
    let report = run_bench_on(&g, &ba_config()).unwrap();
    let gain = report.aggregate_gain(Algorithm::ChainRank);
    let chain = report.aggregate_mean(Algorithm::ChainRank);
    let zero = report.aggregate_mean(Algorithm::ZeroCore);
    let detail = format!(
        "gain(chainrank)={gain:.4}, mean chainrank={chain:.2} zerocore={zero:.2} maxdeg={:.2} random={:.2}",
        report.aggregate_mean(Algorithm::MaxDeg),
        report.aggregate_mean(Algorithm::Random)
    );
    timed(
        Duration::from_secs(120),
        start,
        detail,
        gain > 0.0 && chain >= zero * 0.99,
    )
}

fn classical_comparison() -> Verdict {
    let g = generate::barabasi_albert(1000, 3, 11);
    let cfg = BenchConfig {
        source_count: 5,
        trials_per_source: 2,
        ..ba_config()
    };
    let report = run_bench_on(&g, &cfg).unwrap();
    let json = emit_json(&report);
    let csv = emit_csv(&report);
    let spec = spectrum(&g);
    let ctx = BoundContext::new(&spec, 3, Girth::Infinite).unwrap();
    let set = PathBoundSet::compute(&ctx);
    let classical = classical_bounds(&g);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let cmp = &value["comparison"];
    let consistent = cmp["max_le"] == set.max_le()
        && cmp["max_lm"] == set.max_lm()
        && cmp["classical"]["erdos_gallai"] == classical.erdos_gallai
        && cmp["classical"]["min_degree"] == u64::from(g.min_degree())
        && classical.erdos_gallai == (2 * g.edge_count() as u64 - 1) / g.node_count() as u64 + 1
        && !csv.is_empty();
    let detail = format!(
        "max L_e={} max L_m={} max L_e_hat={:?} erdos_gallai={} min_degree={}",
        set.max_le(),
        set.max_lm(),
        set.max_le_hat(),
        classical.erdos_gallai,
        classical.min_degree
    );
    if consistent {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("k-core equivalence", kcore_equivalence),
        ("oracle equivalence (general [t,p])", oracle_equivalence),
        ("schedule invariance and warm starts", schedule_invariance),
        ("spectrum endpoints and monotonicity", endpoints_and_monotonicity),
        ("bound soundness", bound_soundness),
        ("tight cases", tight_cases),
        ("step-count bound", step_count_bound),
        ("reference network statistics", table_reproduction),
        ("relay gain direction", figure_direction),
        ("classical bound comparison", classical_comparison),
    ];
    let verdicts: Vec<Verdict> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().map(|&(_, f)| scope.spawn(f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Verdict::Fail("panicked".into())))
            .collect()
    });
    let mut failed = 0;
    for ((name, _), verdict) in criteria.iter().zip(verdicts) {
        match verdict {
            Verdict::Pass(d) => println!("PASS  {name}: {d}"),
            Verdict::Skip(d) => println!("SKIP  {name}: {d}"),
            Verdict::Fail(d) => {
                failed += 1;
                println!("FAIL  {name}: {d}");
            }
        }
    }
    println!("acceptance: {} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
