//! Cross-checks of the engine, the bounds and the relay against the
//! brute-force oracles on small generated graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bound_le, bound_le_hat, bound_lm, BoundContext};
use crate::chain::{decompose, fixed_point, spectrum, verify_chain, ParamVectors, RankVector, Schedule};
use crate::error::Result;
use crate::generate;
use crate::graph::{girth, Graph};
use crate::oracle::{brute_max_chain, kcore_peeling, longest_path_table, OracleLimits};
use crate::relay::{relay_containing, relay_start, TMode, TiePolicy};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub graphs: usize,
    pub seed: u64,
}

impl VerifyOptions {
    pub fn small() -> Self {
        VerifyOptions { graphs: 60, seed: 2024 }
    }
}

/// Random feasible parameters with entries in `[-3, 3]`.
pub fn random_params<R: Rng>(g: &Graph, rng: &mut R) -> ParamVectors {
    let n = g.node_count();
    let t = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let p = (0..n)
        .map(|v| rng.gen_range(-3..=3i64.min(i64::from(g.degree(v)))))
        .collect();
    ParamVectors::new(t, p)
}

fn small_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p = [0.2, 0.35, 0.5, 0.7][rng.gen_range(0..4)];
        if let Ok(g) = generate::erdos_renyi(n, p, rng.gen()) {
            return g;
        }
    }
}

struct Check {
    outcome: CheckOutcome,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            outcome: CheckOutcome {
                name,
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.outcome.cases += 1;
        if !ok && self.outcome.failures.len() < 10 {
            self.outcome.failures.push(detail());
        }
    }
}

pub fn run_checks(opts: VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let limits = OracleLimits::default();

    let mut oracle = Check::new("decompose equals brute-force maximal chain");
    let mut maximal = Check::new("brute-force chain is valid and locally maximal");
    let mut fixed = Check::new("decompose output is a fixed point");
    let mut kcore = Check::new("spectrum row t=0 equals k-core peeling");
    let mut schedules = Check::new("schedule invariance");
    let mut warm = Check::new("warm-start spectrum equals cold starts");
    let mut ends = Check::new("spectrum endpoints and monotonicity");
    let mut steps = Check::new("decrements bounded by degree sum");
    let mut sound = Check::new("path bounds are below exact longest paths");
    let mut relay = Check::new("relay paths are simple and within oracle length");

    for _ in 0..opts.graphs {
        let g = small_graph(&mut rng, 7);
        let params = random_params(&g, &mut rng);
        let z = decompose(&g, &params)?;
        let brute = brute_max_chain(&g, &params, &limits)?;
        oracle.case(z == brute, || {
            format!("{:?} vs {:?} on {}", z.0, brute.0, g.to_edge_list().replace('\n', ";"))
        });
        let valid = verify_chain(&g, &params, &brute)?;
        let local_max = (0..g.node_count()).all(|v| {
            let mut bumped = brute.clone();
            bumped.0[v] += 1;
            !verify_chain(&g, &params, &bumped).unwrap_or(true)
        });
        maximal.case(valid && local_max, || format!("{:?}", brute.0));
        let is_fixed =
            (0..g.node_count()).all(|v| crate::chain::local_update(&g, v, &z, params.t[v], params.p[v]) == z[v]);
        fixed.case(is_fixed, || format!("{:?}", z.0));

        let d = RankVector::degrees(&g);
        let agree = [Schedule::Worklist, Schedule::RandomPermutation { seed: rng.gen() }]
            .into_iter()
            .all(|s| fixed_point(&g, &params, &d, s).map(|fp| fp.ranks == z).unwrap_or(false));
        schedules.case(agree, || format!("{:?}", z.0));
    }

    for _ in 0..opts.graphs {
        let n = rng.gen_range(5..=40);
        let p = [0.1, 0.3, 0.5][rng.gen_range(0..3)];
        let Ok(g) = generate::erdos_renyi(n, p, rng.gen()) else {
            continue;
        };
        let spec = spectrum(&g);
        kcore.case(spec.row(0) == &kcore_peeling(&g), || g.to_edge_list());
        let cold_ok = spec.t_values().all(|t| {
            decompose(&g, &ParamVectors::degenerate(&g, t))
                .map(|r| &r == spec.row(t))
                .unwrap_or(false)
        });
        warm.case(cold_ok, || g.to_edge_list());
        let d = RankVector::degrees(&g);
        let monotone = spec.rows().windows(2).all(|w| w[1].le(&w[0]));
        let beyond = decompose(&g, &ParamVectors::degenerate(&g, spec.t_min() - 1))?;
        ends.case(spec.rows()[0] == d && monotone && beyond == d, || g.to_edge_list());
        let fp = fixed_point(&g, &ParamVectors::degenerate(&g, 0), &d, Schedule::RoundRobin)?;
        steps.case(
            fp.stats.decrements <= g.sum_degrees() && fp.stats.increments == 0,
            || format!("{:?}", fp.stats),
        );
    }

    for _ in 0..opts.graphs {
        let n = rng.gen_range(2..=11);
        let g = generate::connected_random(n, rng.gen_range(0.0..0.5), rng.gen());
        let spec = spectrum(&g);
        let (from, through) = longest_path_table(&g, &limits)?;
        let exact = girth(&g);
        let mut girths = vec![3];
        if let Some(e) = exact.finite() {
            if e > 3 {
                girths.push(e);
            }
        }
        for &gv in &girths {
            let ctx = BoundContext::new(&spec, gv, exact)?;
            for v in 0..g.node_count() {
                let le = bound_le(&ctx, v);
                let lm = bound_lm(&ctx, v);
                let hat = bound_le_hat(&ctx, v);
                let ok = le <= from[v] as i64 && lm <= through[v] as i64 && hat.is_none_or(|h| h <= from[v] as i64);
                sound.case(ok, || {
                    format!(
                        "g={gv} v={v}: Le={le} Lm={lm} Lhat={hat:?} from={} through={}",
                        from[v], through[v]
                    )
                });
            }
        }
        for v in 0..g.node_count() {
            let seed = rng.gen();
            let a = relay_start(&g, &spec, v, 3, TiePolicy::seeded(seed), TMode::Full);
            let b = relay_containing(&g, &spec, v, 3, TiePolicy::seeded(seed));
            let ok = a.is_simple_path(&g)
                && b.is_simple_path(&g)
                && b.nodes.contains(&v)
                && a.length() <= from[v]
                && b.length() <= through[v];
            relay.case(ok, || format!("v={v}: {:?} {:?}", a.nodes, b.nodes));
        }
    }

    Ok([
        oracle, maximal, fixed, kcore, schedules, warm, ends, steps, sound, relay,
    ]
    .into_iter()
    .map(|c| c.outcome)
    .collect())
}
