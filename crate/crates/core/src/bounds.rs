//! Closed-form lower bounds on longest-path lengths derived from a
//! [`CoreSpectrum`].
//!
//! For `t <= -1` and a rank `z = C_t(v)`, write `a = |t|`, `z = r + a q` with
//! `0 <= r < a`, `pi_j = r + a j`, and let `xi` be the least `j >= 0` with
//! `pi_j >= 2`. The bounds are built from
//!
//! ```text
//! J_t(z, x) = min(q, max(-1, floor((q + x - 1 - (g-2)(r-1)) / (1 + a(g-2)))))
//! ```
//!
//! where `g` is the girth (or any admissible value not above it). The `t = 0`
//! terms are fixed conventions and never go through [`j_value`], since the
//! formulas divide by `|t|`.

use serde::Serialize;

use crate::chain::CoreSpectrum;
use crate::error::{Error, Result};
use crate::graph::{self, Girth, Graph};

/// Quotient, remainder and `xi` of a rank `z` with respect to `t <= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anatomy {
    pub q: i64,
    pub r: i64,
    pub xi: i64,
    step: i64,
}

impl Anatomy {
    /// `pi_{t,j}(z) = r + |t| j`.
    pub fn pi(&self, j: i64) -> i64 {
        self.r + self.step * j
    }
}

pub fn anatomy(z: i64, t: i64) -> Result<Anatomy> {
    if t >= 0 {
        return Err(Error::Domain(format!("anatomy needs t <= -1, got t = {t}")));
    }
    if z < 0 {
        return Err(Error::Domain(format!("anatomy needs z >= 0, got z = {z}")));
    }
    Ok(anatomy_unchecked(z, t))
}

fn anatomy_unchecked(z: i64, t: i64) -> Anatomy {
    let step = -t;
    let (q, r) = (z / step, z % step);
    let xi = if r >= 2 { 0 } else { (2 - r + step - 1) / step };
    Anatomy { q, r, xi, step }
}

/// `J_t(z, x)`; always in `[-1, q_t(z)]`.
pub fn j_value(z: i64, x: i64, t: i64, g: u32) -> i64 {
    debug_assert!(t <= -1 && z >= 0 && g >= 3);
    let a = anatomy_unchecked(z, t);
    let g2 = i64::from(g) - 2;
    let numerator = a.q + x - 1 - g2 * (a.r - 1);
    let denominator = 1 + a.step * g2;
    a.q.min((-1i64).max(numerator.div_euclid(denominator)))
}

/// How the girth value used in the formulas is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirthMode {
    /// Exact girth; forests fall back to 3.
    Exact,
    /// A fixed value, which must be at least 3 and not above the exact girth.
    Fixed(u32),
}

impl std::str::FromStr for GirthMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(GirthMode::Exact),
            _ => s
                .parse::<u32>()
                .map(GirthMode::Fixed)
                .map_err(|_| Error::Config(format!("girth must be 'exact' or an integer, got {s:?}"))),
        }
    }
}

impl GirthMode {
    /// Resolves the mode to the value used in the formulas, computing the
    /// exact girth when needed for the mode or its validation.
    pub fn resolve(self, g: &Graph) -> Result<u32> {
        match self {
            GirthMode::Exact => Ok(graph::girth(g).finite().unwrap_or(3)),
            GirthMode::Fixed(3) => Ok(3),
            GirthMode::Fixed(value) => check_girth(value, graph::girth(g)),
        }
    }
}

fn check_girth(value: u32, exact: Girth) -> Result<u32> {
    if value < 3 {
        return Err(Error::Config(format!("girth must be at least 3, got {value}")));
    }
    match exact {
        Girth::Finite(e) if value > e => Err(Error::GirthTooLarge {
            requested: value,
            exact: e,
        }),
        _ => Ok(value),
    }
}

/// A spectrum together with the girth value used by the formulas.
#[derive(Debug, Clone, Copy)]
pub struct BoundContext<'a> {
    spectrum: &'a CoreSpectrum,
    girth: u32,
}

impl<'a> BoundContext<'a> {
    /// `girth` must be at least 3 and, if `exact` is finite, at most `exact`.
    pub fn new(spectrum: &'a CoreSpectrum, girth: u32, exact: Girth) -> Result<Self> {
        Ok(BoundContext {
            spectrum,
            girth: check_girth(girth, exact)?,
        })
    }

    pub fn spectrum(&self) -> &'a CoreSpectrum {
        self.spectrum
    }

    pub fn girth(&self) -> u32 {
        self.girth
    }

    fn profile(&self, v: usize) -> impl Fn(i64) -> u32 + 'a {
        let spectrum = self.spectrum;
        move |t| spectrum.rank(t, v)
    }
}

/// A maximum together with the largest `t` attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Attained {
    pub value: i64,
    pub t: i64,
}

fn best_of(terms: impl Iterator<Item = (i64, i64)>) -> Option<Attained> {
    let mut best: Option<Attained> = None;
    for (t, value) in terms {
        if best.is_none_or(|b| value >= b.value) {
            best = Some(Attained { value, t });
        }
    }
    best
}

/// `(g - 2)(C_0 - 1) + 1`, the `t = 0` term shared by `L_e` and `L_m`.
fn zero_term(c0: u32, g: u32) -> i64 {
    (i64::from(g) - 2) * (i64::from(c0) - 1) + 1
}

fn le_term(z: u32, t: i64, g: u32) -> i64 {
    let z = i64::from(z);
    anatomy_unchecked(z, t).q - j_value(z, 0, t, g)
}

fn lm_term(z: u32, t: i64, g: u32) -> i64 {
    let z = i64::from(z);
    let q = anatomy_unchecked(z, t).q;
    let j = j_value(z, 0, t, g);
    let j_prime = j_value(z, q - j, t, g);
    2 * q - j - j_prime
}

fn le_hat_term(z: u32, t: i64, g: u32) -> Option<i64> {
    let z = i64::from(z);
    let a = anatomy_unchecked(z, t);
    let q = a.q;
    let j = j_value(z, 0, t, g);
    if j - a.xi < 0 {
        return None;
    }
    let g2 = i64::from(g) - 2;
    let inner = (0..=j - a.xi)
        .map(|k| {
            let x = q - j + k - g2 * (a.pi(j - k) - 1);
            let z_inner = a.pi(q - x + 1).max(0);
            k - x - j_value(z_inner, q - j + k, t, g)
        })
        .min()
        .expect("range is nonempty");
    Some(2 * q - j + inner)
}

fn le_with(lambda: u32, g: u32, rank_at: impl Fn(i64) -> u32) -> Attained {
    let terms = (-i64::from(lambda)..=-1)
        .map(|t| (t, le_term(rank_at(t), t, g)))
        .chain(std::iter::once((0, zero_term(rank_at(0), g))));
    best_of(terms).expect("t = 0 always contributes")
}

fn lm_with(lambda: u32, g: u32, rank_at: impl Fn(i64) -> u32) -> Attained {
    let terms = (-i64::from(lambda)..=-1)
        .map(|t| (t, lm_term(rank_at(t), t, g)))
        .chain(std::iter::once((0, zero_term(rank_at(0), g))));
    best_of(terms).expect("t = 0 always contributes")
}

fn le_hat_with(lambda: u32, g: u32, rank_at: impl Fn(i64) -> u32) -> Option<Attained> {
    best_of((-i64::from(lambda)..=-1).filter_map(|t| le_hat_term(rank_at(t), t, g).map(|v| (t, v))))
}

/// Terms of `L_end(v, x)` for every `t` in `[-lambda, 0]`, in increasing `t`.
pub(crate) fn l_end_terms(
    lambda: u32,
    g: u32,
    x: i64,
    rank_at: impl Fn(i64) -> u32,
) -> impl Iterator<Item = (i64, i64)> {
    (-i64::from(lambda)..=0).map(move |t| {
        let z = rank_at(t);
        let raw = if t == 0 {
            i64::from(z) - x
        } else {
            let zi = i64::from(z);
            anatomy_unchecked(zi, t).q - j_value(zi, x, t, g)
        };
        (t, raw.max(0))
    })
}

pub(crate) fn a_end_with(lambda: u32, g: u32, x: i64, rank_at: impl Fn(i64) -> u32) -> (i64, Vec<i64>) {
    let terms: Vec<(i64, i64)> = l_end_terms(lambda, g, x, rank_at).collect();
    let best = terms.iter().map(|&(_, v)| v).max().expect("t = 0 always contributes");
    let ts = terms.into_iter().filter(|&(_, v)| v == best).map(|(t, _)| t).collect();
    (best, ts)
}

/// `L_e(v)`: some path with terminal `v` has at least this length.
pub fn bound_le(ctx: &BoundContext, v: usize) -> i64 {
    le_attained(ctx, v).value
}

pub fn le_attained(ctx: &BoundContext, v: usize) -> Attained {
    le_with(ctx.spectrum.lambda(), ctx.girth, ctx.profile(v))
}

/// `L_m(v)`: some path containing `v` has at least this length.
pub fn bound_lm(ctx: &BoundContext, v: usize) -> i64 {
    lm_with(ctx.spectrum.lambda(), ctx.girth, ctx.profile(v)).value
}

/// Refined terminal bound `L^_e(v)` over `t` in `[-lambda, -1]`; `None` when
/// no `t` satisfies `J_t(v) >= xi_t(v)`.
pub fn bound_le_hat(ctx: &BoundContext, v: usize) -> Option<i64> {
    le_hat_with(ctx.spectrum.lambda(), ctx.girth, ctx.profile(v)).map(|a| a.value)
}

/// Remaining extension potential `L_end(v, x)` after `x` consumed nodes.
pub fn l_end(ctx: &BoundContext, v: usize, x: u64) -> i64 {
    a_end_with(ctx.spectrum.lambda(), ctx.girth, x as i64, ctx.profile(v)).0
}

/// All `t` attaining `L_end(v, x)`, ascending.
pub fn a_end(ctx: &BoundContext, v: usize, x: u64) -> Vec<i64> {
    a_end_with(ctx.spectrum.lambda(), ctx.girth, x as i64, ctx.profile(v)).1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodeBounds {
    pub le: Attained,
    pub lm: Attained,
    pub le_hat: Option<Attained>,
}

/// Bounds for every node.
#[derive(Debug, Clone, Serialize)]
pub struct PathBoundSet {
    pub girth: u32,
    pub nodes: Vec<NodeBounds>,
}

impl PathBoundSet {
    pub fn compute(ctx: &BoundContext) -> Self {
        let lambda = ctx.spectrum.lambda();
        let g = ctx.girth;
        let nodes = (0..ctx.spectrum.node_count())
            .map(|v| NodeBounds {
                le: le_with(lambda, g, ctx.profile(v)),
                lm: lm_with(lambda, g, ctx.profile(v)),
                le_hat: le_hat_with(lambda, g, ctx.profile(v)),
            })
            .collect();
        PathBoundSet { girth: g, nodes }
    }

    pub fn max_le(&self) -> i64 {
        self.nodes.iter().map(|b| b.le.value).max().unwrap_or(0)
    }

    pub fn max_lm(&self) -> i64 {
        self.nodes.iter().map(|b| b.lm.value).max().unwrap_or(0)
    }

    pub fn max_le_hat(&self) -> Option<i64> {
        self.nodes.iter().filter_map(|b| b.le_hat.map(|a| a.value)).max()
    }
}

/// Textbook path-length guarantees used for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalBounds {
    /// Largest `k` with `|E| > n (k - 1) / 2`; such a graph contains a path
    /// of length `k`.
    pub erdos_gallai: u64,
    /// Minimum degree; every graph contains a path of that length.
    pub min_degree: u64,
}

pub fn classical_bounds(g: &Graph) -> ClassicalBounds {
    let n = g.node_count() as u64;
    let twice_edges = 2 * g.edge_count() as u64;
    ClassicalBounds {
        // n (k - 1) < 2|E|  <=>  k - 1 <= floor((2|E| - 1) / n)
        erdos_gallai: (twice_edges - 1) / n + 1,
        min_degree: u64::from(g.min_degree()),
    }
}
