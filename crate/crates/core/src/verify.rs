//! Batch checks of the painting guarantees on random and exhaustive
//! instances. Trials run in parallel; each trial draws from its own stream
//! ([`trial_rng`]) and results are merged in trial order, so a report depends
//! only on its configuration.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{
    coloring_from_trace, kappa_game, play_game, verify_coloring, verify_ranked_coloring, EngineConfig, GameTrace,
    Winner,
};
use crate::graph::{complete_graph, directed_cycle, UndirectedView, Vertex, WeightedDigraph};
use crate::kernel::{brute_force_kernels, kernel_condition_holds, select_kernel, RankFunction};
use crate::lister::{CliqueLister, GreedyLister, ListAssignment, ListLister, Lister, RandomLister};
use crate::oracle::{
    is_majority_colorable, lister_wins_against_all, nonisomorphic_digraphs, painter_wins_kappa_game, solve_kappa_game,
    witness_holds, SolveConfig, DEFAULT_ENUMERATION_BOUND,
};
use crate::painter::{GeneralPainter, Painter, UndirectedPainter};
use crate::random::{
    random_digraph, random_lists, random_multi_scc, random_ranked_lists, random_strongly_connected, random_undirected,
    trial_rng,
};
use crate::scalar::{Rational, Scalar};
use crate::spectral::{left_eigenvector, symmetrized_graph};

/// How many failing trials a report spells out.
pub const MAX_LISTED_FAILURES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// Kernels exist and the selected one is a kernel of maximum cost.
    Kernel,
    /// Undirected graphs, budget one.
    Undirected,
    /// Symmetrization identity on strongly connected digraphs.
    Spectral,
    /// Digraphs, budget two.
    Directed,
    /// `2k`-lists, tolerance `1/k`, `k = 2`.
    ListsK2,
    /// `2k`-lists, tolerance `1/k`, `k = 3`.
    ListsK3,
    /// Undirected graphs, 2-lists, tolerance one half.
    TwoLists,
    /// Ranked lists on undirected graphs.
    Ranked,
    /// Kappa games against exhaustive Lister play.
    Paint,
    /// Small negative results.
    LowerBounds,
    /// Oracle against the general Painter on every digraph up to 4 vertices.
    CrossCheck,
}

impl Claim {
    pub const ALL: [Claim; 11] = [
        Claim::Kernel,
        Claim::Undirected,
        Claim::Spectral,
        Claim::Directed,
        Claim::ListsK2,
        Claim::ListsK3,
        Claim::TwoLists,
        Claim::Ranked,
        Claim::Paint,
        Claim::LowerBounds,
        Claim::CrossCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Kernel => "kernel",
            Claim::Undirected => "thm1",
            Claim::Spectral => "spectral",
            Claim::Directed => "thm2",
            Claim::ListsK2 => "lists-k2",
            Claim::ListsK3 => "lists-k3",
            Claim::TwoLists => "two-lists",
            Claim::Ranked => "ranked",
            Claim::Paint => "paint",
            Claim::LowerBounds => "lower-bounds",
            Claim::CrossCheck => "cross-check",
        }
    }

    /// `(trials, max_n)` used when the caller does not choose.
    pub fn defaults(self) -> (usize, usize) {
        match self {
            Claim::Kernel => (500, 14),
            Claim::Undirected => (1000, 12),
            Claim::Spectral => (200, 30),
            Claim::Directed => (1000, 12),
            Claim::ListsK2 | Claim::ListsK3 => (200, 10),
            Claim::TwoLists => (200, 12),
            Claim::Ranked => (100, 12),
            Claim::Paint => (100, 4),
            Claim::LowerBounds => (1, 3),
            Claim::CrossCheck => (1, 4),
        }
    }

    fn checks(self) -> &'static [&'static str] {
        match self {
            Claim::Kernel => &["kernel_condition", "maximum_cost", "kernel_exists"],
            Claim::Undirected | Claim::Directed => &["painter_wins", "coloring_ok"],
            Claim::Spectral => &["residual", "identity"],
            Claim::ListsK2 | Claim::ListsK3 | Claim::TwoLists => &["painter_wins", "respects_lists", "coloring_ok"],
            Claim::Ranked => &["painter_wins", "respects_lists", "ranked_ok"],
            Claim::Paint => &["nonuniform_directed", "k_paintable_undirected"],
            Claim::LowerBounds => &[
                "k2_not_1_colorable",
                "k3_not_2_colorable",
                "triangle_not_2_colorable",
                "k2_kappa1_lister",
                "triangle_kappa2_lister",
                "clique_lister_k2",
                "clique_lister_k3",
            ],
            Claim::CrossCheck => &["oracle_painter", "general_painter"],
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown claim {0:?}")]
pub struct UnknownClaim(pub String);

impl FromStr for Claim {
    type Err = UnknownClaim;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub claim: Claim,
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub engine: EngineConfig,
}

impl VerifyConfig {
    pub fn new(claim: Claim, seed: u64) -> Self {
        let (trials, max_n) = claim.defaults();
        Self {
            claim,
            seed,
            trials,
            max_n,
            engine: EngineConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: Claim,
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub checks: Vec<CheckTally>,
    /// Failure notes in trial order, truncated to [`MAX_LISTED_FAILURES`].
    pub failures: Vec<String>,
    pub violations: usize,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checks.iter().all(|c| c.passed == c.total)
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim: {}", self.claim)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "max_n: {}", self.max_n)?;
        for c in &self.checks {
            writeln!(f, "{}: {}/{}", c.name, c.passed, c.total)?;
        }
        writeln!(f, "violations: {}", self.violations)?;
        for note in &self.failures {
            writeln!(f, "failure: {note}")?;
        }
        writeln!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// One trial's verdicts, aligned with the claim's check names. `None` means
/// the check did not apply.
struct Outcome {
    verdicts: Vec<Option<bool>>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(width: usize) -> Self {
        Self {
            verdicts: vec![None; width],
            notes: Vec::new(),
        }
    }

    fn record(&mut self, check: usize, ok: bool, note: impl FnOnce() -> String) {
        self.verdicts[check] = Some(ok);
        if !ok {
            self.notes.push(note());
        }
    }
}

pub fn run_claim(config: &VerifyConfig) -> ClaimReport {
    let claim = config.claim;
    let width = claim.checks().len();
    let outcomes: Vec<Outcome> = match claim {
        Claim::LowerBounds => vec![lower_bounds(width)],
        Claim::CrossCheck => cross_check(width, config.max_n.min(4)),
        _ => (0..config.trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(config.seed, t);
                let mut out = Outcome::new(width);
                run_trial(config, &mut rng, &mut out);
                out
            })
            .collect(),
    };
    let checks = claim
        .checks()
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let applied = outcomes.iter().filter_map(|o| o.verdicts[i]);
            let (passed, total) = applied.fold((0, 0), |(p, t), ok| (p + ok as usize, t + 1));
            CheckTally { name, passed, total }
        })
        .collect();
    let mut violations = 0;
    let mut failures = Vec::new();
    for (t, o) in outcomes.iter().enumerate() {
        violations += o.notes.len();
        for note in &o.notes {
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(format!("trial {t}: {note}"));
            }
        }
    }
    let trials = match claim {
        Claim::LowerBounds => 1,
        _ => outcomes.len(),
    };
    ClaimReport {
        claim,
        seed: config.seed,
        trials,
        max_n: config.max_n,
        checks,
        failures,
        violations,
    }
}

fn run_trial(config: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut Outcome) {
    let max_n = config.max_n.max(1);
    match config.claim {
        Claim::Kernel => kernel_trial(rng, max_n, out),
        Claim::Undirected => {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.2..0.8);
            let g = random_undirected::<Rational>(rng, n, p, 10);
            let painter = UndirectedPainter::new(g.clone()).expect("symmetric");
            budget_game(config, rng, &g, Rational::one(), painter, out);
        }
        Claim::Spectral => spectral_trial(rng, max_n.max(2), out),
        Claim::Directed => {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.15..0.6);
            // Every other trial is forced to have several components.
            let g = if n >= 2 && rng.gen_bool(0.5) {
                random_multi_scc::<Rational>(rng, n, p, 10)
            } else {
                random_digraph::<Rational>(rng, n, p, 10)
            };
            let painter = GeneralPainter::new(g.clone()).expect("painter setup");
            budget_game(config, rng, &g, Rational::from_i64(2), painter, out);
        }
        Claim::ListsK2 => list_trial(config, rng, 2, false, out),
        Claim::ListsK3 => list_trial(config, rng, 3, false, out),
        Claim::TwoLists => list_trial(config, rng, 1, true, out),
        Claim::Ranked => ranked_trial(config, rng, out),
        Claim::Paint => paint_trial(rng, max_n, out),
        Claim::LowerBounds | Claim::CrossCheck => unreachable!("not randomized"),
    }
}

fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

/// Maximum of `rho(Y) - w(E[Y])` over all `Y` in `X`, walking subsets in Gray
/// code order so each step flips one vertex.
fn gray_code_maximum(g: &WeightedDigraph<Rational>, ranks: &RankFunction<Rational>) -> Rational {
    let xs: Vec<(Vertex, Rational)> = ranks.iter().map(|(v, r)| (v, r.clone())).collect();
    let mut inside = vec![false; g.vertex_count()];
    let mut value = Rational::zero();
    let mut best = Rational::zero();
    for step in 1u64..(1u64 << xs.len()) {
        let (v, r) = &xs[step.trailing_zeros() as usize];
        let touching = g.out_weight_into(*v, |w| inside[w]);
        if inside[*v] {
            value = value - r.clone() + touching;
        } else {
            value = value + r.clone() - touching;
        }
        inside[*v] = !inside[*v];
        if value > best {
            best = value.clone();
        }
    }
    best
}

fn kernel_trial(rng: &mut ChaCha8Rng, max_n: usize, out: &mut Outcome) {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.2..0.8);
    let g = UndirectedView::new(random_undirected::<Rational>(rng, n, p, 10)).expect("symmetric");
    let mut ranks = Vec::new();
    for v in 0..n {
        if rng.gen_bool(0.8) {
            let share = q(rng.gen_range(0..=10), 10);
            let extra = q(rng.gen_range(0..=3), 10);
            ranks.push((v, g.out_weight(v) * share + extra));
        }
    }
    let ranks: RankFunction<Rational> = ranks.into_iter().collect();
    let cert = select_kernel(&g, &ranks);
    let check = kernel_condition_holds(&g, &ranks, &cert.members);
    out.record(0, check.holds(), || {
        format!("n={n} Y={:?} is not a kernel", cert.members)
    });
    let best = gray_code_maximum(&g, &ranks) * Rational::from_i64(2);
    out.record(1, cert.cost == best, || {
        format!("n={n} cost {} below maximum {best}", cert.cost)
    });
    match brute_force_kernels(&g, &ranks, 20) {
        Ok(all) => out.record(2, !all.is_empty(), || format!("n={n} no kernel found")),
        Err(e) => out.record(2, false, || format!("n={n} {e}")),
    }
}

fn spectral_trial(rng: &mut ChaCha8Rng, max_n: usize, out: &mut Outcome) {
    let n = rng.gen_range(2..=max_n);
    let p = rng.gen_range(0.05..0.5);
    let g = random_strongly_connected::<f64>(rng, n, p, 10);
    let t = g.normalize_out_weights().expect("no sinks");
    let eigen = match left_eigenvector(&t, f64::INFINITY) {
        Ok(e) => e,
        Err(e) => {
            out.record(0, false, || format!("n={n} {e}"));
            return;
        }
    };
    out.record(0, eigen.residual <= 1e-10, || {
        format!("n={n} residual {:e}", eigen.residual)
    });
    let sym = symmetrized_graph(&t, &eigen);
    let worst = (0..n)
        .map(|v| (sym.out_weight(v) - 2.0 * eigen.x[v]).abs())
        .fold(0.0, f64::max);
    out.record(1, worst <= 1e-9, || format!("n={n} identity off by {worst:e}"));
}

fn play_checked<L: Lister<Rational> + ?Sized, P: Painter<Rational>>(
    config: &VerifyConfig,
    g: &WeightedDigraph<Rational>,
    lambda: &[Rational],
    lister: &mut L,
    mut painter: P,
    out: &mut Outcome,
) -> Option<(GameTrace<Rational>, Vec<usize>)> {
    let n = g.vertex_count();
    match play_game(g, lambda, lister, &mut painter, &config.engine) {
        Ok(trace) => {
            let coloring = coloring_from_trace(&trace);
            out.record(0, coloring.is_some(), || {
                format!("n={n} Lister won in {} rounds", trace.rounds.len())
            });
            coloring.map(|c| (trace, c))
        }
        Err(e) => {
            out.record(0, false, || format!("n={n} {e}"));
            None
        }
    }
}

/// Tolerance `v` was presented with in the round it was colored.
fn round_tolerance(trace: &GameTrace<Rational>, v: Vertex, round: usize) -> Rational {
    trace.rounds[round - 1]
        .presented
        .tolerance(v)
        .cloned()
        .expect("colored vertices were presented")
}

fn budget_game<P: Painter<Rational>>(
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
    g: &WeightedDigraph<Rational>,
    budget: Rational,
    painter: P,
    out: &mut Outcome,
) {
    let lambda = vec![budget; g.vertex_count()];
    let mut lister: Box<dyn Lister<Rational>> = if rng.gen_bool(0.5) {
        Box::new(RandomLister::new(rng.gen()))
    } else {
        Box::new(GreedyLister::new())
    };
    if let Some((trace, c)) = play_checked(config, g, &lambda, &mut lister, painter, out) {
        let report = verify_coloring(g, &c, |v, r| round_tolerance(&trace, v, r));
        out.record(1, report.is_ok(), || {
            format!("coloring violations {:?}", report.violations)
        });
    }
}

fn respects(lists: &ListAssignment<Rational>, colors: &[u32]) -> bool {
    colors.iter().enumerate().all(|(v, &c)| lists.contains(v, c))
}

/// `k = 1` with `undirected` is the 2-list, tolerance one half case.
fn list_trial(config: &VerifyConfig, rng: &mut ChaCha8Rng, k: i64, undirected: bool, out: &mut Outcome) {
    let n = rng.gen_range(1..=config.max_n.max(1));
    let p = rng.gen_range(0.2..0.7);
    let (g, painter, tau, len): (_, Box<dyn Painter<Rational>>, _, _) = if undirected {
        let g = random_undirected::<Rational>(rng, n, p, 10);
        let painter = UndirectedPainter::new(g.clone()).expect("symmetric");
        (g, Box::new(painter), q(1, 2), 2)
    } else {
        let g = random_digraph::<Rational>(rng, n, p, 10);
        let painter = GeneralPainter::new(g.clone()).expect("painter setup");
        (g, Box::new(painter), q(1, k), 2 * k as usize)
    };
    let palette = len as u32 + rng.gen_range(0..=len as u32);
    let lists = random_lists::<Rational>(rng, n, len, palette);
    let game = kappa_game(vec![tau.clone(); n], vec![len as u32; n]).expect("positive tolerance");
    let mut lister = ListLister::new(lists.clone(), vec![tau.clone(); n]).expect("lengths agree");
    if let Some((_, c)) = play_checked(config, &g, &game.lambda, &mut lister, painter, out) {
        let colors = lister.list_coloring(&c);
        out.record(1, respects(&lists, &colors), || {
            format!("coloring {colors:?} leaves the lists")
        });
        let colors: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let report = verify_coloring(&g, &colors, |_, _| tau.clone());
        out.record(2, report.is_ok(), || {
            format!("coloring violations {:?}", report.violations)
        });
    }
}

fn ranked_trial(config: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut Outcome) {
    let n = rng.gen_range(1..=config.max_n.max(1));
    let p = rng.gen_range(0.2..0.7);
    let g = random_undirected::<Rational>(rng, n, p, 10);
    let len = rng.gen_range(1..=3);
    let lists = random_ranked_lists(rng, &g, len, len as u32 + 2);
    let painter = UndirectedPainter::new(g.clone()).expect("symmetric");
    let mut lister = ListLister::ranked(lists.clone(), &g).expect("ranked lists");
    let lambda = vec![Rational::one(); n];
    if let Some((_, c)) = play_checked(config, &g, &lambda, &mut lister, painter, out) {
        let colors = lister.list_coloring(&c);
        out.record(1, respects(&lists, &colors), || {
            format!("coloring {colors:?} leaves the lists")
        });
        let report = verify_ranked_coloring(&g, &c, |v, _| lists.rank(v, colors[v]).cloned().expect("ranked"));
        out.record(2, report.is_ok(), || {
            format!("ranked violations {:?}", report.violations)
        });
    }
}

fn paint_trial(rng: &mut ChaCha8Rng, max_n: usize, out: &mut Outcome) {
    let cfg = SolveConfig::default();
    let n = rng.gen_range(1..=max_n.min(cfg.max_vertices));
    let p = rng.gen_range(0.2..0.7);

    // Any tolerances with kappa(v) tau(v) >= 2 on a digraph.
    let g = random_digraph::<Rational>(rng, n, p, 10);
    let pool = [(1, 4), (1, 3), (1, 2), (2, 3), (1, 1)];
    let mut tau = Vec::with_capacity(n);
    let mut kappa = Vec::with_capacity(n);
    for _ in 0..n {
        let (a, b) = pool[rng.gen_range(0..pool.len())];
        tau.push(q(a, b));
        kappa.push(((2 * b + a - 1) / a) as u32);
    }
    let mut painter = GeneralPainter::new(g.clone()).expect("painter setup");
    match painter_wins_kappa_game(&g, &tau, &kappa, &mut painter, &cfg) {
        Ok(r) => out.record(0, r.painter_wins && r.invalid_response.is_none(), || {
            format!(
                "n={n} tau={tau:?} kappa={kappa:?} lost: {:?} {:?}",
                r.losing_line, r.invalid_response
            )
        }),
        Err(e) => out.record(0, false, || format!("n={n} {e}")),
    }

    // 1/k-majority k-paintability of undirected graphs.
    let k = rng.gen_range(2..=3);
    let g = random_undirected::<Rational>(rng, n, p, 10);
    let tau = vec![q(1, k); n];
    let kappa = vec![k as u32; n];
    let mut painter = UndirectedPainter::new(g.clone()).expect("symmetric");
    match painter_wins_kappa_game(&g, &tau, &kappa, &mut painter, &cfg) {
        Ok(r) => out.record(1, r.painter_wins && r.invalid_response.is_none(), || {
            format!("n={n} k={k} lost: {:?} {:?}", r.losing_line, r.invalid_response)
        }),
        Err(e) => out.record(1, false, || format!("n={n} {e}")),
    }
}

fn lower_bounds(width: usize) -> Outcome {
    let mut out = Outcome::new(width);
    let bound = DEFAULT_ENUMERATION_BOUND;
    let k2 = complete_graph::<Rational>(2);
    let k3 = complete_graph::<Rational>(3);
    let tri = directed_cycle::<Rational>(3);

    let colorable = |g: &WeightedDigraph<Rational>, t: Rational, k| {
        is_majority_colorable(g, &vec![t; g.vertex_count()], k, bound).map(|s| s.is_colorable())
    };
    out.record(0, colorable(&k2, q(1, 2), 1) == Ok(false), || {
        "K2 has a 1/2-majority 1-coloring".into()
    });
    out.record(1, colorable(&k3, q(1, 3), 2) == Ok(false), || {
        "K3 has a 1/3-majority 2-coloring".into()
    });
    out.record(2, colorable(&tri, q(1, 2), 2) == Ok(false), || {
        "directed triangle has a 1/2-majority 2-coloring".into()
    });

    let cfg = SolveConfig {
        witness: true,
        ..SolveConfig::default()
    };
    let lister_wins = |g: &WeightedDigraph<Rational>, kappa: u32| {
        let n = g.vertex_count();
        let (tau, kappa) = (vec![q(1, 2); n], vec![kappa; n]);
        solve_kappa_game(g, &tau, &kappa, &cfg)
            .is_ok_and(|s| s.winner == Winner::Lister && s.witness.is_some_and(|w| witness_holds(g, &tau, &kappa, &w)))
    };
    out.record(3, lister_wins(&k2, 1), || "Painter survives kappa = 1 on K2".into());
    out.record(4, lister_wins(&tri, 2), || {
        "Painter survives kappa = 2 on the directed triangle".into()
    });

    for (check, k) in [(5, 2usize), (6, 3)] {
        let g = complete_graph::<Rational>(k);
        let lambda = vec![q(k as i64 - 1, k as i64); k];
        let r = lister_wins_against_all(&g, &lambda, &CliqueLister::lower_bound(k), 1_000_000);
        out.record(check, r.as_ref().is_ok_and(|r| r.lister_always_wins), || {
            format!("clique Lister on K{k}: {r:?}")
        });
    }
    out
}

fn cross_check(width: usize, max_n: usize) -> Vec<Outcome> {
    let graphs: Vec<WeightedDigraph<Rational>> = (2..=max_n).flat_map(nonisomorphic_digraphs).collect();
    graphs
        .par_iter()
        .map(|g| {
            let mut out = Outcome::new(width);
            let n = g.vertex_count();
            let (tau, kappa) = (vec![q(1, 2); n], vec![4; n]);
            let cfg = SolveConfig::default();
            let arcs: Vec<(Vertex, Vertex)> = g.edges().map(|(v, w, _)| (v, w)).collect();
            match solve_kappa_game(g, &tau, &kappa, &cfg) {
                Ok(s) => out.record(0, s.winner == Winner::Painter, || {
                    format!("oracle says Lister on {arcs:?}")
                }),
                Err(e) => out.record(0, false, || format!("{arcs:?}: {e}")),
            }
            let general = GeneralPainter::new(g.clone())
                .map_err(|e| e.to_string())
                .and_then(|mut p| painter_wins_kappa_game(g, &tau, &kappa, &mut p, &cfg).map_err(|e| e.to_string()));
            match general {
                Ok(r) => out.record(1, r.painter_wins && r.invalid_response.is_none(), || {
                    format!(
                        "general Painter loses on {arcs:?}: {:?} {:?}",
                        r.losing_line, r.invalid_response
                    )
                }),
                Err(e) => out.record(1, false, || format!("{arcs:?}: {e}")),
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.name().parse::<Claim>(), Ok(c));
        }
        assert!("thm3".parse::<Claim>().is_err());
    }

    #[test]
    fn gray_code_matches_direct_sum() {
        let g = WeightedDigraph::undirected(3, [(0, 1, q(1, 1)), (1, 2, q(1, 1))]).unwrap();
        let rho: RankFunction<Rational> = [(0, q(3, 5)), (1, q(1, 1)), (2, q(3, 5))].into_iter().collect();
        assert_eq!(gray_code_maximum(&g, &rho), q(6, 5));
    }

    #[test]
    fn small_runs_pass_and_repeat() {
        for claim in Claim::ALL {
            let mut cfg = VerifyConfig::new(claim, 3);
            cfg.trials = 4;
            cfg.max_n = cfg.max_n.min(6);
            if claim == Claim::CrossCheck {
                cfg.max_n = 3;
            }
            let a = run_claim(&cfg);
            assert!(a.passed(), "{a}");
            assert_eq!(a.to_string(), run_claim(&cfg).to_string());
        }
    }
}
