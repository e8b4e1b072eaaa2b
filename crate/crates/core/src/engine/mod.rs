//! Referee for the ranked-majority painting game.
//!
//! Each round: the Lister's move is filtered, the Painter answers with a
//! subset `Y` of the presented set, the answer is checked against
//!
//! ```text
//! for v in Y:  sum_{vw in E, w in Y} w(vw) <= tau(v) * sum_{vw in E} w(vw)
//! ```
//!
//! and the state is updated. Painter wins once everything is colored; Lister
//! wins once some uncolored vertex has been presented with total tolerance at
//! least its budget `lambda(v)`.

mod coloring;
mod kappa;
mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coloring::{coloring_from_trace, verify_coloring, verify_ranked_coloring, ColoringReport, ColoringViolation};
pub use kappa::{kappa_game, ConstantTolerance, KappaGame};
pub use trace::{parse_trace, replay_trace, GameTrace, RoundRecord, TraceParseError};

use crate::graph::{Vertex, WeightedDigraph};
use crate::lister::{filter_move, Lister, ListerMove};
use crate::painter::Painter;
use crate::scalar::Scalar;

/// Environment variable overriding the round cap.
pub const ROUND_CAP_ENV: &str = "MP_ROUND_CAP";

pub const DEFAULT_SKIP_BOUND: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Painter,
    Lister,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Painter => "painter",
            Winner::Lister => "lister",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("budget vector has {found} entries, graph has {expected} vertices")]
    BudgetLength { found: usize, expected: usize },
    #[error("budget of vertex {0} is not positive")]
    NonPositiveBudget(Vertex),
    #[error("round {round}: invalid painter response: {report}")]
    InvalidResponse { round: usize, report: String },
    #[error("lister produced more than {0} consecutive empty moves")]
    SkipBound(usize),
    #[error("round cap {0} exceeded")]
    RoundCap(usize),
    #[error("lister stopped in round {0} before the game was decided")]
    ListerStopped(usize),
    #[error("vertex {0}: tolerance must be positive in a kappa game")]
    KappaTolerance(Vertex),
    #[error("vertex {0}: presentation count must be at least one")]
    KappaCount(Vertex),
    #[error("kappa game vectors differ in length")]
    KappaLength,
    #[error("replayed trace differs from the recorded one: {0}")]
    ReplayMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Fixed round cap; `None` uses `10 n max_v ceil(lambda(v) / min tau)`.
    pub round_cap: Option<usize>,
    /// Maximum number of consecutive skipped (empty after filtering) moves.
    pub skip_bound: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            round_cap: None,
            skip_bound: DEFAULT_SKIP_BOUND,
        }
    }
}

impl EngineConfig {
    /// Applies `MP_ROUND_CAP` when set to a valid count.
    pub fn with_env_overrides(mut self) -> Self {
        if let Some(cap) = std::env::var(ROUND_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            self.round_cap = Some(cap);
        }
        self
    }
}

/// Mutable game position.
#[derive(Debug, Clone)]
pub struct GameState<'g, S> {
    graph: &'g WeightedDigraph<S>,
    lambda: Vec<S>,
    color: Vec<Option<usize>>,
    spent: Vec<S>,
    round: usize,
}

impl<'g, S: Scalar> GameState<'g, S> {
    pub fn new(graph: &'g WeightedDigraph<S>, lambda: Vec<S>) -> Result<Self, EngineError> {
        let n = graph.vertex_count();
        if lambda.len() != n {
            return Err(EngineError::BudgetLength {
                found: lambda.len(),
                expected: n,
            });
        }
        if let Some(v) = lambda.iter().position(|l| !l.above_zero()) {
            return Err(EngineError::NonPositiveBudget(v));
        }
        Ok(Self {
            graph,
            lambda,
            color: vec![None; n],
            spent: vec![S::zero(); n],
            round: 0,
        })
    }

    pub fn graph(&self) -> &'g WeightedDigraph<S> {
        self.graph
    }

    /// Number of completed rounds.
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn lambda(&self, v: Vertex) -> &S {
        &self.lambda[v]
    }

    pub fn spent(&self, v: Vertex) -> &S {
        &self.spent[v]
    }

    /// `lambda(v) - spent(v)`.
    pub fn remaining(&self, v: Vertex) -> S {
        self.lambda[v].clone() - self.spent[v].clone()
    }

    /// The round that colored `v`, if any.
    pub fn color(&self, v: Vertex) -> Option<usize> {
        self.color[v]
    }

    pub fn is_colored(&self, v: Vertex) -> bool {
        self.color[v].is_some()
    }

    pub fn uncolored(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.color.len()).filter(|&v| self.color[v].is_none())
    }

    pub fn coloring(&self) -> &[Option<usize>] {
        &self.color
    }

    /// Applies an already validated round.
    pub fn record_round(&mut self, mv: &ListerMove<S>, painted: &[Vertex]) {
        self.round += 1;
        for (v, t) in mv.iter() {
            self.spent[v] = self.spent[v].clone() + t.clone();
        }
        for &v in painted {
            self.color[v] = Some(self.round);
        }
    }

    /// Painter is checked first; both cannot hold at once.
    pub fn winner(&self) -> Option<Winner> {
        if self.color.iter().all(Option::is_some) {
            return Some(Winner::Painter);
        }
        let lister_wins = self.uncolored().any(|v| self.spent[v] >= self.lambda[v]);
        lister_wins.then_some(Winner::Lister)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResponseViolation<S> {
    NotPresented(Vertex),
    Repeated(Vertex),
    Overloaded {
        vertex: Vertex,
        monochromatic: S,
        allowed: S,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResponseCheck<S> {
    pub violations: Vec<ResponseViolation<S>>,
}

impl<S> ResponseCheck<S> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<S: Scalar> fmt::Display for ResponseCheck<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                ResponseViolation::NotPresented(x) => format!("vertex {x} was not presented"),
                ResponseViolation::Repeated(x) => format!("vertex {x} listed twice"),
                ResponseViolation::Overloaded {
                    vertex,
                    monochromatic,
                    allowed,
                } => format!("vertex {vertex}: monochromatic weight {monochromatic} > {allowed}"),
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks `Y` against the presented move: `Y` must be a subset of `X` and
/// every `v` in `Y` must satisfy its majority constraint inside `Y`.
pub fn validate_painter_response<S: Scalar>(
    g: &WeightedDigraph<S>,
    mv: &ListerMove<S>,
    painted: &[Vertex],
) -> ResponseCheck<S> {
    let n = g.vertex_count();
    let mut in_y = vec![false; n];
    let mut violations = Vec::new();
    for &v in painted {
        if v >= n || !mv.contains(v) {
            violations.push(ResponseViolation::NotPresented(v));
        } else if in_y[v] {
            violations.push(ResponseViolation::Repeated(v));
        } else {
            in_y[v] = true;
        }
    }
    for v in (0..n).filter(|&v| in_y[v]) {
        let monochromatic = g.out_weight_into(v, |w| in_y[w]);
        let tau = mv.tolerance(v).expect("presence checked above");
        let allowed = tau.clone() * g.out_weight(v);
        if monochromatic > allowed {
            violations.push(ResponseViolation::Overloaded {
                vertex: v,
                monochromatic,
                allowed,
            });
        }
    }
    ResponseCheck { violations }
}

/// Plays one game to completion and returns its trace.
pub fn play_game<S, L, P>(
    g: &WeightedDigraph<S>,
    lambda: &[S],
    lister: &mut L,
    painter: &mut P,
    config: &EngineConfig,
) -> Result<GameTrace<S>, EngineError>
where
    S: Scalar,
    L: Lister<S> + ?Sized,
    P: Painter<S> + ?Sized,
{
    let mut state = GameState::new(g, lambda.to_vec())?;
    let mut rounds = Vec::new();
    let mut skips = 0;
    let mut min_tolerance: Option<S> = None;

    if let Some(winner) = state.winner() {
        return Ok(GameTrace::new(rounds, winner, state.coloring().to_vec()));
    }
    loop {
        let cap = config
            .round_cap
            .unwrap_or_else(|| default_round_cap(&state, min_tolerance.as_ref()));
        if state.round() >= cap {
            return Err(EngineError::RoundCap(cap));
        }
        let raw = lister
            .next_move(&state)
            .ok_or(EngineError::ListerStopped(state.round() + 1))?;
        let Some(mv) = filter_move(&raw, &state) else {
            skips += 1;
            if skips > config.skip_bound {
                return Err(EngineError::SkipBound(config.skip_bound));
            }
            continue;
        };
        skips = 0;
        for (_, t) in mv.iter().filter(|(_, t)| t.above_zero()) {
            if min_tolerance.as_ref().is_none_or(|m| t < m) {
                min_tolerance = Some(t.clone());
            }
        }

        let mut painted = painter.respond(&mv);
        painted.sort_unstable();
        let check = validate_painter_response(g, &mv, &painted);
        if !check.is_ok() {
            return Err(EngineError::InvalidResponse {
                round: state.round() + 1,
                report: check.to_string(),
            });
        }
        state.record_round(&mv, &painted);
        rounds.push(RoundRecord {
            round: state.round(),
            presented: mv,
            painted,
        });
        if let Some(winner) = state.winner() {
            return Ok(GameTrace::new(rounds, winner, state.coloring().to_vec()));
        }
    }
}

fn default_round_cap<S: Scalar>(state: &GameState<'_, S>, min_tolerance: Option<&S>) -> usize {
    let n = state.graph().vertex_count().max(1);
    let per_vertex = match min_tolerance {
        Some(t) => (0..state.graph().vertex_count())
            .map(|v| crate::scalar::ceil_ratio(state.lambda(v), t))
            .fold(1.0, f64::max),
        None => 1.0,
    };
    let cap = 10.0 * n as f64 * per_vertex;
    if cap.is_finite() && cap < usize::MAX as f64 {
        cap as usize
    } else {
        usize::MAX
    }
}
