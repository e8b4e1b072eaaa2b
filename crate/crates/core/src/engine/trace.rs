//! Line-delimited game traces.
//!
//! One JSON object per round, fields in this order:
//!
//! ```text
//! {"round":1,"X":[0,1],"tau":{"0":"1/2","1":"1/2"},"Y":[0]}
//! ```
//!
//! followed by one terminal record:
//!
//! ```text
//! {"winner":"painter","coloring":[1,2]}
//! ```
//!
//! Tolerances are strings in the scalar's display form (`p/q` for exact
//! rationals) so that no precision is lost. Uncolored vertices appear as
//! `null` in the coloring.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{play_game, EngineConfig, EngineError, Winner};
use crate::graph::{Vertex, WeightedDigraph};
use crate::lister::{ListerMove, ScriptedLister};
use crate::painter::ScriptedPainter;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord<S> {
    /// 1-based round index; also the color given to `painted`.
    pub round: usize,
    pub presented: ListerMove<S>,
    pub painted: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameTrace<S> {
    pub rounds: Vec<RoundRecord<S>>,
    pub winner: Winner,
    pub coloring: Vec<Option<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoundLine {
    round: usize,
    #[serde(rename = "X")]
    presented: Vec<Vertex>,
    tau: BTreeMap<Vertex, String>,
    #[serde(rename = "Y")]
    painted: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TerminalLine {
    winner: Winner,
    coloring: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: expected round {expected}, found {found}")]
    RoundOrder { line: usize, expected: usize, found: usize },
    #[error("line {line}: X and tau keys disagree")]
    TauMismatch { line: usize },
    #[error("line {line}: Y is not a sorted subset of X")]
    BadResponse { line: usize },
    #[error("line {line}: bad tolerance `{literal}`")]
    BadTolerance { line: usize, literal: String },
    #[error("missing terminal record")]
    MissingTerminal,
    #[error("line {line}: record after the terminal record")]
    TrailingRecord { line: usize },
}

impl<S: Scalar> GameTrace<S> {
    pub fn new(rounds: Vec<RoundRecord<S>>, winner: Winner, coloring: Vec<Option<usize>>) -> Self {
        Self {
            rounds,
            winner,
            coloring,
        }
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.rounds {
            let line = RoundLine {
                round: r.round,
                presented: r.presented.vertices().collect(),
                tau: r.presented.iter().map(|(v, t)| (v, t.to_string())).collect(),
                painted: r.painted.clone(),
            };
            out.push_str(&serde_json::to_string(&line).expect("plain data serializes"));
            out.push('\n');
        }
        let terminal = TerminalLine {
            winner: self.winner,
            coloring: self.coloring.clone(),
        };
        out.push_str(&serde_json::to_string(&terminal).expect("plain data serializes"));
        out.push('\n');
        out
    }

    /// `sum of tau_i(v)` over recorded rounds presenting `v`.
    pub fn spent(&self, v: Vertex) -> S {
        self.rounds
            .iter()
            .filter_map(|r| r.presented.tolerance(v).cloned())
            .sum()
    }
}

pub fn parse_trace<S: Scalar>(text: &str) -> Result<GameTrace<S>, TraceParseError> {
    let mut rounds = Vec::new();
    let mut terminal: Option<TerminalLine> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if terminal.is_some() {
            return Err(TraceParseError::TrailingRecord { line });
        }
        if let Ok(t) = serde_json::from_str::<TerminalLine>(raw) {
            terminal = Some(t);
            continue;
        }
        let r: RoundLine = serde_json::from_str(raw).map_err(|e| TraceParseError::Syntax {
            line,
            message: e.to_string(),
        })?;
        let expected = rounds.len() + 1;
        if r.round != expected {
            return Err(TraceParseError::RoundOrder {
                line,
                expected,
                found: r.round,
            });
        }
        if !r.presented.iter().copied().eq(r.tau.keys().copied()) {
            return Err(TraceParseError::TauMismatch { line });
        }
        let sorted = r.painted.windows(2).all(|w| w[0] < w[1]);
        if !sorted || r.painted.iter().any(|v| !r.tau.contains_key(v)) {
            return Err(TraceParseError::BadResponse { line });
        }
        let mut tolerances = BTreeMap::new();
        for (v, literal) in r.tau {
            let t = S::parse_literal(&literal).map_err(|_| TraceParseError::BadTolerance {
                line,
                literal: literal.clone(),
            })?;
            tolerances.insert(v, t);
        }
        rounds.push(RoundRecord {
            round: r.round,
            presented: ListerMove::new(tolerances),
            painted: r.painted,
        });
    }
    let terminal = terminal.ok_or(TraceParseError::MissingTerminal)?;
    Ok(GameTrace::new(rounds, terminal.winner, terminal.coloring))
}

/// Re-runs a recorded trace through the referee and checks that the same
/// winner and coloring come out.
pub fn replay_trace<S: Scalar>(
    g: &WeightedDigraph<S>,
    lambda: &[S],
    trace: &GameTrace<S>,
) -> Result<GameTrace<S>, EngineError> {
    let mut lister = ScriptedLister::new(trace.rounds.iter().map(|r| r.presented.clone()));
    let mut painter = ScriptedPainter::new(trace.rounds.iter().map(|r| r.painted.clone()));
    let config = EngineConfig {
        round_cap: Some(trace.rounds.len() + 1),
        skip_bound: 0,
    };
    let replayed = play_game(g, lambda, &mut lister, &mut painter, &config)?;
    if replayed != *trace {
        let why = if replayed.winner != trace.winner {
            format!("winner {} vs recorded {}", replayed.winner, trace.winner)
        } else if replayed.coloring != trace.coloring {
            "coloring differs".to_string()
        } else {
            format!("{} rounds vs recorded {}", replayed.rounds.len(), trace.rounds.len())
        };
        return Err(EngineError::ReplayMismatch(why));
    }
    Ok(replayed)
}
