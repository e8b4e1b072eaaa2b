use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Lister, ListerMove};
use crate::engine::GameState;
use crate::graph::Vertex;
use crate::scalar::Scalar;

/// Presents every uncolored vertex with the same tolerance each round.
///
/// With tolerance `1/k` this is the lower-bound adversary for `K_k`
/// (budget `(k-1)/k`) and for the `(k-1)`-out-regular tournament on `2k-1`
/// vertices (budget `(2k-2)/k`).
#[derive(Debug, Clone)]
pub struct CliqueLister<S> {
    tolerance: S,
}

impl<S: Scalar> CliqueLister<S> {
    pub fn new(tolerance: S) -> Self {
        Self { tolerance }
    }

    /// Tolerance `1/k`.
    pub fn lower_bound(k: usize) -> Self {
        Self::new(S::from_ratio(1, k as i64))
    }
}

impl<S: Scalar> Lister<S> for CliqueLister<S> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        let mv = ListerMove::uniform(state.uncolored(), self.tolerance.clone());
        (!mv.is_empty()).then_some(mv)
    }
}

/// Random non-empty subsets of the uncolored vertices; each presented vertex
/// gets a random fraction of its remaining budget.
#[derive(Debug, Clone)]
pub struct RandomLister<S> {
    rng: ChaCha8Rng,
    fractions: Vec<S>,
}

impl<S: Scalar> RandomLister<S> {
    pub fn new(seed: u64) -> Self {
        let fractions = [(1, 4), (1, 2), (3, 4), (1, 1)]
            .into_iter()
            .map(|(p, q)| S::from_ratio(p, q))
            .collect();
        Self::with_fractions(seed, fractions)
    }

    /// `fractions` is the pool a presented vertex draws its share of the
    /// remaining budget from; must be non-empty.
    pub fn with_fractions(seed: u64, fractions: Vec<S>) -> Self {
        assert!(!fractions.is_empty());
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            fractions,
        }
    }
}

impl<S: Scalar> Lister<S> for RandomLister<S> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        let uncolored: Vec<Vertex> = state.uncolored().collect();
        if uncolored.is_empty() {
            return None;
        }
        let mut chosen: Vec<Vertex> = uncolored.iter().copied().filter(|_| self.rng.gen_bool(0.5)).collect();
        if chosen.is_empty() {
            chosen.push(*uncolored.choose(&mut self.rng).expect("non-empty"));
        }
        Some(
            chosen
                .into_iter()
                .map(|v| {
                    let share = self.fractions[self.rng.gen_range(0..self.fractions.len())].clone();
                    let remaining = state.remaining(v);
                    let remaining = if remaining.below_zero() { S::zero() } else { remaining };
                    (v, remaining * share)
                })
                .collect(),
        )
    }
}

/// Presents the uncolored vertices with the largest remaining budget, each
/// with half of what it has left.
#[derive(Debug, Clone, Default)]
pub struct GreedyLister;

impl GreedyLister {
    pub fn new() -> Self {
        Self
    }
}

impl<S: Scalar> Lister<S> for GreedyLister {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        let best = state
            .uncolored()
            .map(|v| state.remaining(v))
            .fold(None, |acc: Option<S>, r| match acc {
                Some(a) if a >= r => Some(a),
                _ => Some(r),
            })?;
        if !best.above_zero() {
            return None;
        }
        let half = best.clone() / S::from_i64(2);
        Some(ListerMove::uniform(
            state.uncolored().filter(|&v| state.remaining(v) == best),
            half,
        ))
    }
}

/// Replays a fixed sequence of moves.
#[derive(Debug, Clone)]
pub struct ScriptedLister<S> {
    moves: VecDeque<ListerMove<S>>,
}

impl<S: Scalar> ScriptedLister<S> {
    pub fn new(moves: impl IntoIterator<Item = ListerMove<S>>) -> Self {
        Self {
            moves: moves.into_iter().collect(),
        }
    }
}

impl<S: Scalar> Lister<S> for ScriptedLister<S> {
    fn next_move(&mut self, _state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        self.moves.pop_front()
    }
}
