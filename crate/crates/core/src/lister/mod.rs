//! Lister move sources.
//!
//! A Lister presents a set of uncolored vertices with a tolerance for each.
//! Sources are allowed to be sloppy: [`filter_move`] drops colored vertices
//! and negative tolerances, and a move that becomes empty is skipped.

mod adversary;
mod interactive;
mod lists;

use std::collections::BTreeMap;

pub use adversary::{CliqueLister, GreedyLister, RandomLister, ScriptedLister};
pub use interactive::InteractiveLister;
pub use lists::{ListAssignment, ListError, ListLister};

use crate::engine::GameState;
use crate::graph::Vertex;
use crate::scalar::Scalar;

/// A presented set together with its tolerances; the keys of the map are the
/// presented vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ListerMove<S> {
    tolerances: BTreeMap<Vertex, S>,
}

impl<S: Scalar> ListerMove<S> {
    pub fn new(tolerances: BTreeMap<Vertex, S>) -> Self {
        Self { tolerances }
    }

    pub fn uniform(vertices: impl IntoIterator<Item = Vertex>, tolerance: S) -> Self {
        Self {
            tolerances: vertices.into_iter().map(|v| (v, tolerance.clone())).collect(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.tolerances.keys().copied()
    }

    pub fn tolerance(&self, v: Vertex) -> Option<&S> {
        self.tolerances.get(&v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.tolerances.contains_key(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &S)> + '_ {
        self.tolerances.iter().map(|(v, s)| (*v, s))
    }

    pub fn len(&self) -> usize {
        self.tolerances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tolerances.is_empty()
    }

    pub fn tolerances(&self) -> &BTreeMap<Vertex, S> {
        &self.tolerances
    }

    pub fn into_tolerances(self) -> BTreeMap<Vertex, S> {
        self.tolerances
    }
}

impl<S: Scalar> FromIterator<(Vertex, S)> for ListerMove<S> {
    fn from_iter<I: IntoIterator<Item = (Vertex, S)>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Removes colored vertices, out-of-range vertices and negative tolerances.
/// `None` means the move is empty and must be skipped.
pub fn filter_move<S: Scalar>(raw: &ListerMove<S>, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
    let n = state.graph().vertex_count();
    let kept: BTreeMap<Vertex, S> = raw
        .iter()
        .filter(|(v, t)| *v < n && !state.is_colored(*v) && !t.below_zero())
        .map(|(v, t)| (v, t.clone()))
        .collect();
    (!kept.is_empty()).then(|| ListerMove::new(kept))
}

/// A source of Lister moves for one game. Returning `None` ends the source.
pub trait Lister<S: Scalar> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>>;
}

impl<S: Scalar, L: Lister<S> + ?Sized> Lister<S> for &mut L {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        (**self).next_move(state)
    }
}

impl<S: Scalar, L: Lister<S> + ?Sized> Lister<S> for Box<L> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        (**self).next_move(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use crate::scalar::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn filtering() {
        let g = complete_graph::<Rational>(3);
        let mut state = GameState::new(&g, vec![q(1, 1); 3]).unwrap();
        state.record_round(&ListerMove::uniform([0], q(1, 2)), &[0]);

        let raw = ListerMove::uniform([0, 1], q(1, 2));
        assert_eq!(
            filter_move(&raw, &state).unwrap().vertices().collect::<Vec<_>>(),
            vec![1]
        );
        let raw: ListerMove<Rational> = [(1, q(-1, 5)), (2, q(1, 3))].into_iter().collect();
        assert_eq!(
            filter_move(&raw, &state).unwrap().vertices().collect::<Vec<_>>(),
            vec![2]
        );
        let raw: ListerMove<Rational> = [(0, q(1, 2)), (1, q(-1, 1)), (9, q(1, 1))].into_iter().collect();
        assert!(filter_move(&raw, &state).is_none());
    }
}
