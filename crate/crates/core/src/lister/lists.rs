use std::collections::BTreeMap;

use thiserror::Error;

use super::{filter_move, Lister, ListerMove};
use crate::engine::GameState;
use crate::graph::{Vertex, WeightedDigraph};
use crate::scalar::Scalar;

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("vertex {0} has an empty list")]
    EmptyList(Vertex),
    #[error("list assignment covers {found} vertices, graph has {expected}")]
    WrongLength { found: usize, expected: usize },
    #[error("vertex {vertex}: color {color} is not a positive integer")]
    BadColor { vertex: Vertex, color: Color },
    #[error("vertex {vertex}: color {color} has no rank")]
    MissingRank { vertex: Vertex, color: Color },
}

/// A list of colors for every vertex, optionally with a rank per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ListAssignment<S> {
    lists: Vec<BTreeMap<Color, Option<S>>>,
}

impl<S: Scalar> ListAssignment<S> {
    pub fn new(lists: Vec<BTreeMap<Color, Option<S>>>) -> Result<Self, ListError> {
        for (v, list) in lists.iter().enumerate() {
            if list.is_empty() {
                return Err(ListError::EmptyList(v));
            }
            if list.contains_key(&0) {
                return Err(ListError::BadColor { vertex: v, color: 0 });
            }
        }
        Ok(Self { lists })
    }

    /// Lists without ranks.
    pub fn plain(lists: Vec<Vec<Color>>) -> Result<Self, ListError> {
        Self::new(
            lists
                .into_iter()
                .map(|l| l.into_iter().map(|c| (c, None)).collect())
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    pub fn colors(&self, v: Vertex) -> impl Iterator<Item = Color> + '_ {
        self.lists[v].keys().copied()
    }

    pub fn contains(&self, v: Vertex, color: Color) -> bool {
        self.lists[v].contains_key(&color)
    }

    pub fn list_len(&self, v: Vertex) -> usize {
        self.lists[v].len()
    }

    pub fn rank(&self, v: Vertex, color: Color) -> Option<&S> {
        self.lists[v].get(&color)?.as_ref()
    }

    pub fn entries(&self, v: Vertex) -> impl Iterator<Item = (Color, Option<&S>)> + '_ {
        self.lists[v].iter().map(|(c, r)| (*c, r.as_ref()))
    }

    /// Every color appearing in some list, ascending.
    pub fn palette(&self) -> Vec<Color> {
        let mut all: Vec<Color> = self.lists.iter().flat_map(|l| l.keys().copied()).collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn check_vertex_count(&self, n: usize) -> Result<(), ListError> {
        if self.lists.len() == n {
            Ok(())
        } else {
            Err(ListError::WrongLength {
                found: self.lists.len(),
                expected: n,
            })
        }
    }

    pub fn check_ranked(&self) -> Result<(), ListError> {
        for (v, list) in self.lists.iter().enumerate() {
            if let Some((&color, _)) = list.iter().find(|(_, r)| r.is_none()) {
                return Err(ListError::MissingRank { vertex: v, color });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum ToleranceRule<S> {
    /// Fixed per-vertex tolerance in every round.
    Constant(Vec<S>),
    /// `rank / out_weight`, with a sink's out-weight read as one.
    Ranked(Vec<S>),
}

/// Presents, in round `i`, the uncolored vertices whose list holds the
/// `i`-th palette color. Empty rounds are skipped internally, so every
/// emitted move corresponds to exactly one palette color.
#[derive(Debug, Clone)]
pub struct ListLister<S> {
    lists: ListAssignment<S>,
    palette: Vec<Color>,
    next_color: usize,
    rule: ToleranceRule<S>,
    emitted: Vec<Color>,
}

impl<S: Scalar> ListLister<S> {
    /// Constant tolerance `tolerance[v]` whenever `v` is presented.
    pub fn new(lists: ListAssignment<S>, tolerance: Vec<S>) -> Result<Self, ListError> {
        lists.check_vertex_count(tolerance.len())?;
        Ok(Self::with_rule(lists, ToleranceRule::Constant(tolerance)))
    }

    /// Ranked lists: color `i` is presented to `v` with tolerance
    /// `r_i(v) / out_weight(v)`. A sink uses divisor one; its constraint is
    /// vacuous anyway.
    pub fn ranked(lists: ListAssignment<S>, g: &WeightedDigraph<S>) -> Result<Self, ListError> {
        lists.check_vertex_count(g.vertex_count())?;
        lists.check_ranked()?;
        let divisors = (0..g.vertex_count())
            .map(|v| {
                let w = g.out_weight(v);
                if w.is_zero() {
                    S::one()
                } else {
                    w
                }
            })
            .collect();
        Ok(Self::with_rule(lists, ToleranceRule::Ranked(divisors)))
    }

    fn with_rule(lists: ListAssignment<S>, rule: ToleranceRule<S>) -> Self {
        Self {
            palette: lists.palette(),
            lists,
            next_color: 0,
            rule,
            emitted: Vec::new(),
        }
    }

    /// The palette color behind each emitted move, in emission order.
    pub fn emitted_colors(&self) -> &[Color] {
        &self.emitted
    }

    /// Maps round-indexed colors (1-based) to the list colors they stand for.
    pub fn list_coloring(&self, round_coloring: &[usize]) -> Vec<Color> {
        round_coloring.iter().map(|&r| self.emitted[r - 1]).collect()
    }

    fn tolerance(&self, v: Vertex, color: Color) -> S {
        match &self.rule {
            ToleranceRule::Constant(t) => t[v].clone(),
            ToleranceRule::Ranked(divisors) => {
                let rank = self.lists.rank(v, color).expect("checked at construction");
                rank.clone() / divisors[v].clone()
            }
        }
    }
}

impl<S: Scalar> Lister<S> for ListLister<S> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        while self.next_color < self.palette.len() {
            let color = self.palette[self.next_color];
            self.next_color += 1;
            let raw: ListerMove<S> = (0..self.lists.vertex_count())
                .filter(|&v| self.lists.contains(v, color) && !state.is_colored(v))
                .map(|v| (v, self.tolerance(v, color)))
                .collect();
            if let Some(mv) = filter_move(&raw, state) {
                self.emitted.push(color);
                return Some(mv);
            }
        }
        None
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
    fn follows_the_palette() {
        let g = complete_graph::<Rational>(2);
        let lists = ListAssignment::plain(vec![vec![1], vec![1, 2]]).unwrap();
        let mut lister = ListLister::new(lists, vec![q(1, 2); 2]).unwrap();
        let mut state = GameState::new(&g, vec![q(1, 1); 2]).unwrap();

        let first = lister.next_move(&state).unwrap();
        assert_eq!(first, ListerMove::uniform([0, 1], q(1, 2)));
        state.record_round(&first, &[0]);
        let second = lister.next_move(&state).unwrap();
        assert_eq!(second, ListerMove::uniform([1], q(1, 2)));
        state.record_round(&second, &[1]);
        assert!(lister.next_move(&state).is_none());
        assert_eq!(lister.emitted_colors(), &[1, 2]);
    }

    #[test]
    fn skips_colors_with_nobody_left() {
        let g = complete_graph::<Rational>(2);
        let lists = ListAssignment::plain(vec![vec![1, 5], vec![3]]).unwrap();
        let mut lister = ListLister::new(lists, vec![q(1, 2); 2]).unwrap();
        let mut state = GameState::new(&g, vec![q(1, 1); 2]).unwrap();
        let first = lister.next_move(&state).unwrap();
        assert_eq!(first.vertices().collect::<Vec<_>>(), vec![0]);
        state.record_round(&first, &[0]);
        let second = lister.next_move(&state).unwrap();
        assert_eq!(second.vertices().collect::<Vec<_>>(), vec![1]);
        state.record_round(&second, &[1]);
        // Color 5 only lists vertex 0, which is colored.
        assert!(lister.next_move(&state).is_none());
        assert_eq!(lister.list_coloring(&[1, 2]), vec![1, 3]);
    }

    #[test]
    fn ranked_tolerances() {
        let g = complete_graph::<Rational>(2);
        let entries = |r1: Rational, r2: Rational| -> BTreeMap<Color, Option<Rational>> {
            [(1, Some(r1)), (2, Some(r2))].into_iter().collect()
        };
        let lists = ListAssignment::new(vec![entries(q(1, 1), q(0, 1)), entries(q(1, 1), q(0, 1))]).unwrap();
        let mut lister = ListLister::ranked(lists, &g).unwrap();
        let state = GameState::new(&g, vec![q(1, 1); 2]).unwrap();
        assert_eq!(lister.next_move(&state).unwrap(), ListerMove::uniform([0, 1], q(1, 1)));

        let sink = WeightedDigraph::<Rational>::empty(1);
        let lists = ListAssignment::new(vec![[(4, Some(q(3, 7)))].into_iter().collect()]).unwrap();
        let mut lister = ListLister::ranked(lists, &sink).unwrap();
        let state = GameState::new(&sink, vec![q(1, 1)]).unwrap();
        assert_eq!(lister.next_move(&state).unwrap(), ListerMove::uniform([0], q(3, 7)));
    }

    #[test]
    fn validation() {
        assert_eq!(
            ListAssignment::<Rational>::plain(vec![vec![1], vec![]]),
            Err(ListError::EmptyList(1))
        );
        assert!(matches!(
            ListAssignment::<Rational>::plain(vec![vec![0]]),
            Err(ListError::BadColor { .. })
        ));
        let g = complete_graph::<Rational>(2);
        let plain = ListAssignment::plain(vec![vec![1], vec![1]]).unwrap();
        assert!(matches!(
            ListLister::ranked(plain, &g),
            Err(ListError::MissingRank { vertex: 0, color: 1 })
        ));
        let short = ListAssignment::plain(vec![vec![1]]).unwrap();
        assert!(matches!(
            ListLister::new(short, vec![q(1, 2); 2]),
            Err(ListError::WrongLength { .. })
        ));
    }
}
