use super::{EngineError, GameState};
use crate::lister::{Lister, ListerMove};
use crate::scalar::Scalar;

/// The tau-majority kappa-painting game as a ranked game: budgets
/// `lambda(v) = kappa(v) tau(v)` and every presentation of `v` carries
/// exactly `tau(v)`. The Lister then wins precisely when some vertex was
/// presented `kappa(v)` times and is still uncolored.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaGame<S> {
    pub tolerance: Vec<S>,
    pub presentations: Vec<u32>,
    pub lambda: Vec<S>,
}

/// Rejects `tau(v) <= 0`: with a zero tolerance the budget would be zero and
/// no number of presentations reproduces the kappa rule.
pub fn kappa_game<S: Scalar>(tolerance: Vec<S>, presentations: Vec<u32>) -> Result<KappaGame<S>, EngineError> {
    if tolerance.len() != presentations.len() {
        return Err(EngineError::KappaLength);
    }
    if let Some(v) = tolerance.iter().position(|t| !t.above_zero()) {
        return Err(EngineError::KappaTolerance(v));
    }
    if let Some(v) = presentations.iter().position(|&k| k == 0) {
        return Err(EngineError::KappaCount(v));
    }
    let lambda = tolerance
        .iter()
        .zip(&presentations)
        .map(|(t, &k)| t.clone() * S::from_i64(k as i64))
        .collect();
    Ok(KappaGame {
        tolerance,
        presentations,
        lambda,
    })
}

impl<S: Scalar> KappaGame<S> {
    pub fn wrap<L: Lister<S>>(&self, inner: L) -> ConstantTolerance<S, L> {
        ConstantTolerance {
            tolerance: self.tolerance.clone(),
            inner,
        }
    }
}

/// Overwrites every presented tolerance with the fixed `tau(v)`.
#[derive(Debug, Clone)]
pub struct ConstantTolerance<S, L> {
    tolerance: Vec<S>,
    inner: L,
}

impl<S: Scalar, L> ConstantTolerance<S, L> {
    pub fn inner(&self) -> &L {
        &self.inner
    }
}

impl<S: Scalar, L: Lister<S>> Lister<S> for ConstantTolerance<S, L> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        let raw = self.inner.next_move(state)?;
        Some(
            raw.vertices()
                .filter(|&v| v < self.tolerance.len())
                .map(|v| (v, self.tolerance[v].clone()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_game, EngineConfig, Winner};
    use crate::graph::complete_graph;
    use crate::lister::RandomLister;
    use crate::painter::UndirectedPainter;
    use crate::scalar::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn budgets() {
        let k = kappa_game(vec![q(1, 2); 3], vec![4; 3]).unwrap();
        assert_eq!(k.lambda, vec![q(2, 1); 3]);
        let k = kappa_game(vec![q(1, 3); 2], vec![3; 2]).unwrap();
        assert_eq!(k.lambda, vec![q(1, 1); 2]);
        assert_eq!(
            kappa_game(vec![q(0, 1)], vec![1]).unwrap_err(),
            EngineError::KappaTolerance(0)
        );
        assert_eq!(
            kappa_game(vec![q(1, 2)], vec![0]).unwrap_err(),
            EngineError::KappaCount(0)
        );
        assert_eq!(
            kappa_game(vec![q(1, 2)], vec![1, 2]).unwrap_err(),
            EngineError::KappaLength
        );
    }

    #[test]
    fn k2_single_presentation_is_lost() {
        let g = complete_graph::<Rational>(2);
        let game = kappa_game(vec![q(1, 2); 2], vec![1; 2]).unwrap();
        assert_eq!(game.lambda, vec![q(1, 2); 2]);
        let mut lister = game.wrap(crate::lister::CliqueLister::new(q(7, 1)));
        let mut painter = UndirectedPainter::new(g.clone()).unwrap();
        let trace = play_game(&g, &game.lambda, &mut lister, &mut painter, &EngineConfig::default()).unwrap();
        assert_eq!(trace.winner, Winner::Lister);
        assert!(trace.rounds[0].presented.iter().all(|(_, t)| *t == q(1, 2)));
    }

    #[test]
    fn wrapper_pins_tolerances() {
        let g = complete_graph::<Rational>(4);
        let game = kappa_game(vec![q(1, 4); 4], vec![4; 4]).unwrap();
        let mut lister = game.wrap(RandomLister::new(3));
        let mut painter = UndirectedPainter::new(g.clone()).unwrap();
        let trace = play_game(&g, &game.lambda, &mut lister, &mut painter, &EngineConfig::default()).unwrap();
        assert_eq!(trace.winner, Winner::Painter);
        for r in &trace.rounds {
            assert!(r.presented.iter().all(|(_, t)| *t == q(1, 4)));
        }
    }
}
