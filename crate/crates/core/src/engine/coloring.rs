use super::{GameTrace, Winner};
use crate::graph::{Vertex, WeightedDigraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct ColoringViolation<S> {
    pub vertex: Vertex,
    pub monochromatic: S,
    pub allowed: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColoringReport<S> {
    pub violations: Vec<ColoringViolation<S>>,
}

impl<S> ColoringReport<S> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The round-indexed coloring of a game Painter won.
pub fn coloring_from_trace<S: Scalar>(trace: &GameTrace<S>) -> Option<Vec<usize>> {
    if trace.winner != Winner::Painter {
        return None;
    }
    trace.coloring.iter().copied().collect()
}

fn check<S: Scalar>(
    g: &WeightedDigraph<S>,
    coloring: &[usize],
    allowed: impl Fn(Vertex, usize) -> S,
) -> ColoringReport<S> {
    assert_eq!(coloring.len(), g.vertex_count(), "coloring length");
    let violations = (0..g.vertex_count())
        .filter_map(|v| {
            let monochromatic = g.out_weight_into(v, |w| coloring[w] == coloring[v]);
            let allowed = allowed(v, coloring[v]);
            (monochromatic > allowed).then_some(ColoringViolation {
                vertex: v,
                monochromatic,
                allowed,
            })
        })
        .collect();
    ColoringReport { violations }
}

/// tau-majority check: `mono(v) <= tau(v, c(v)) * out_weight(v)` for all `v`.
/// The tolerance may depend on the color (per-round tolerances).
pub fn verify_coloring<S: Scalar>(
    g: &WeightedDigraph<S>,
    coloring: &[usize],
    tolerance: impl Fn(Vertex, usize) -> S,
) -> ColoringReport<S> {
    check(g, coloring, |v, c| tolerance(v, c) * g.out_weight(v))
}

/// Ranked check: `mono(v) <= rank(v, c(v))` for all `v`.
pub fn verify_ranked_coloring<S: Scalar>(
    g: &WeightedDigraph<S>,
    coloring: &[usize],
    rank: impl Fn(Vertex, usize) -> S,
) -> ColoringReport<S> {
    check(g, coloring, rank)
}
