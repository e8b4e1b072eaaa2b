#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;

use majority_paint::kernel::RankFunction;
use majority_paint::{Rational, Scalar, UndirectedView, Vertex, WeightedDigraph};

pub fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

fn dedup_arcs(n: usize, raw: Vec<(usize, usize, i64)>) -> Vec<(Vertex, Vertex, i64)> {
    let mut seen = BTreeMap::new();
    for (v, w, x) in raw {
        if v != w && v < n && w < n {
            seen.entry((v, w)).or_insert(x);
        }
    }
    seen.into_iter().map(|((v, w), x)| (v, w, x)).collect()
}

/// Digraphs on `1..=max_n` vertices with integer weights `1..=10`.
pub fn digraph<S: Scalar>(max_n: usize) -> impl Strategy<Value = WeightedDigraph<S>> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, 1i64..=10), 0..=n * n)))
        .prop_map(|(n, raw)| {
            let edges = dedup_arcs(n, raw).into_iter().map(|(v, w, x)| (v, w, S::from_i64(x)));
            WeightedDigraph::new(n, edges).unwrap()
        })
}

/// Undirected graphs on `1..=max_n` vertices with integer weights `1..=10`.
pub fn undirected<S: Scalar>(max_n: usize) -> impl Strategy<Value = UndirectedView<S>> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, 1i64..=10), 0..=n * n / 2)))
        .prop_map(|(n, raw)| {
            let pairs = dedup_arcs(n, raw.into_iter().map(|(v, w, x)| (v.min(w), v.max(w), x)).collect());
            let g = WeightedDigraph::undirected(n, pairs.into_iter().map(|(v, w, x)| (v, w, S::from_i64(x)))).unwrap();
            UndirectedView::new(g).unwrap()
        })
}

/// A graph with a rank function on a subset of its vertices. Ranks are
/// `out_weight * a/10 + b/10` with `a in 0..=10`, `b in -3..=3`.
pub fn ranked_undirected(max_n: usize) -> impl Strategy<Value = (UndirectedView<Rational>, RankFunction<Rational>)> {
    undirected::<Rational>(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        let picks = prop::collection::vec((any::<bool>(), 0i64..=10, -3i64..=3), n);
        (Just(g), picks).prop_map(|(g, picks)| {
            let ranks = picks
                .into_iter()
                .enumerate()
                .filter(|(_, (keep, _, _))| *keep)
                .map(|(v, (_, a, b))| (v, g.out_weight(v) * q(a, 10) + q(b, 10)))
                .collect();
            (g, ranks)
        })
    })
}

/// `rho(Y) - w(E[Y])` computed from scratch.
pub fn half_cost(g: &WeightedDigraph<Rational>, ranks: &RankFunction<Rational>, y: &[Vertex]) -> Rational {
    let mut value: Rational = y.iter().map(|&v| ranks.get(v).unwrap().clone()).sum();
    for (v, w, x) in g.edges() {
        if v < w && y.contains(&v) && y.contains(&w) {
            value -= x;
        }
    }
    value
}

/// Every subset of the rank domain.
pub fn subsets(ranks: &RankFunction<Rational>) -> Vec<Vec<Vertex>> {
    let xs: Vec<Vertex> = ranks.domain().collect();
    (0u32..1 << xs.len())
        .map(|m| {
            xs.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}
