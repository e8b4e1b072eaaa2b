//! Random instances for tests and batch verification. All weights are
//! integers so that the exact backend stays cheap.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Vertex, WeightedDigraph};
use crate::lister::{ListAssignment, ListLister};
use crate::scalar::Scalar;

/// Generator for trial `trial` of a run seeded with `seed`. Streams are
/// independent, so trials can run in any order or in parallel.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn weight<S: Scalar>(rng: &mut impl Rng, max_weight: i64) -> S {
    S::from_i64(rng.gen_range(1..=max_weight.max(1)))
}

/// Symmetric graph: each pair is an edge with probability `p`.
pub fn random_undirected<S: Scalar>(rng: &mut impl Rng, n: usize, p: f64, max_weight: i64) -> WeightedDigraph<S> {
    let mut edges = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            if rng.gen_bool(p) {
                edges.push((v, w, weight::<S>(rng, max_weight)));
            }
        }
    }
    WeightedDigraph::undirected(n, edges).expect("valid by construction")
}

/// Each ordered pair is an arc with probability `p`.
pub fn random_digraph<S: Scalar>(rng: &mut impl Rng, n: usize, p: f64, max_weight: i64) -> WeightedDigraph<S> {
    let mut edges = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if v != w && rng.gen_bool(p) {
                edges.push((v, w, weight::<S>(rng, max_weight)));
            }
        }
    }
    WeightedDigraph::new(n, edges).expect("valid by construction")
}

fn strongly_connected_arcs(rng: &mut impl Rng, block: &[Vertex], p: f64, arcs: &mut BTreeMap<(Vertex, Vertex), ()>) {
    if block.len() < 2 {
        return;
    }
    let mut order = block.to_vec();
    order.shuffle(rng);
    for i in 0..order.len() {
        arcs.insert((order[i], order[(i + 1) % order.len()]), ());
    }
    for &v in block {
        for &w in block {
            if v != w && rng.gen_bool(p) {
                arcs.insert((v, w), ());
            }
        }
    }
}

fn weighted<S: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    arcs: BTreeMap<(Vertex, Vertex), ()>,
    max_weight: i64,
) -> WeightedDigraph<S> {
    let edges: Vec<_> = arcs
        .into_keys()
        .map(|(v, w)| (v, w, weight::<S>(rng, max_weight)))
        .collect();
    WeightedDigraph::new(n, edges).expect("valid by construction")
}

/// A random Hamiltonian cycle plus arcs with probability `p`; `n >= 2`.
pub fn random_strongly_connected<S: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    p: f64,
    max_weight: i64,
) -> WeightedDigraph<S> {
    let mut arcs = BTreeMap::new();
    strongly_connected_arcs(rng, &(0..n).collect::<Vec<_>>(), p, &mut arcs);
    weighted(rng, n, arcs, max_weight)
}

/// A digraph with at least two strongly connected components: vertices are
/// shuffled into 2 or more blocks, each block is strongly connected, and
/// arcs between blocks only point from earlier to later blocks. `n >= 2`.
pub fn random_multi_scc<S: Scalar>(rng: &mut impl Rng, n: usize, p: f64, max_weight: i64) -> WeightedDigraph<S> {
    assert!(n >= 2, "need two vertices for two components");
    let mut vertices: Vec<Vertex> = (0..n).collect();
    vertices.shuffle(rng);
    let blocks = rng.gen_range(2..=n.min(4));
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(blocks - 1).collect();
    cuts.sort_unstable();
    let mut parts = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([n]) {
        parts.push(vertices[start..c].to_vec());
        start = c;
    }
    let mut arcs = BTreeMap::new();
    for part in &parts {
        strongly_connected_arcs(rng, part, p, &mut arcs);
    }
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for &v in a {
                for &w in b {
                    if rng.gen_bool(p / 2.0) {
                        arcs.insert((v, w), ());
                    }
                }
            }
        }
    }
    weighted(rng, n, arcs, max_weight)
}

/// Lists of `len` distinct colors drawn from `1..=palette`.
pub fn random_lists<S: Scalar>(rng: &mut impl Rng, n: usize, len: usize, palette: u32) -> ListAssignment<S> {
    assert!(len >= 1 && len as u32 <= palette, "list length must fit the palette");
    let colors: Vec<u32> = (1..=palette).collect();
    let lists = (0..n)
        .map(|_| colors.choose_multiple(rng, len).copied().collect())
        .collect();
    ListAssignment::plain(lists).expect("non-empty lists of positive colors")
}

/// Ranked lists whose ranks at `v` sum to at least `out_weight(v)`: random
/// positive shares of the out-weight, plus occasional slack.
pub fn random_ranked_lists<S: Scalar>(
    rng: &mut impl Rng,
    g: &WeightedDigraph<S>,
    len: usize,
    palette: u32,
) -> ListAssignment<S> {
    let plain: ListAssignment<S> = random_lists(rng, g.vertex_count(), len, palette);
    let lists = (0..g.vertex_count())
        .map(|v| {
            let mut shares: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=6)).collect();
            if shares.iter().all(|&s| s == 0) {
                shares[0] = 1;
            }
            let total: i64 = shares.iter().sum();
            let slack = S::from_ratio(rng.gen_range(0..=2), 4);
            let base = g.out_weight(v) + slack;
            plain
                .colors(v)
                .zip(&shares)
                .map(|(c, &s)| (c, Some(base.clone() * S::from_ratio(s, total))))
                .collect()
        })
        .collect();
    ListAssignment::new(lists).expect("non-empty lists of positive colors")
}

/// Convenience: a constant-tolerance list lister for uniform `tau`.
pub fn uniform_list_lister<S: Scalar>(lists: ListAssignment<S>, tau: S) -> ListLister<S> {
    let n = lists.vertex_count();
    ListLister::new(lists, vec![tau; n]).expect("lengths agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| trial_rng(1, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| trial_rng(1, 3).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(trial_rng(1, 3).gen::<u64>(), trial_rng(1, 4).gen::<u64>());
    }

    #[test]
    fn generators_meet_their_contracts() {
        for t in 0..50 {
            let mut rng = trial_rng(9, t);
            let n = rng.gen_range(2..=12);
            assert!(random_undirected::<Rational>(&mut rng, n, 0.5, 10).is_symmetric());
            assert!(random_strongly_connected::<Rational>(&mut rng, n, 0.2, 10).is_strongly_connected());
            let multi = random_multi_scc::<Rational>(&mut rng, n, 0.4, 10);
            assert!(multi.condensation().len() >= 2);
            let lists = random_lists::<Rational>(&mut rng, n, 3, 5);
            assert!((0..n).all(|v| lists.list_len(v) == 3));
            let g = random_digraph::<Rational>(&mut rng, n, 0.3, 10);
            let ranked = random_ranked_lists(&mut rng, &g, 2, 4);
            for v in 0..n {
                let total: Rational = ranked.entries(v).map(|(_, r)| r.unwrap().clone()).sum();
                assert!(total >= g.out_weight(v));
            }
        }
    }
}
