//! Kernel selection on undirected weighted graphs.
//!
//! Given a presented set `X` and real ranks `rho` on it, a *kernel* is a
//! subset `Y` of `X` such that for every `v` in `X`:
//!
//! ```text
//! v in Y  <=>  rho(v) >= sum of w(vw) over neighbours w in Y
//! ```
//!
//! Such a set always exists: any maximizer of
//!
//! ```text
//! cost(Y) = sum_{v in Y} (2 rho(v) - Xtotal(v)) + w(cut(Y, X \ Y))
//! ```
//!
//! that is largest among maximizers is a kernel. [`KernelSearch`] reaches a
//! kernel by local search whose accepted moves strictly increase
//! `(cost, |Y|)` lexicographically. Local optima need not be global ones
//! (path `a - b - c`, unit weights, ranks `0.6, 1, 0.6` stops at `{b}`), so
//! [`select_kernel`] follows the search with an exact branch and bound on
//! small presented sets.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{UndirectedView, Vertex, WeightedDigraph};
use crate::scalar::Scalar;

/// Default cap on `|X|` for exhaustive enumeration.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 20;

/// Largest `|X|` for which [`select_kernel`] returns a global maximizer.
pub const EXACT_KERNEL_BOUND: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("presented set has {size} vertices, brute force is capped at {bound}")]
    TooLarge { size: usize, bound: usize },
}

/// Real ranks on the presented set; the domain of the map *is* `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankFunction<S> {
    ranks: BTreeMap<Vertex, S>,
}

impl<S: Scalar> RankFunction<S> {
    pub fn new(ranks: BTreeMap<Vertex, S>) -> Self {
        Self { ranks }
    }

    pub fn uniform(domain: impl IntoIterator<Item = Vertex>, rank: S) -> Self {
        Self {
            ranks: domain.into_iter().map(|v| (v, rank.clone())).collect(),
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.ranks.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<&S> {
        self.ranks.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &S)> + '_ {
        self.ranks.iter().map(|(v, s)| (*v, s))
    }

    pub fn scaled(&self, factor: &S) -> Self {
        Self {
            ranks: self
                .ranks
                .iter()
                .map(|(v, s)| (*v, s.clone() * factor.clone()))
                .collect(),
        }
    }
}

impl<S: Scalar> FromIterator<(Vertex, S)> for RankFunction<S> {
    fn from_iter<I: IntoIterator<Item = (Vertex, S)>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// A kernel together with the quantities that certify it.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCertificate<S> {
    /// `Y`, sorted.
    pub members: Vec<Vertex>,
    pub cost: S,
    /// For each `v` in `X`: weight of edges from `v` into `Y`.
    pub weight_into_kernel: BTreeMap<Vertex, S>,
    /// For each `v` in `X`: weight of edges from `v` into `X`.
    pub weight_into_presented: BTreeMap<Vertex, S>,
}

impl<S: Scalar> KernelCertificate<S> {
    /// Weight of edges from `v` into `X \ Y`.
    pub fn weight_outside_kernel(&self, v: Vertex) -> Option<S> {
        Some(self.weight_into_presented.get(&v)?.clone() - self.weight_into_kernel.get(&v)?.clone())
    }
}

fn membership(n: usize, set: impl IntoIterator<Item = Vertex>) -> Vec<bool> {
    let mut mask = vec![false; n];
    for v in set {
        mask[v] = true;
    }
    mask
}

/// `cost(Y)` for `Y` a subset of the rank domain. Cut edges are counted once,
/// in the orientation leaving `Y`.
pub fn cost_of<S: Scalar>(g: &WeightedDigraph<S>, ranks: &RankFunction<S>, kernel: &[Vertex]) -> S {
    let n = g.vertex_count();
    let in_x = membership(n, ranks.domain());
    let in_y = membership(n, kernel.iter().copied());
    let two = S::from_i64(2);
    let mut cost = S::zero();
    for &v in kernel {
        let rho = ranks.get(v).expect("kernel must lie inside the rank domain");
        let x_total = g.out_weight_into(v, |w| in_x[w]);
        let cut = g.out_weight_into(v, |w| in_x[w] && !in_y[w]);
        cost = cost + two.clone() * rho.clone() - x_total + cut;
    }
    cost
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `v` is in `Y` but its rank is below its weight into `Y`.
    InsideOverloaded,
    /// `v` is outside `Y` although its rank covers its weight into `Y`.
    OutsideAdmissible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelViolation<S> {
    pub vertex: Vertex,
    pub kind: ViolationKind,
    pub rank: S,
    pub weight_into_kernel: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelCheck<S> {
    pub violations: Vec<KernelViolation<S>>,
}

impl<S> KernelCheck<S> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both directions of the kernel condition at every `v` in `X`.
pub fn kernel_condition_holds<S: Scalar>(
    g: &WeightedDigraph<S>,
    ranks: &RankFunction<S>,
    kernel: &[Vertex],
) -> KernelCheck<S> {
    let in_y = membership(g.vertex_count(), kernel.iter().copied());
    let violations = ranks
        .iter()
        .filter_map(|(v, rho)| {
            let load = g.out_weight_into(v, |w| in_y[w]);
            let admissible = *rho >= load;
            let kind = match (in_y[v], admissible) {
                (true, false) => ViolationKind::InsideOverloaded,
                (false, true) => ViolationKind::OutsideAdmissible,
                _ => return None,
            };
            Some(KernelViolation {
                vertex: v,
                kind,
                rank: rho.clone(),
                weight_into_kernel: load,
            })
        })
        .collect();
    KernelCheck { violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMove {
    Add(Vertex),
    Remove(Vertex),
}

/// Local search state. Each [`KernelSearch::step`] applies one improving move;
/// the search is finished once every vertex of `X` has been checked in a row
/// without a move.
#[derive(Debug, Clone)]
pub struct KernelSearch<'a, S> {
    graph: &'a WeightedDigraph<S>,
    ranks: &'a RankFunction<S>,
    order: Vec<Vertex>,
    in_y: Vec<bool>,
    cursor: usize,
}

impl<'a, S: Scalar> KernelSearch<'a, S> {
    pub fn new(graph: &'a UndirectedView<S>, ranks: &'a RankFunction<S>) -> Self {
        Self {
            graph: graph.graph(),
            ranks,
            order: ranks.domain().collect(),
            in_y: vec![false; graph.vertex_count()],
            cursor: 0,
        }
    }

    /// Starts the search from `start` instead of the empty set.
    pub fn starting_from(graph: &'a UndirectedView<S>, ranks: &'a RankFunction<S>, start: &[Vertex]) -> Self {
        let mut search = Self::new(graph, ranks);
        for &v in start.iter().filter(|&&v| ranks.get(v).is_some()) {
            search.in_y[v] = true;
        }
        search
    }

    pub fn step(&mut self) -> Option<SearchMove> {
        let len = self.order.len();
        for _ in 0..len {
            let v = self.order[self.cursor];
            self.cursor = (self.cursor + 1) % len;
            let in_y = &self.in_y;
            let load = self.graph.out_weight_into(v, |w| in_y[w]);
            let rho = self.ranks.get(v).expect("order is the rank domain");
            match (self.in_y[v], *rho >= load) {
                (false, true) => {
                    self.in_y[v] = true;
                    return Some(SearchMove::Add(v));
                }
                (true, false) => {
                    self.in_y[v] = false;
                    return Some(SearchMove::Remove(v));
                }
                _ => {}
            }
        }
        None
    }

    pub fn members(&self) -> Vec<Vertex> {
        self.order.iter().copied().filter(|&v| self.in_y[v]).collect()
    }

    pub fn finish(mut self) -> KernelCertificate<S> {
        while self.step().is_some() {}
        let members = self.members();
        let in_x = membership(self.graph.vertex_count(), self.order.iter().copied());
        let in_y = &self.in_y;
        let weight_into_kernel = self
            .order
            .iter()
            .map(|&v| (v, self.graph.out_weight_into(v, |w| in_y[w])))
            .collect();
        let weight_into_presented = self
            .order
            .iter()
            .map(|&v| (v, self.graph.out_weight_into(v, |w| in_x[w])))
            .collect();
        KernelCertificate {
            cost: cost_of(self.graph, self.ranks, &members),
            members,
            weight_into_kernel,
            weight_into_presented,
        }
    }
}

/// Finds a kernel of `X = domain(ranks)`. Local search from `Y = {}` in
/// ascending vertex order gives a first kernel; when `|X|` is at most
/// [`EXACT_KERNEL_BOUND`] it is replaced by the lexicographic maximizer of
/// `(cost, |Y|)` if that is strictly better. Deterministic either way.
pub fn select_kernel<S: Scalar>(g: &UndirectedView<S>, ranks: &RankFunction<S>) -> KernelCertificate<S> {
    let local = KernelSearch::new(g, ranks).finish();
    if ranks.len() > EXACT_KERNEL_BOUND {
        return local;
    }
    match maximize_cost(g, ranks, &local.members) {
        Some(better) => KernelSearch::starting_from(g, ranks, &better).finish(),
        None => local,
    }
}

struct BranchAndBound<S> {
    ranks: Vec<S>,
    // Neighbours inside X, by position in the domain order.
    adj: Vec<Vec<(usize, S)>>,
    load: Vec<S>,
    chosen: Vec<bool>,
    best_value: S,
    best_size: usize,
    best: Option<Vec<bool>>,
}

impl<S: Scalar> BranchAndBound<S> {
    // value(Y) = rho(Y) - w(E[Y]) = cost(Y) / 2.
    fn search(&mut self, i: usize, value: S, size: usize) {
        let m = self.ranks.len();
        if i == m {
            if value > self.best_value || (value == self.best_value && size > self.best_size) {
                self.best_value = value;
                self.best_size = size;
                self.best = Some(self.chosen.clone());
            }
            return;
        }
        let mut bound_value = value.clone();
        let mut bound_size = size;
        for j in i..m {
            let gain = self.ranks[j].clone() - self.load[j].clone();
            if !gain.below_zero() {
                bound_value = bound_value + gain;
                bound_size += 1;
            }
        }
        if bound_value < self.best_value || (bound_value == self.best_value && bound_size <= self.best_size) {
            return;
        }
        // A vertex whose gain is already negative only loses more later, and
        // removing it from any completion would raise the value.
        let gain = self.ranks[i].clone() - self.load[i].clone();
        if !gain.below_zero() {
            self.chosen[i] = true;
            for k in 0..self.adj[i].len() {
                let (w, ref wt) = self.adj[i][k];
                self.load[w] = self.load[w].clone() + wt.clone();
            }
            self.search(i + 1, value.clone() + gain, size + 1);
            for k in 0..self.adj[i].len() {
                let (w, ref wt) = self.adj[i][k];
                self.load[w] = self.load[w].clone() - wt.clone();
            }
            self.chosen[i] = false;
        }
        self.search(i + 1, value, size);
    }
}

/// The lexicographic maximizer of `(cost, |Y|)` over subsets of `X`, if it
/// beats `incumbent`. Exponential in `|X|` in the worst case.
pub fn maximize_cost<S: Scalar>(
    g: &WeightedDigraph<S>,
    ranks: &RankFunction<S>,
    incumbent: &[Vertex],
) -> Option<Vec<Vertex>> {
    let order: Vec<Vertex> = ranks.domain().collect();
    let mut position = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let adj: Vec<Vec<(usize, S)>> = order
        .iter()
        .map(|&v| {
            g.out_edges(v)
                .iter()
                .filter(|(w, _)| position[*w] != usize::MAX)
                .map(|(w, wt)| (position[*w], wt.clone()))
                .collect()
        })
        .collect();
    let in_inc = membership(g.vertex_count(), incumbent.iter().copied());
    let two = S::from_i64(2);
    let best_value = incumbent
        .iter()
        .map(|&v| ranks.get(v).expect("incumbent inside X").clone() - g.out_weight_into(v, |w| in_inc[w]) / two.clone())
        .sum();
    let mut bb = BranchAndBound {
        ranks: order.iter().map(|&v| ranks.get(v).expect("domain").clone()).collect(),
        adj,
        load: vec![S::zero(); order.len()],
        chosen: vec![false; order.len()],
        best_value,
        best_size: incumbent.len(),
        best: None,
    };
    bb.search(0, S::zero(), 0);
    bb.best
        .map(|mask| order.iter().zip(mask).filter(|(_, c)| *c).map(|(&v, _)| v).collect())
}

/// Every kernel of `X`, by enumeration of all `2^|X|` subsets. Subsets are
/// listed in increasing bitmask order over the sorted domain.
pub fn brute_force_kernels<S: Scalar>(
    g: &WeightedDigraph<S>,
    ranks: &RankFunction<S>,
    bound: usize,
) -> Result<Vec<Vec<Vertex>>, KernelError> {
    let domain: Vec<Vertex> = ranks.domain().collect();
    if domain.len() > bound || domain.len() >= usize::BITS as usize {
        return Err(KernelError::TooLarge {
            size: domain.len(),
            bound,
        });
    }
    let mut found = Vec::new();
    for mask in 0usize..(1 << domain.len()) {
        let subset: Vec<Vertex> = domain
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if kernel_condition_holds(g, ranks, &subset).holds() {
            found.push(subset);
        }
    }
    Ok(found)
}
