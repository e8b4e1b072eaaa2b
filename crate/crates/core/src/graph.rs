//! Positively weighted simple digraphs, their undirected (symmetric) view and
//! strongly connected decomposition.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::ops::Deref;

use thiserror::Error;

use crate::scalar::Scalar;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge {from}->{to}: vertex out of range for n={n}")]
    VertexOutOfRange { from: Vertex, to: Vertex, n: usize },
    #[error("edge {from}->{to}: self-loop")]
    SelfLoop { from: Vertex, to: Vertex },
    #[error("edge {from}->{to}: duplicate ordered pair")]
    DuplicateEdge { from: Vertex, to: Vertex },
    #[error("edge {from}->{to}: weight {weight} is not positive and finite")]
    BadWeight { from: Vertex, to: Vertex, weight: String },
    #[error("vertex {0} has no outgoing edge")]
    Sink(Vertex),
    #[error("edge {from}->{to} has no mirror of equal weight")]
    NotSymmetric { from: Vertex, to: Vertex },
}

/// A positively-edge-weighted simple directed graph on vertices `0..n`.
///
/// Out-adjacency lists are sorted by target, so every weight sum in the crate
/// is evaluated in the same order and floating results are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph<S> {
    out: Vec<Vec<(Vertex, S)>>,
    edge_count: usize,
}

impl<S: Scalar> WeightedDigraph<S> {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, S)>) -> Result<Self, GraphError> {
        let mut out: Vec<Vec<(Vertex, S)>> = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (from, to, weight) in edges {
            if from >= n || to >= n {
                return Err(GraphError::VertexOutOfRange { from, to, n });
            }
            if from == to {
                return Err(GraphError::SelfLoop { from, to });
            }
            if !weight.is_finite() || !weight.above_zero() {
                return Err(GraphError::BadWeight {
                    from,
                    to,
                    weight: weight.to_string(),
                });
            }
            out[from].push((to, weight));
            edge_count += 1;
        }
        for (from, list) in out.iter_mut().enumerate() {
            list.sort_by_key(|(to, _)| *to);
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(GraphError::DuplicateEdge { from, to: w[0].0 });
            }
        }
        Ok(Self { out, edge_count })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            out: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a symmetric digraph: each undirected edge becomes two arcs.
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, S)>) -> Result<Self, GraphError> {
        let arcs: Vec<_> = edges
            .into_iter()
            .flat_map(|(a, b, w)| [(a, b, w.clone()), (b, a, w)])
            .collect();
        Self::new(n, arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn out_edges(&self, v: Vertex) -> &[(Vertex, S)] {
        &self.out[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, &S)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().map(move |(w, s)| (v, *w, s)))
    }

    pub fn weight(&self, from: Vertex, to: Vertex) -> Option<&S> {
        let list = &self.out[from];
        list.binary_search_by_key(&to, |(w, _)| *w).ok().map(|i| &list[i].1)
    }

    /// Total weight of the outgoing edges of `v`; zero for a sink.
    pub fn out_weight(&self, v: Vertex) -> S {
        self.out[v].iter().map(|(_, s)| s.clone()).sum()
    }

    /// Total weight of edges from `v` into the vertices accepted by `inside`.
    pub fn out_weight_into(&self, v: Vertex, inside: impl Fn(Vertex) -> bool) -> S {
        self.out[v]
            .iter()
            .filter(|(w, _)| inside(*w))
            .map(|(_, s)| s.clone())
            .sum()
    }

    /// Rescales each vertex's outgoing weights to sum to one. The set of
    /// tau-majority colorings is unchanged by this per-vertex scaling.
    pub fn normalize_out_weights(&self) -> Result<Self, GraphError> {
        let mut out = Vec::with_capacity(self.out.len());
        for (v, list) in self.out.iter().enumerate() {
            if list.is_empty() {
                return Err(GraphError::Sink(v));
            }
            let total = self.out_weight(v);
            out.push(list.iter().map(|(w, s)| (*w, s.clone() / total.clone())).collect());
        }
        Ok(Self {
            out,
            edge_count: self.edge_count,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    fn symmetry_defect(&self) -> Option<(Vertex, Vertex)> {
        self.edges()
            .find(|&(v, w, s)| self.weight(w, v) != Some(s))
            .map(|(v, w, _)| (v, w))
    }

    /// `D[W]`: the subgraph on `vertices` with every edge whose endpoints both
    /// lie in it. Returns the graph on `0..|W|` and the map back to original ids.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Self, Vec<Vertex>) {
        let mut original: Vec<Vertex> = vertices.to_vec();
        original.sort_unstable();
        original.dedup();
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let mut edge_count = 0;
        let out = original
            .iter()
            .map(|&v| {
                let list: Vec<_> = self.out[v]
                    .iter()
                    .filter(|(w, _)| local[*w] != usize::MAX)
                    .map(|(w, s)| (local[*w], s.clone()))
                    .collect();
                edge_count += list.len();
                list
            })
            .collect();
        (Self { out, edge_count }, original)
    }

    pub fn map_weights<T: Scalar>(&self, f: impl Fn(&S) -> T) -> WeightedDigraph<T> {
        WeightedDigraph {
            out: self
                .out
                .iter()
                .map(|list| list.iter().map(|(w, s)| (*w, f(s))).collect())
                .collect(),
            edge_count: self.edge_count,
        }
    }

    pub fn condensation(&self) -> Condensation {
        Condensation::of(self)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.vertex_count() > 0 && self.condensation().len() == 1
    }
}

/// Complete undirected graph `K_n` with unit weights.
pub fn complete_graph<S: Scalar>(n: usize) -> WeightedDigraph<S> {
    let edges = (0..n).flat_map(|v| (0..n).filter(move |&w| w != v).map(move |w| (v, w, S::one())));
    WeightedDigraph::new(n, edges).expect("complete graph is valid")
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0` with unit weights.
pub fn directed_cycle<S: Scalar>(n: usize) -> WeightedDigraph<S> {
    WeightedDigraph::new(n, (0..n).map(|v| (v, (v + 1) % n, S::one()))).expect("valid cycle")
}

/// The circulant orientation of `K_{2k-1}` in which vertex `i` points to
/// `i+1, ..., i+k-1` (mod `2k-1`), so every out-degree is exactly `k-1`.
pub fn regular_tournament<S: Scalar>(k: usize) -> WeightedDigraph<S> {
    assert!(k >= 1);
    let n = 2 * k - 1;
    let edges = (0..n).flat_map(|v| (1..k).map(move |d| (v, (v + d) % n, S::one())));
    WeightedDigraph::new(n, edges).expect("valid tournament")
}

/// A [`WeightedDigraph`] known to satisfy `w(vw) = w(wv)` for every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedView<S>(WeightedDigraph<S>);

impl<S: Scalar> UndirectedView<S> {
    pub fn new(graph: WeightedDigraph<S>) -> Result<Self, GraphError> {
        match graph.symmetry_defect() {
            Some((from, to)) => Err(GraphError::NotSymmetric { from, to }),
            None => Ok(Self(graph)),
        }
    }

    pub fn graph(&self) -> &WeightedDigraph<S> {
        &self.0
    }

    pub fn into_inner(self) -> WeightedDigraph<S> {
        self.0
    }
}

impl<S> Deref for UndirectedView<S> {
    type Target = WeightedDigraph<S>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

/// Strongly connected components in topological order of the component DAG:
/// every inter-component edge goes from an earlier component to a later one.
/// Among valid orders, the one choosing the component with the smallest
/// vertex first at each step is used. Vertices inside a component are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    components: Vec<Vec<Vertex>>,
    component_of: Vec<usize>,
}

impl Condensation {
    pub fn of<S: Scalar>(g: &WeightedDigraph<S>) -> Self {
        let n = g.vertex_count();
        let raw = tarjan(g);

        let mut raw_of = vec![0; n];
        for (c, comp) in raw.iter().enumerate() {
            for &v in comp {
                raw_of[v] = c;
            }
        }
        let k = raw.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut indegree = vec![0usize; k];
        for (v, w, _) in g.edges() {
            let (a, b) = (raw_of[v], raw_of[w]);
            if a != b {
                succ[a].push(b);
            }
        }
        for list in succ.iter_mut() {
            list.sort_unstable();
            list.dedup();
            for &b in list.iter() {
                indegree[b] += 1;
            }
        }

        let min_vertex: Vec<Vertex> = raw.iter().map(|c| c[0]).collect();
        let mut ready: BinaryHeap<Reverse<(Vertex, usize)>> = (0..k)
            .filter(|&c| indegree[c] == 0)
            .map(|c| Reverse((min_vertex[c], c)))
            .collect();
        let mut components = Vec::with_capacity(k);
        let mut component_of = vec![0; n];
        while let Some(Reverse((_, c))) = ready.pop() {
            let idx = components.len();
            for &v in &raw[c] {
                component_of[v] = idx;
            }
            components.push(raw[c].clone());
            for &b in &succ[c] {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(Reverse((min_vertex[b], b)));
                }
            }
        }
        debug_assert_eq!(components.len(), k);
        Self {
            components,
            component_of,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.components
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component_of[v]
    }

    /// Components with no edge entering them from another component.
    pub fn sources<S: Scalar>(&self, g: &WeightedDigraph<S>) -> Vec<usize> {
        let mut entered = vec![false; self.len()];
        for (v, w, _) in g.edges() {
            let (a, b) = (self.component_of[v], self.component_of[w]);
            if a != b {
                entered[b] = true;
            }
        }
        (0..self.len()).filter(|&c| !entered[c]).collect()
    }
}

/// Iterative Tarjan; each returned component is sorted.
fn tarjan<S: Scalar>(g: &WeightedDigraph<S>) -> Vec<Vec<Vertex>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (vertex, position in its out-edge list)
    let mut call: Vec<(Vertex, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            let edges = g.out_edges(v);
            if pos < edges.len() {
                let w = edges[pos].0;
                if let Some(top) = call.last_mut() {
                    top.1 += 1;
                }
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components
}

/// Edge weights keyed by unordered pair, handy for building symmetric graphs.
pub(crate) fn symmetric_from_pairs<S: Scalar>(
    n: usize,
    pairs: BTreeMap<(Vertex, Vertex), S>,
) -> Result<UndirectedView<S>, GraphError> {
    let g = WeightedDigraph::undirected(n, pairs.into_iter().map(|((a, b), w)| (a, b, w)))?;
    Ok(UndirectedView(g))
}
