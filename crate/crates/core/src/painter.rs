//! Painter strategies.
//!
//! * [`UndirectedPainter`]: ranks `rho(v) = tau(v) * out_weight(v)` and a
//!   kernel of the presented set. Wins with budget 1 on symmetric graphs.
//! * [`SccPainter`]: moves the game to the symmetrized graph of a strongly
//!   connected digraph with halved tolerances. Wins with budget 2.
//! * [`GeneralPainter`]: one inner strategy per strongly connected component,
//!   components handled sinks first, each vertex's rank reduced by the weight
//!   already committed downstream. Wins with budget 2 on any digraph.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::graph::{Condensation, GraphError, UndirectedView, Vertex, WeightedDigraph};
use crate::kernel::{select_kernel, KernelCertificate, RankFunction};
use crate::lister::ListerMove;
use crate::scalar::Scalar;
use crate::spectral::{
    left_eigenvector, symmetrized_graph, LeftEigenvector, SpectralError, DEFAULT_RESIDUAL_TOLERANCE,
};

pub trait Painter<S: Scalar> {
    /// Answers a filtered move with the set of vertices to color this round.
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex>;
}

impl<S: Scalar, P: Painter<S> + ?Sized> Painter<S> for &mut P {
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex> {
        (**self).respond(mv)
    }
}

impl<S: Scalar, P: Painter<S> + ?Sized> Painter<S> for Box<P> {
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex> {
        (**self).respond(mv)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PainterError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone)]
pub struct UndirectedPainter<S> {
    graph: UndirectedView<S>,
    last: Option<KernelCertificate<S>>,
}

impl<S: Scalar> UndirectedPainter<S> {
    pub fn new(graph: WeightedDigraph<S>) -> Result<Self, GraphError> {
        Ok(Self::from_view(UndirectedView::new(graph)?))
    }

    pub fn from_view(graph: UndirectedView<S>) -> Self {
        Self { graph, last: None }
    }

    pub fn graph(&self) -> &UndirectedView<S> {
        &self.graph
    }

    /// Certificate of the most recent response.
    pub fn last_certificate(&self) -> Option<&KernelCertificate<S>> {
        self.last.as_ref()
    }

    pub fn ranks(&self, mv: &ListerMove<S>) -> RankFunction<S> {
        mv.iter()
            .map(|(v, t)| (v, t.clone() * self.graph.out_weight(v)))
            .collect()
    }
}

impl<S: Scalar> Painter<S> for UndirectedPainter<S> {
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex> {
        let ranks = self.ranks(mv);
        let cert = select_kernel(&self.graph, &ranks);
        let members = cert.members.clone();
        self.last = Some(cert);
        members
    }
}

/// Colors every presented vertex with a non-negative tolerance. Only valid
/// on graphs without edges.
#[derive(Debug, Clone, Copy, Default)]
pub struct EdgelessPainter;

impl<S: Scalar> Painter<S> for EdgelessPainter {
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex> {
        mv.iter().filter(|(_, t)| !t.below_zero()).map(|(v, _)| v).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SccPainter<S> {
    eigen: LeftEigenvector<S>,
    inner: UndirectedPainter<S>,
}

impl<S: Scalar> SccPainter<S> {
    pub fn new(graph: &WeightedDigraph<S>) -> Result<Self, PainterError> {
        Self::with_tolerance(graph, DEFAULT_RESIDUAL_TOLERANCE)
    }

    pub fn with_tolerance(graph: &WeightedDigraph<S>, tolerance: f64) -> Result<Self, PainterError> {
        let comps = graph.condensation().len();
        if comps != 1 {
            return Err(SpectralError::NotStronglyConnected { components: comps }.into());
        }
        let normalized = graph.normalize_out_weights()?;
        let eigen = left_eigenvector(&normalized, tolerance)?;
        let symmetric = symmetrized_graph(&normalized, &eigen);
        Ok(Self {
            eigen,
            inner: UndirectedPainter::from_view(symmetric),
        })
    }

    pub fn eigenvector(&self) -> &LeftEigenvector<S> {
        &self.eigen
    }

    pub fn symmetrized(&self) -> &UndirectedView<S> {
        self.inner.graph()
    }

    pub fn inner(&self) -> &UndirectedPainter<S> {
        &self.inner
    }
}

impl<S: Scalar> Painter<S> for SccPainter<S> {
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex> {
        let two = S::from_i64(2);
        let halved: ListerMove<S> = mv.iter().map(|(v, t)| (v, t.clone() / two.clone())).collect();
        self.inner.respond(&halved)
    }
}

/// One presented vertex's passage through the rank reduction of a round.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReduction<S> {
    pub vertex: Vertex,
    pub tolerance: S,
    pub out_weight: S,
    /// Weight of edges from the vertex into vertices already selected this
    /// round in components downstream of its own.
    pub weight_into_selected: S,
    /// `tolerance * out_weight - weight_into_selected`.
    pub rank: S,
    /// Weight of edges staying inside the vertex's component.
    pub internal_weight: S,
    /// Tolerance passed to the component strategy; `None` when the vertex was
    /// dropped (negative rank) or its component has no edges.
    pub inner_tolerance: Option<S>,
}

#[derive(Debug, Clone)]
enum ComponentStrategy<S> {
    Edgeless,
    Scc(Box<SccPainter<S>>),
}

#[derive(Debug, Clone)]
struct ComponentGame<S> {
    vertices: Vec<Vertex>,
    internal_weight: Vec<S>,
    strategy: ComponentStrategy<S>,
}

#[derive(Debug, Clone)]
pub struct GeneralPainter<S> {
    graph: WeightedDigraph<S>,
    condensation: Condensation,
    components: Vec<ComponentGame<S>>,
    last: Vec<RankReduction<S>>,
}

impl<S: Scalar> GeneralPainter<S> {
    pub fn new(graph: WeightedDigraph<S>) -> Result<Self, PainterError> {
        Self::with_tolerance(graph, DEFAULT_RESIDUAL_TOLERANCE)
    }

    pub fn with_tolerance(graph: WeightedDigraph<S>, tolerance: f64) -> Result<Self, PainterError> {
        let condensation = graph.condensation();
        let mut components = Vec::with_capacity(condensation.len());
        for comp in condensation.components() {
            let (sub, _) = graph.induced_subgraph(comp);
            let internal_weight = (0..sub.vertex_count()).map(|i| sub.out_weight(i)).collect();
            let strategy = if sub.edge_count() == 0 {
                ComponentStrategy::Edgeless
            } else {
                ComponentStrategy::Scc(Box::new(SccPainter::with_tolerance(&sub, tolerance)?))
            };
            components.push(ComponentGame {
                vertices: comp.clone(),
                internal_weight,
                strategy,
            });
        }
        Ok(Self {
            graph,
            condensation,
            components,
            last: Vec::new(),
        })
    }

    pub fn condensation(&self) -> &Condensation {
        &self.condensation
    }

    /// Rank reductions of the most recent response, in processing order.
    pub fn last_reductions(&self) -> &[RankReduction<S>] {
        &self.last
    }
}

impl<S: Scalar> Painter<S> for GeneralPainter<S> {
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex> {
        let n = self.graph.vertex_count();
        let mut selected = vec![false; n];
        self.last.clear();

        for comp in self.components.iter_mut().rev() {
            let mut inner: BTreeMap<Vertex, S> = BTreeMap::new();
            for (local, &v) in comp.vertices.iter().enumerate() {
                let Some(tau) = mv.tolerance(v) else { continue };
                let out_weight = self.graph.out_weight(v);
                let weight_into_selected = self.graph.out_weight_into(v, |w| selected[w]);
                let rank = tau.clone() * out_weight.clone() - weight_into_selected.clone();
                let internal = comp.internal_weight[local].clone();
                let inner_tolerance = if rank.below_zero() || internal.is_zero() {
                    None
                } else {
                    Some(rank.clone() / internal.clone())
                };
                if !rank.below_zero() {
                    // Edgeless components only look at the sign.
                    inner.insert(local, inner_tolerance.clone().unwrap_or_else(|| rank.clone()));
                }
                self.last.push(RankReduction {
                    vertex: v,
                    tolerance: tau.clone(),
                    out_weight,
                    weight_into_selected,
                    rank,
                    internal_weight: internal,
                    inner_tolerance,
                });
            }
            if inner.is_empty() {
                continue;
            }
            let inner = ListerMove::new(inner);
            let chosen = match &mut comp.strategy {
                ComponentStrategy::Edgeless => EdgelessPainter.respond(&inner),
                ComponentStrategy::Scc(p) => p.respond(&inner),
            };
            for local in chosen {
                selected[comp.vertices[local]] = true;
            }
        }
        (0..n).filter(|&v| selected[v]).collect()
    }
}

/// Replays a fixed list of responses; answers with nothing once exhausted.
#[derive(Debug, Clone)]
pub struct ScriptedPainter {
    responses: VecDeque<Vec<Vertex>>,
}

impl ScriptedPainter {
    pub fn new(responses: impl IntoIterator<Item = Vec<Vertex>>) -> Self {
        Self {
            responses: responses.into_iter().collect(),
        }
    }
}

impl<S: Scalar> Painter<S> for ScriptedPainter {
    fn respond(&mut self, _mv: &ListerMove<S>) -> Vec<Vertex> {
        self.responses.pop_front().unwrap_or_default()
    }
}
