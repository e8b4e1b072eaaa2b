//! Perron vector of a row-normalized strongly connected digraph and the
//! symmetrization that turns it into an undirected weighting.
//!
//! With `T` row-stochastic and irreducible there is a unique positive `x`
//! with `xT = x` and `sum(x) = 1`. Giving the undirected edge `{v, w}` the
//! weight `x_v T_vw + x_w T_wv` yields a graph where the incident weight of
//! `v` is exactly `2 x_v`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{symmetric_from_pairs, UndirectedView, Vertex, WeightedDigraph};
use crate::scalar::Scalar;

pub const DEFAULT_RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Row sums of a normalized graph must be within this of one.
const ROW_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("graph is not strongly connected ({components} components)")]
    NotStronglyConnected { components: usize },
    #[error("row {vertex} sums to {sum}, expected 1")]
    NotNormalized { vertex: Vertex, sum: f64 },
    #[error("linear system is singular")]
    Singular,
    #[error("eigenvector entry {vertex} is not positive ({value})")]
    NotPositive { vertex: Vertex, value: f64 },
    #[error("residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },
}

/// Positive left eigenvector for eigenvalue one, normalized to sum one.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftEigenvector<S> {
    pub x: Vec<S>,
    /// `max_v |(xT)_v - x_v|`.
    pub residual: f64,
}

/// Checked view of a normalized graph as the matrix `T`.
#[derive(Debug, Clone, Copy)]
pub struct StochasticMatrixView<'a, S> {
    graph: &'a WeightedDigraph<S>,
}

impl<'a, S: Scalar> StochasticMatrixView<'a, S> {
    pub fn new(graph: &'a WeightedDigraph<S>) -> Result<Self, SpectralError> {
        for v in 0..graph.vertex_count() {
            let sum = graph.out_weight(v);
            if (sum.clone() - S::one()).abs().to_f64() > ROW_SUM_TOLERANCE {
                return Err(SpectralError::NotNormalized {
                    vertex: v,
                    sum: sum.to_f64(),
                });
            }
        }
        Ok(Self { graph })
    }

    pub fn dim(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn entry(&self, v: Vertex, w: Vertex) -> S {
        self.graph.weight(v, w).cloned().unwrap_or_else(S::zero)
    }

    /// `xT`, evaluated column by column.
    pub fn left_multiply(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (v, w, t) in self.graph.edges() {
            out[w] = out[w].clone() + x[v].clone() * t.clone();
        }
        out
    }
}

/// Solves `(T^T - I) x = 0` with the last equation replaced by `sum(x) = 1`,
/// by dense Gaussian elimination with partial pivoting.
pub fn left_eigenvector<S: Scalar>(
    g: &WeightedDigraph<S>,
    tolerance: f64,
) -> Result<LeftEigenvector<S>, SpectralError> {
    let components = g.condensation().len();
    if components != 1 {
        return Err(SpectralError::NotStronglyConnected { components });
    }
    let t = StochasticMatrixView::new(g)?;
    let n = t.dim();

    let mut a: Vec<Vec<S>> = (0..n)
        .map(|row| {
            (0..n)
                .map(|col| {
                    let entry = t.entry(col, row);
                    if row == col {
                        entry - S::one()
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    a[n - 1] = vec![S::one(); n];
    let mut b = vec![S::zero(); n];
    b[n - 1] = S::one();

    let x = solve_dense(a, b).ok_or(SpectralError::Singular)?;
    if let Some((vertex, value)) = x.iter().enumerate().find(|(_, s)| !s.above_zero()) {
        return Err(SpectralError::NotPositive {
            vertex,
            value: value.to_f64(),
        });
    }
    let residual = t
        .left_multiply(&x)
        .into_iter()
        .zip(&x)
        .map(|(y, xv)| (y - xv.clone()).abs().to_f64())
        .fold(0.0, f64::max);
    // A NaN residual must fail too.
    if residual.is_nan() || residual > tolerance {
        return Err(SpectralError::Residual { residual, tolerance });
    }
    Ok(LeftEigenvector { x, residual })
}

fn solve_dense<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).filter(|&r| !a[r][col].is_zero()).max_by(|&r, &s| {
            a[r][col]
                .abs()
                .partial_cmp(&a[s][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let head = a[col][col].clone();
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / head.clone();
            let (upper, lower) = a.split_at_mut(row);
            for (target, pivot) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target = target.clone() - factor.clone() * pivot.clone();
            }
            b[row] = b[row].clone() - factor * b[col].clone();
        }
    }
    let mut x = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Some(x)
}

/// The undirected weighting `w_G(vw) = x_v T_vw + x_w T_wv`, with an edge
/// wherever `vw` or `wv` is an edge of `g`. Both orientations share one value.
pub fn symmetrized_graph<S: Scalar>(g: &WeightedDigraph<S>, eigen: &LeftEigenvector<S>) -> UndirectedView<S> {
    let mut pairs: BTreeMap<(Vertex, Vertex), S> = BTreeMap::new();
    for (v, w, t) in g.edges() {
        let key = (v.min(w), v.max(w));
        let term = eigen.x[v].clone() * t.clone();
        let slot = pairs.entry(key).or_insert_with(S::zero);
        *slot = slot.clone() + term;
    }
    symmetric_from_pairs(g.vertex_count(), pairs).expect("products of positive values are positive")
}
