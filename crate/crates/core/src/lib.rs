//! Ranked-majority painting games on positively weighted digraphs.
//!
//! A Lister repeatedly presents uncolored vertices with tolerances; the
//! Painter colors a subset in which every vertex keeps its monochromatic
//! out-weight within its tolerance. The Lister wins if some vertex stays
//! uncolored after being presented with total tolerance at least its budget.
//!
//! The crate provides the referee ([`engine`]), Painter strategies
//! ([`painter`]) built on kernel selection ([`kernel`]) and spectral
//! symmetrization ([`spectral`]), Lister sources ([`lister`]), exhaustive
//! solvers for small instances ([`oracle`]) and batch checks ([`verify`]).

pub mod engine;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod lister;
pub mod oracle;
pub mod painter;
pub mod random;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use graph::{UndirectedView, Vertex, WeightedDigraph};
pub use scalar::{Rational, Scalar};
