//! Tracking paths: choose a small vertex set whose visiting order identifies
//! every simple s-t path of a graph.

pub mod approx;
pub mod bench;
pub mod cover;
pub mod cycles;
pub mod eptas;
pub mod error;
pub mod exact;
pub mod format;
pub mod fvs;
pub mod gen;
pub mod graph;
mod hitting;
pub mod kernel;
mod linkage;
mod planar;
pub mod rdivision;
pub mod reconstruct;
pub mod reduce;
pub mod solution;
pub mod track;

pub use error::{Error, Result};
pub use graph::{Graph, GraphClass, Instance, VertexSet, Weight};
pub use solution::{solve, Method, SolveOptions, SolveResult, SolveStats};
