//! Generalized weighted zeta functions of graphs and the discrete-time
//! quantum walks whose transition matrices they contain.
//!
//! Graphs are finite multigraphs (loops and parallel edges allowed). Each
//! edge `k` yields arcs `2k` and `2k + 1`, mates of each other; every matrix
//! in this crate is indexed by that arc order.

pub mod cli;
pub mod cycles;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod series;
pub mod spectral;
pub mod unitarity;
pub mod walk;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{build_symmetric_digraph, Multigraph, SymmetricDigraph};
pub use zeta::{Preset, WeightScheme};
