//! Graphs, clique complexes and the 𝔍-move calculus.
//!
//! `graph` holds the graph type and its text format, `reduction` the
//! dismantling engines and the contractibility certifier, `itransform` the
//! four 𝔍-moves and their traces, `complex` general simplicial complexes,
//! and `algebra` exact integral homology.

pub mod algebra;
pub mod complex;
pub mod fixtures;
pub mod graph;
pub mod itransform;
pub mod reduction;
pub mod suites;
