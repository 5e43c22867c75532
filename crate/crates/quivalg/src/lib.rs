//! Computations in the tensor algebra of a finite directed graph.
//!
//! The library models the path space of a finite multigraph, exact
//! polynomial arithmetic in the algebra generated by the creation
//! operators `L_e` and vertex projections `P_v`, truncated Fock-space
//! matrix representations, characters, two-dimensional nest
//! representations, and a reconstruction pipeline that rebuilds the
//! graph from algebra-level probes alone.

pub mod algebra;
pub mod chars;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod fock;
pub mod graph;
pub mod nestrep;
pub mod paths;
pub mod reconstruct;
pub mod rng;
pub mod scalar;
pub mod sparse;

pub use algebra::AlgebraElement;
pub use chars::Character;
pub use error::Error;
pub use fock::{RelationReport, TruncatedFock};
pub use graph::{DirectedGraph, VertexMap};
pub use nestrep::NestRep;
pub use paths::{Path, PathTable};
pub use reconstruct::ReconstructedGraph;
pub use scalar::{Rational, Scalar};
