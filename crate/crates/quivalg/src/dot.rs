//! Deterministic DOT rendering for input graphs and reconstructions.

use std::fmt::Write as _;

use crate::graph::DirectedGraph;
use crate::reconstruct::{realize, ReconstructedGraph};

pub fn graph_to_dot(g: &DirectedGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            g.vertex_name(e.src),
            g.vertex_name(e.dst),
            e.id
        );
    }
    out.push_str("}\n");
    out
}

/// Reconstructions render through their realization, so labels are the
/// fresh `c0, c1, …` names.
pub fn reconstructed_to_dot(r: &ReconstructedGraph) -> String {
    graph_to_dot(&realize(r))
}
