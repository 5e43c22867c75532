//! Finite directed multigraph: data model, JSON parsing, structural
//! queries, and a backtracking isomorphism oracle.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

/// An edge with its identifier and endpoint indices into the vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed multigraph. Vertices and edges keep document order;
/// parallel edges and loops are permitted. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    fingerprint: u64,
}

/// Witness for a multigraph isomorphism: a vertex bijection together with
/// an edge bijection that respects endpoints under it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl DirectedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self, Error> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::parse(
                    format!("vertices[{i}]"),
                    format!("duplicate vertex id {v:?}"),
                ));
            }
        }
        let mut edge_index = HashMap::new();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        let mut resolved = Vec::with_capacity(edges.len());
        for (i, (id, src, dst)) in edges.into_iter().enumerate() {
            if edge_index.insert(id.clone(), i).is_some() {
                return Err(Error::parse(
                    format!("edges[{i}]"),
                    format!("duplicate edge id {id:?}"),
                ));
            }
            let s = *vertex_index.get(&src).ok_or_else(|| {
                Error::parse(
                    format!("edges[{i}]"),
                    format!("unknown source vertex {src:?}"),
                )
            })?;
            let d = *vertex_index.get(&dst).ok_or_else(|| {
                Error::parse(
                    format!("edges[{i}]"),
                    format!("unknown target vertex {dst:?}"),
                )
            })?;
            out_edges[s].push(i);
            in_edges[d].push(i);
            resolved.push(Edge { id, src: s, dst: d });
        }
        let fingerprint = fingerprint_of(&vertices, &resolved);
        Ok(DirectedGraph {
            vertices,
            edges: resolved,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
            fingerprint,
        })
    }

    /// Parses the JSON document form
    /// `{"vertices": ["x", ...], "edges": [["id", "src", "dst"], ...]}`.
    /// Errors carry the location of the offending entry.
    pub fn parse_json(text: &str) -> Result<Self, Error> {
        let doc: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse("document", format!("invalid JSON: {e}")))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::parse("document", "expected a JSON object"))?;
        let vertices = obj
            .get("vertices")
            .ok_or_else(|| Error::parse("document", "missing \"vertices\""))?
            .as_array()
            .ok_or_else(|| Error::parse("vertices", "expected an array"))?;
        let mut vs = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let s = v
                .as_str()
                .ok_or_else(|| Error::parse(format!("vertices[{i}]"), "expected a string"))?;
            vs.push(s.to_owned());
        }
        let edges = obj
            .get("edges")
            .ok_or_else(|| Error::parse("document", "missing \"edges\""))?
            .as_array()
            .ok_or_else(|| Error::parse("edges", "expected an array"))?;
        let mut es = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            let triple = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::parse(format!("edges[{i}]"), "expected [id, src, dst]"))?;
            let mut parts = Vec::with_capacity(3);
            for (j, p) in triple.iter().enumerate() {
                let s = p
                    .as_str()
                    .ok_or_else(|| Error::parse(format!("edges[{i}][{j}]"), "expected a string"))?;
                parts.push(s.to_owned());
            }
            es.push((parts[0].clone(), parts[1].clone(), parts[2].clone()));
        }
        DirectedGraph::new(vs, es)
    }

    pub fn to_json(&self) -> String {
        let edges: Vec<[&str; 3]> = self
            .edges
            .iter()
            .map(|e| {
                [
                    e.id.as_str(),
                    self.vertices[e.src].as_str(),
                    self.vertices[e.dst].as_str(),
                ]
            })
            .collect();
        serde_json::json!({ "vertices": self.vertices, "edges": edges }).to_string()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, ix: usize) -> &str {
        &self.vertices[ix]
    }

    pub fn edge(&self, ix: usize) -> &Edge {
        &self.edges[ix]
    }

    pub fn vertex_ix(&self, id: &str) -> Result<usize, Error> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn edge_ix(&self, id: &str) -> Result<usize, Error> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_owned()))
    }

    /// Edge indices leaving `v`, in declaration order.
    pub fn out_edge_ixs(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Edge indices arriving at `v`, in declaration order.
    pub fn in_edge_ixs(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// All loop edges at `v` (source = target = `v`), in declaration order.
    pub fn loop_edges_at(&self, v: &str) -> Result<Vec<String>, Error> {
        let ix = self.vertex_ix(v)?;
        Ok(self
            .loop_edge_ixs(ix)
            .into_iter()
            .map(|e| self.edges[e].id.clone())
            .collect())
    }

    pub fn loop_edge_ixs(&self, v: usize) -> Vec<usize> {
        self.out_edges[v]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].dst == v)
            .collect()
    }

    /// Edges from `u` to `v`, in declaration order.
    pub fn edges_between(&self, u: &str, v: &str) -> Result<Vec<String>, Error> {
        let (ui, vi) = (self.vertex_ix(u)?, self.vertex_ix(v)?);
        Ok(self
            .edges_between_ixs(ui, vi)
            .into_iter()
            .map(|e| self.edges[e].id.clone())
            .collect())
    }

    pub fn edges_between_ixs(&self, u: usize, v: usize) -> Vec<usize> {
        self.out_edges[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].dst == v)
            .collect()
    }

    /// Vertices that emit no edges (sinks) and receive no edges (sources).
    pub fn classify_vertices(&self) -> (Vec<String>, Vec<String>) {
        let sinks = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| self.out_edges[*i].is_empty())
            .map(|(_, v)| v.clone())
            .collect();
        let sources = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| self.in_edges[*i].is_empty())
            .map(|(_, v)| v.clone())
            .collect();
        (sinks, sources)
    }

    /// Structural fingerprint; equal fingerprints are required for values
    /// built over "the same graph" to interoperate.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Multiplicity of edges u -> v as a dense matrix, loops on the diagonal.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0usize; n]; n];
        for e in &self.edges {
            m[e.src][e.dst] += 1;
        }
        m
    }

    /// Searches for a multigraph isomorphism onto `other`: a vertex
    /// bijection preserving edge multiplicities between every ordered
    /// vertex pair. Returns a witness with a compatible edge bijection
    /// (parallel edges matched in declaration order), or `None`.
    /// Deterministic given input ordering.
    pub fn are_isomorphic(&self, other: &DirectedGraph) -> Option<VertexMap> {
        iso::find_isomorphism(self, other)
    }
}

fn fingerprint_of(vertices: &[String], edges: &[Edge]) -> u64 {
    // FNV-1a over the ordered structure; stable across runs and builds.
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    for v in vertices {
        eat(v.as_bytes());
        eat(&[0xff]);
    }
    for e in edges {
        eat(e.id.as_bytes());
        eat(&e.src.to_le_bytes());
        eat(&e.dst.to_le_bytes());
    }
    h
}

impl VertexMap {
    /// Checks that the map is a bijection from `g1` onto `g2` carrying each
    /// edge to an edge with mapped endpoints.
    pub fn is_valid_for(&self, g1: &DirectedGraph, g2: &DirectedGraph) -> bool {
        if self.vertices.len() != g1.vertex_count()
            || g1.vertex_count() != g2.vertex_count()
            || self.edges.len() != g1.edge_count()
            || g1.edge_count() != g2.edge_count()
        {
            return false;
        }
        let mut seen = vec![false; g2.vertex_count()];
        for (a, b) in &self.vertices {
            let (Ok(_), Ok(ib)) = (g1.vertex_ix(a), g2.vertex_ix(b)) else {
                return false;
            };
            if seen[ib] {
                return false;
            }
            seen[ib] = true;
        }
        let mut eseen = vec![false; g2.edge_count()];
        for (a, b) in &self.edges {
            let (Ok(ia), Ok(ib)) = (g1.edge_ix(a), g2.edge_ix(b)) else {
                return false;
            };
            let (ea, eb) = (g1.edge(ia), g2.edge(ib));
            if eseen[ib] {
                return false;
            }
            eseen[ib] = true;
            let src_ok = self
                .vertices
                .get(g1.vertex_name(ea.src))
                .is_some_and(|m| m == g2.vertex_name(eb.src));
            let dst_ok = self
                .vertices
                .get(g1.vertex_name(ea.dst))
                .is_some_and(|m| m == g2.vertex_name(eb.dst));
            if !src_ok || !dst_ok {
                return false;
            }
        }
        true
    }

    /// The inverse witness, mapping `g2` back onto `g1`.
    pub fn inverted(&self) -> VertexMap {
        VertexMap {
            vertices: self
                .vertices
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }
}

mod iso {
    use super::{DirectedGraph, VertexMap};
    use std::collections::BTreeMap;

    /// Per-vertex signature used for pruning: loop count plus sorted
    /// out/in multiplicity profiles (loops excluded from the profiles).
    fn signature(
        g: &DirectedGraph,
        v: usize,
        mult: &[Vec<usize>],
    ) -> (usize, Vec<usize>, Vec<usize>) {
        let n = g.vertex_count();
        let loops = mult[v][v];
        let mut out: Vec<usize> = (0..n).filter(|&w| w != v).map(|w| mult[v][w]).collect();
        let mut inc: Vec<usize> = (0..n).filter(|&w| w != v).map(|w| mult[w][v]).collect();
        out.sort_unstable();
        inc.sort_unstable();
        (loops, out, inc)
    }

    pub fn find_isomorphism(g1: &DirectedGraph, g2: &DirectedGraph) -> Option<VertexMap> {
        let n = g1.vertex_count();
        if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
            return None;
        }
        let m1 = g1.multiplicity_matrix();
        let m2 = g2.multiplicity_matrix();
        let sig1: Vec<_> = (0..n).map(|v| signature(g1, v, &m1)).collect();
        let sig2: Vec<_> = (0..n).map(|v| signature(g2, v, &m2)).collect();
        {
            let mut s1 = sig1.clone();
            let mut s2 = sig2.clone();
            s1.sort();
            s2.sort();
            if s1 != s2 {
                return None;
            }
        }

        let mut assignment = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if !backtrack(0, n, &m1, &m2, &sig1, &sig2, &mut assignment, &mut used) {
            return None;
        }
        Some(build_witness(g1, g2, &assignment))
    }

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        v: usize,
        n: usize,
        m1: &[Vec<usize>],
        m2: &[Vec<usize>],
        sig1: &[(usize, Vec<usize>, Vec<usize>)],
        sig2: &[(usize, Vec<usize>, Vec<usize>)],
        assignment: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || sig1[v] != sig2[cand] {
                continue;
            }
            // Multiplicities against every previously assigned vertex must
            // match in both directions, loops included via u == v.
            let consistent = (0..v).all(|u| {
                m1[v][u] == m2[cand][assignment[u]] && m1[u][v] == m2[assignment[u]][cand]
            }) && m1[v][v] == m2[cand][cand];
            if !consistent {
                continue;
            }
            assignment[v] = cand;
            used[cand] = true;
            if backtrack(v + 1, n, m1, m2, sig1, sig2, assignment, used) {
                return true;
            }
            assignment[v] = usize::MAX;
            used[cand] = false;
        }
        false
    }

    fn build_witness(g1: &DirectedGraph, g2: &DirectedGraph, assignment: &[usize]) -> VertexMap {
        let vertices: BTreeMap<String, String> = assignment
            .iter()
            .enumerate()
            .map(|(v, &w)| (g1.vertex_name(v).to_owned(), g2.vertex_name(w).to_owned()))
            .collect();
        // Parallel edges between a mapped pair are matched in declaration order.
        let mut edges = BTreeMap::new();
        let n = g1.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let e1 = g1.edges_between_ixs(u, v);
                let e2 = g2.edges_between_ixs(assignment[u], assignment[v]);
                debug_assert_eq!(e1.len(), e2.len());
                for (a, b) in e1.into_iter().zip(e2) {
                    edges.insert(g1.edge(a).id.clone(), g2.edge(b).id.clone());
                }
            }
        }
        VertexMap { vertices, edges }
    }
}
