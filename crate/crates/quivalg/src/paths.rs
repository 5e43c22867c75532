//! The path space of a graph: composable edge words, enumeration by
//! length, primitive loops, and loop factorization.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::Error;
use crate::graph::DirectedGraph;

/// A path: a composable word of edges, or a single vertex (length 0).
///
/// The edge word is stored latest-first: `word[0]` is the last edge
/// traversed, `word[len-1]` the first. Source and range are cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    graph_fp: u64,
    word: Vec<usize>,
    src: usize,
    dst: usize,
}

impl Path {
    pub fn vertex(g: &DirectedGraph, v: usize) -> Path {
        Path {
            graph_fp: g.fingerprint(),
            word: Vec::new(),
            src: v,
            dst: v,
        }
    }

    pub fn vertex_named(g: &DirectedGraph, id: &str) -> Result<Path, Error> {
        Ok(Path::vertex(g, g.vertex_ix(id)?))
    }

    pub fn edge(g: &DirectedGraph, e: usize) -> Path {
        let edge = g.edge(e);
        Path {
            graph_fp: g.fingerprint(),
            word: vec![e],
            src: edge.src,
            dst: edge.dst,
        }
    }

    pub fn edge_named(g: &DirectedGraph, id: &str) -> Result<Path, Error> {
        Ok(Path::edge(g, g.edge_ix(id)?))
    }

    /// Builds a path from edge ids listed latest-first, checking that
    /// consecutive edges compose.
    pub fn from_edge_ids(g: &DirectedGraph, ids: &[&str]) -> Result<Path, Error> {
        let mut ixs = Vec::with_capacity(ids.len());
        for id in ids {
            ixs.push(g.edge_ix(id)?);
        }
        Path::from_edge_ixs(g, &ixs)
    }

    pub fn from_edge_ixs(g: &DirectedGraph, ixs: &[usize]) -> Result<Path, Error> {
        if ixs.is_empty() {
            return Err(Error::parse("path", "empty edge word; use a vertex path"));
        }
        for pair in ixs.windows(2) {
            // pair[0] is the later edge; it must start where pair[1] ends.
            if g.edge(pair[0]).src != g.edge(pair[1]).dst {
                return Err(Error::parse(
                    "path",
                    format!(
                        "edges {:?} and {:?} do not compose",
                        g.edge(pair[0]).id,
                        g.edge(pair[1]).id
                    ),
                ));
            }
        }
        Ok(Path {
            graph_fp: g.fingerprint(),
            word: ixs.to_vec(),
            src: g.edge(*ixs.last().unwrap()).src,
            dst: g.edge(ixs[0]).dst,
        })
    }

    /// Parses the text form: a vertex id, or dot-separated edge ids
    /// latest-first. A single token naming both a vertex and an edge is
    /// read as the vertex.
    pub fn parse(g: &DirectedGraph, text: &str) -> Result<Path, Error> {
        let text = text.trim();
        if !text.contains('.') {
            if let Ok(p) = Path::vertex_named(g, text) {
                return Ok(p);
            }
            return Path::from_edge_ids(g, &[text]);
        }
        let parts: Vec<&str> = text.split('.').collect();
        Path::from_edge_ids(g, &parts)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.word.is_empty()
    }

    pub fn src(&self) -> usize {
        self.src
    }

    /// The range of the path (target of its latest edge).
    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn graph_fp(&self) -> u64 {
        self.graph_fp
    }

    pub fn is_loop(&self) -> bool {
        !self.word.is_empty() && self.src == self.dst
    }

    /// `"x"` for vertices, dot-separated edge ids latest-first otherwise.
    pub fn text(&self, g: &DirectedGraph) -> String {
        if self.is_vertex() {
            g.vertex_name(self.src).to_owned()
        } else {
            self.word
                .iter()
                .map(|&e| g.edge(e).id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Traversal-order vertex sequence: src, then the range of each edge
    /// in traversal order. Has `len() + 1` entries.
    pub fn visited_vertices(&self, g: &DirectedGraph) -> Vec<usize> {
        let mut vs = Vec::with_capacity(self.word.len() + 1);
        vs.push(self.src);
        for &e in self.word.iter().rev() {
            vs.push(g.edge(e).dst);
        }
        vs
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        // Level-major, then lexicographic on the edge word, then by vertex.
        (self.word.len(), &self.word, self.src).cmp(&(other.word.len(), &other.word, other.src))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Concatenation `w2·w1`, defined when the source of `w2` equals the
/// range of `w1`. Vertex paths act as units at their vertex.
pub fn compose(w2: &Path, w1: &Path) -> Result<Option<Path>, Error> {
    if w2.graph_fp != w1.graph_fp {
        return Err(Error::MixedGraphs);
    }
    if w2.src != w1.dst {
        return Ok(None);
    }
    let mut word = w2.word.clone();
    word.extend_from_slice(&w1.word);
    Ok(Some(Path {
        graph_fp: w1.graph_fp,
        word,
        src: w1.src,
        dst: w2.dst,
    }))
}

/// Complete enumeration of the path space up to a length bound, level by
/// level, with a global level-major index.
#[derive(Debug, Clone)]
pub struct PathTable {
    graph_fp: u64,
    max_len: usize,
    by_length: Vec<Vec<Path>>,
    index: HashMap<Path, usize>,
}

pub fn enumerate_paths(g: &DirectedGraph, max_len: usize) -> PathTable {
    let mut by_length: Vec<Vec<Path>> = Vec::with_capacity(max_len + 1);
    by_length.push((0..g.vertex_count()).map(|v| Path::vertex(g, v)).collect());
    for m in 1..=max_len {
        let prev = &by_length[m - 1];
        let mut level = Vec::new();
        // Outer loop over the newest edge keeps each level lexicographic.
        for e in 0..g.edge_count() {
            let src = g.edge(e).src;
            for w in prev.iter().filter(|w| w.dst == src) {
                let mut word = vec![e];
                word.extend_from_slice(&w.word);
                level.push(Path {
                    graph_fp: g.fingerprint(),
                    word,
                    src: w.src,
                    dst: g.edge(e).dst,
                });
            }
        }
        by_length.push(level);
    }
    let mut index = HashMap::new();
    let mut next = 0usize;
    for level in &by_length {
        for p in level {
            index.insert(p.clone(), next);
            next += 1;
        }
    }
    PathTable {
        graph_fp: g.fingerprint(),
        max_len,
        by_length,
        index,
    }
}

impl PathTable {
    pub fn graph_fp(&self) -> u64 {
        self.graph_fp
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn total(&self) -> usize {
        self.index.len()
    }

    pub fn level(&self, m: usize) -> &[Path] {
        &self.by_length[m]
    }

    pub fn level_counts(&self) -> Vec<usize> {
        self.by_length.iter().map(|l| l.len()).collect()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Inverse of `index_of`: walks the level sizes to locate the path.
    pub fn path_by_index(&self, ix: usize) -> Option<&Path> {
        let mut rest = ix;
        for level in &self.by_length {
            if rest < level.len() {
                return Some(&level[rest]);
            }
            rest -= level.len();
        }
        None
    }

    /// Global index of the first path of level `m`.
    pub fn level_offset(&self, m: usize) -> usize {
        self.by_length[..m].iter().map(|l| l.len()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.by_length.iter().flatten()
    }

    /// Paths of positive length with source and range both `x`.
    pub fn loops_at(&self, x: usize) -> Vec<&Path> {
        self.iter()
            .filter(|p| !p.is_vertex() && p.src == x && p.dst == x)
            .collect()
    }
}

/// Loops at `x` of length `1..=max_len` with no intermediate visit to `x`.
pub fn primitive_loops_at(g: &DirectedGraph, x: &str, max_len: usize) -> Result<Vec<Path>, Error> {
    let ix = g.vertex_ix(x)?;
    let table = enumerate_paths(g, max_len);
    Ok(table
        .loops_at(ix)
        .into_iter()
        .filter(|u| is_primitive(g, u, ix))
        .cloned()
        .collect())
}

fn is_primitive(g: &DirectedGraph, u: &Path, x: usize) -> bool {
    let visits = u.visited_vertices(g);
    // Interior entries only; endpoints are x by definition of a loop.
    visits[1..visits.len() - 1].iter().all(|&v| v != x)
}

/// Factors a loop into primitive loops by cutting at every intermediate
/// return to the base vertex. Factors are listed latest-first, matching
/// the word orientation, so a compose-fold rebuilds the input.
pub fn factor_loop(g: &DirectedGraph, u: &Path) -> Result<Vec<Path>, Error> {
    if !u.is_loop() {
        return Err(Error::NotALoop(u.text(g)));
    }
    let x = u.src();
    let mut factors = Vec::new();
    let mut segment: Vec<usize> = Vec::new();
    // Traverse earliest-first (reverse of word order).
    for &e in u.word().iter().rev() {
        segment.push(e);
        if g.edge(e).dst == x {
            segment.reverse();
            factors.push(Path::from_edge_ixs(g, &segment).expect("segment composes"));
            segment.clear();
        }
    }
    debug_assert!(segment.is_empty(), "loop must end at its base vertex");
    factors.reverse();
    Ok(factors)
}

/// Number of primitive factors of a loop.
pub fn loop_weight(g: &DirectedGraph, u: &Path) -> Result<usize, Error> {
    Ok(factor_loop(g, u)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::families::{g1, g2, g3, g4};

    /// Brute-force oracle: all edge sequences of length `m`, filtered for
    /// composability. Independent of the level-extension enumeration.
    fn oracle_count(g: &DirectedGraph, m: usize) -> usize {
        if m == 0 {
            return g.vertex_count();
        }
        let mut count = 0usize;
        let mut word = vec![0usize; m];
        count_rec(g, &mut word, 0, &mut count);
        count
    }

    fn count_rec(g: &DirectedGraph, word: &mut [usize], pos: usize, count: &mut usize) {
        if pos == word.len() {
            *count += 1;
            return;
        }
        for e in 0..g.edge_count() {
            // word is latest-first; entry at pos must be composable with pos+1…
            if pos > 0 && g.edge(word[pos - 1]).src != g.edge(e).dst {
                continue;
            }
            word[pos] = e;
            count_rec(g, word, pos + 1, count);
        }
    }

    #[test]
    fn enumeration_matches_oracle_counts() {
        // Frozen expected totals, cross-checked against the oracle.
        let g = g1();
        assert_eq!(oracle_count(&g, 5), 0);
        let t = enumerate_paths(&g, 5);
        assert_eq!(t.total(), 1);
        assert_eq!(t.level_counts(), vec![1, 0, 0, 0, 0, 0]);

        let g = g4();
        let t = enumerate_paths(&g, 3);
        for m in 0..=3 {
            assert_eq!(oracle_count(&g, m), 2);
        }
        assert_eq!(t.level_counts(), vec![2, 2, 2, 2]);
        assert_eq!(t.total(), 8);

        let g = g2();
        let t = enumerate_paths(&g, 2);
        assert_eq!(
            (0..=2).map(|m| oracle_count(&g, m)).collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
        assert_eq!(t.total(), 7);
    }

    #[test]
    fn level_two_of_two_cycle_is_lexicographic() {
        let g = g4();
        let t = enumerate_paths(&g, 3);
        let texts: Vec<String> = t.level(2).iter().map(|p| p.text(&g)).collect();
        assert_eq!(texts, vec!["e.f", "f.e"]);
        let texts: Vec<String> = t.level(3).iter().map(|p| p.text(&g)).collect();
        assert_eq!(texts, vec!["e.f.e", "f.e.f"]);
    }

    #[test]
    fn compose_unit_laws_and_examples() {
        let g = g4();
        let e = Path::edge_named(&g, "e").unwrap();
        let f = Path::edge_named(&g, "f").unwrap();
        let vx = Path::vertex_named(&g, "x").unwrap();
        let vy = Path::vertex_named(&g, "y").unwrap();

        // Unit laws at the matching vertex.
        assert_eq!(compose(&e, &vx).unwrap(), Some(e.clone()));
        assert_eq!(compose(&vy, &e).unwrap(), Some(e.clone()));
        assert_eq!(compose(&e, &vy).unwrap(), None);

        let fe = compose(&f, &e).unwrap().expect("f after e composes");
        assert_eq!(fe.text(&g), "f.e");
        assert_eq!(
            (fe.src(), fe.dst()),
            (g.vertex_ix("x").unwrap(), g.vertex_ix("x").unwrap())
        );

        let ef = compose(&e, &f).unwrap().expect("e after f composes");
        assert_eq!(
            (ef.src(), ef.dst()),
            (g.vertex_ix("y").unwrap(), g.vertex_ix("y").unwrap())
        );

        assert_eq!(compose(&e, &e).unwrap(), None);

        let other = g2();
        let a = Path::edge_named(&other, "a").unwrap();
        assert!(matches!(compose(&a, &e), Err(Error::MixedGraphs)));
    }

    /// Oracle for primitivity: a loop is primitive iff no proper cut
    /// position splits it into two loops at the base vertex.
    fn oracle_primitive(g: &DirectedGraph, u: &Path) -> bool {
        let x = u.src();
        let w = u.word();
        for cut in 1..w.len() {
            // Earliest `cut` edges form the first candidate factor.
            let first = &w[w.len() - cut..];
            if g.edge(first[0]).dst == x {
                return false;
            }
        }
        true
    }

    #[test]
    fn primitive_loops_match_oracle() {
        let g = g2();
        let prims = primitive_loops_at(&g, "v", 3).unwrap();
        let texts: Vec<String> = prims.iter().map(|p| p.text(&g)).collect();
        assert_eq!(texts, vec!["a", "b"]);
        // Oracle agrees on every loop up to length 3 (2 + 4 + 8 = 14 loops).
        let t = enumerate_paths(&g, 3);
        let v = g.vertex_ix("v").unwrap();
        assert_eq!(t.loops_at(v).len(), 14);
        for u in t.loops_at(v) {
            assert_eq!(
                oracle_primitive(&g, u),
                prims.contains(u),
                "disagreement on {}",
                u.text(&g)
            );
        }

        let g = g4();
        let prims = primitive_loops_at(&g, "x", 4).unwrap();
        let texts: Vec<String> = prims.iter().map(|p| p.text(&g)).collect();
        assert_eq!(texts, vec!["f.e"]);

        let g = g3();
        assert!(primitive_loops_at(&g, "x", 4).unwrap().is_empty());
    }

    #[test]
    fn factor_loop_examples() {
        let g = g2();
        let aaa = Path::from_edge_ids(&g, &["a", "a", "a"]).unwrap();
        let factors = factor_loop(&g, &aaa).unwrap();
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|p| p.text(&g) == "a"));

        let ab = Path::from_edge_ids(&g, &["a", "b"]).unwrap();
        let factors = factor_loop(&g, &ab).unwrap();
        let texts: Vec<String> = factors.iter().map(|p| p.text(&g)).collect();
        assert_eq!(texts, vec!["a", "b"]);

        let g = g4();
        let fefe = Path::from_edge_ids(&g, &["f", "e", "f", "e"]).unwrap();
        let factors = factor_loop(&g, &fefe).unwrap();
        let texts: Vec<String> = factors.iter().map(|p| p.text(&g)).collect();
        assert_eq!(texts, vec!["f.e", "f.e"]);

        let e = Path::edge_named(&g, "e").unwrap();
        assert!(matches!(factor_loop(&g, &e), Err(Error::NotALoop(_))));
    }

    #[test]
    fn factorization_round_trips_and_is_primitive() {
        for g in [g2(), g4()] {
            let t = enumerate_paths(&g, 6);
            for x in 0..g.vertex_count() {
                for u in t.loops_at(x) {
                    let factors = factor_loop(&g, u).unwrap();
                    assert!(!factors.is_empty());
                    for f in &factors {
                        assert!(oracle_primitive(&g, f));
                    }
                    let rebuilt = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| {
                        compose(&acc, f).unwrap().expect("factors chain at x")
                    });
                    assert_eq!(&rebuilt, u);
                }
            }
        }
    }

    #[test]
    fn level_counts_satisfy_adjacency_recursion() {
        for g in [g2(), g3(), g4()] {
            let t = enumerate_paths(&g, 5);
            for m in 1..=5 {
                let expected: usize = (0..g.edge_count())
                    .map(|e| {
                        t.level(m - 1)
                            .iter()
                            .filter(|w| w.dst() == g.edge(e).src)
                            .count()
                    })
                    .sum();
                assert_eq!(t.level(m).len(), expected);
            }
        }
    }

    #[test]
    fn path_text_parses_back() {
        let g = g4();
        let fe = Path::from_edge_ids(&g, &["f", "e"]).unwrap();
        assert_eq!(Path::parse(&g, "f.e").unwrap(), fe);
        assert_eq!(
            Path::parse(&g, "x").unwrap(),
            Path::vertex_named(&g, "x").unwrap()
        );
        assert!(Path::parse(&g, "e.e").is_err());
    }
}
