//! Built-in graph corpus and the corpus check runner.

pub mod families {
    //! Small named graphs used throughout tests and the built-in corpus.

    use crate::graph::DirectedGraph;

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> DirectedGraph {
        DirectedGraph::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|(id, s, d)| (id.to_string(), s.to_string(), d.to_string()))
                .collect(),
        )
        .expect("built-in graph is well formed")
    }

    /// One isolated vertex.
    pub fn g1() -> DirectedGraph {
        graph(&["v"], &[])
    }

    /// One vertex carrying two loops.
    pub fn g2() -> DirectedGraph {
        graph(&["v"], &[("a", "v", "v"), ("b", "v", "v")])
    }

    /// Three parallel edges x -> y.
    pub fn g3() -> DirectedGraph {
        graph(
            &["x", "y"],
            &[("e1", "x", "y"), ("e2", "x", "y"), ("e3", "x", "y")],
        )
    }

    /// Two-cycle x -> y -> x.
    pub fn g4() -> DirectedGraph {
        graph(&["x", "y"], &[("e", "x", "y"), ("f", "y", "x")])
    }

    /// Edge x -> y plus a loop at y.
    pub fn g5() -> DirectedGraph {
        graph(&["x", "y"], &[("e", "x", "y"), ("u", "y", "y")])
    }

    /// Single vertex with `n` loops.
    pub fn loops(n: usize) -> DirectedGraph {
        let edges: Vec<(String, String, String)> = (0..n)
            .map(|i| (format!("l{i}"), "v".to_string(), "v".to_string()))
            .collect();
        DirectedGraph::new(vec!["v".to_string()], edges).unwrap()
    }

    /// Two vertices with `k` parallel edges x -> y.
    pub fn parallel(k: usize) -> DirectedGraph {
        let edges: Vec<(String, String, String)> = (0..k)
            .map(|i| (format!("p{i}"), "x".to_string(), "y".to_string()))
            .collect();
        DirectedGraph::new(vec!["x".to_string(), "y".to_string()], edges).unwrap()
    }

    /// Directed cycle on `n` vertices.
    pub fn cycle(n: usize) -> DirectedGraph {
        let vertices: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let edges: Vec<(String, String, String)> = (0..n)
            .map(|i| {
                (
                    format!("e{i}"),
                    format!("c{i}"),
                    format!("c{}", (i + 1) % n),
                )
            })
            .collect();
        DirectedGraph::new(vertices, edges).unwrap()
    }

    /// Source-to-sink chain on `n` vertices.
    pub fn chain(n: usize) -> DirectedGraph {
        let vertices: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let edges: Vec<(String, String, String)> = (0..n.saturating_sub(1))
            .map(|i| (format!("e{i}"), format!("c{i}"), format!("c{}", i + 1)))
            .collect();
        DirectedGraph::new(vertices, edges).unwrap()
    }

    /// Disjoint union with id prefixes `a_` and `b_`.
    pub fn disjoint_union(a: &DirectedGraph, b: &DirectedGraph) -> DirectedGraph {
        let mut vertices: Vec<String> = a.vertices().iter().map(|v| format!("a_{v}")).collect();
        vertices.extend(b.vertices().iter().map(|v| format!("b_{v}")));
        let mut edges: Vec<(String, String, String)> = a
            .edges()
            .iter()
            .map(|e| {
                (
                    format!("a_{}", e.id),
                    format!("a_{}", a.vertex_name(e.src)),
                    format!("a_{}", a.vertex_name(e.dst)),
                )
            })
            .collect();
        edges.extend(b.edges().iter().map(|e| {
            (
                format!("b_{}", e.id),
                format!("b_{}", b.vertex_name(e.src)),
                format!("b_{}", b.vertex_name(e.dst)),
            )
        }));
        DirectedGraph::new(vertices, edges).unwrap()
    }

    /// The built-in corpus: at least 20 graphs, at most 12 vertices and
    /// 16 edges each, in a fixed order.
    pub fn builtin_corpus() -> Vec<(String, DirectedGraph)> {
        let mut out: Vec<(String, DirectedGraph)> = Vec::new();
        let mut push = |name: &str, g: DirectedGraph| out.push((name.to_string(), g));

        push("point", g1());
        push("loop-1", loops(1));
        push("loop-2", loops(2));
        push("loop-3", loops(3));
        push("loop-4", loops(4));
        push("parallel-1", parallel(1));
        push("parallel-2", parallel(2));
        push("parallel-3", g3());
        push("cycle-2", g4());
        push("cycle-3", cycle(3));
        push("cycle-4", cycle(4));
        push("chain-3", chain(3));
        push("chain-5", chain(5));
        push("tail-loop", g5());
        push(
            "loop-exit-loop",
            graph(
                &["x", "y"],
                &[("u", "x", "x"), ("e", "x", "y"), ("w", "y", "y")],
            ),
        );
        push(
            "cycle-2-loop",
            graph(
                &["x", "y"],
                &[("u", "x", "x"), ("e", "x", "y"), ("f", "y", "x")],
            ),
        );
        push(
            "double-cycle-2",
            graph(
                &["x", "y"],
                &[
                    ("e1", "x", "y"),
                    ("e2", "x", "y"),
                    ("f1", "y", "x"),
                    ("f2", "y", "x"),
                ],
            ),
        );
        push(
            "parallel-asym",
            graph(
                &["x", "y"],
                &[("e1", "x", "y"), ("e2", "x", "y"), ("f", "y", "x")],
            ),
        );
        push(
            "star-out",
            graph(
                &["c", "p", "q", "r"],
                &[("e1", "c", "p"), ("e2", "c", "q"), ("e3", "c", "r")],
            ),
        );
        push(
            "star-in",
            graph(
                &["c", "p", "q", "r"],
                &[("e1", "p", "c"), ("e2", "q", "c"), ("e3", "r", "c")],
            ),
        );
        push("disjoint-loops", disjoint_union(&loops(1), &loops(1)));
        push("disjoint-mixed", disjoint_union(&g3(), &g2()));
        push(
            "mixed-6",
            graph(
                &["p", "q", "r", "s", "t", "u"],
                &[
                    ("a", "p", "q"),
                    ("b", "p", "q"),
                    ("c", "q", "r"),
                    ("d", "r", "p"),
                    ("l1", "r", "r"),
                    ("e", "r", "s"),
                    ("f", "s", "t"),
                    ("g", "t", "u"),
                    ("h", "u", "s"),
                    ("l2", "u", "u"),
                ],
            ),
        );
        push(
            "chain-parallel",
            graph(
                &["a", "b", "c", "d"],
                &[
                    ("e1", "a", "b"),
                    ("e2", "a", "b"),
                    ("f1", "b", "c"),
                    ("g1", "c", "d"),
                    ("g2", "c", "d"),
                    ("g3", "c", "d"),
                ],
            ),
        );
        out
    }
}

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::fock::{
    build_truncated_rep, norm_estimate_with, represent, verify_relations, RelationReport,
    TruncatedFock,
};
use crate::graph::DirectedGraph;
use crate::nestrep::radical_probe;
use crate::reconstruct::{verify_roundtrip, RoundtripReport};
use crate::sparse::top_singular_value;

/// What to run: materialized graphs, the base seed, and the truncation
/// level. Seeds and levels are recorded verbatim in the report.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub graphs: Vec<(String, DirectedGraph)>,
    pub seed: u64,
    pub level: usize,
    /// Wall-clock timings are off by default: the default report is
    /// byte-identical across runs with equal inputs and seeds.
    pub timings: bool,
}

impl CorpusSpec {
    pub fn builtin(seed: u64, level: usize) -> Self {
        CorpusSpec {
            graphs: families::builtin_corpus(),
            seed,
            level,
            timings: false,
        }
    }
}

pub const REPORT_SCHEMA: u32 = 1;

/// Scramble seeds exercised by the per-graph round trip.
const ROUNDTRIP_SCRAMBLES: [u64; 3] = [1, 2, 3];

#[derive(Debug, Clone, Serialize)]
pub struct BallDimRow {
    pub vertex: String,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCountRow {
    pub from: String,
    pub to: String,
    pub family_size: usize,
    pub computed: usize,
    pub direct: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormRow {
    pub element: String,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationReport>,
    pub ball_dimensions: Vec<BallDimRow>,
    pub edge_counts: Vec<PairCountRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roundtrip: Option<RoundtripReport>,
    pub norms: Vec<NormRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub seed: u64,
    pub level: usize,
    pub overall_pass: bool,
    pub graphs: Vec<GraphReport>,
}

/// Runs every check stage on every graph. Graphs run in parallel when
/// `QUIVALG_THREADS` allows; the report order always follows the input
/// order.
pub fn run_corpus(spec: &CorpusSpec) -> Report {
    let runner = |(name, g): &(String, DirectedGraph)| check_graph(name, g, spec);
    let graphs: Vec<GraphReport> = match thread_pool() {
        Some(pool) => pool.install(|| {
            use rayon::prelude::*;
            spec.graphs.par_iter().map(runner).collect()
        }),
        None => {
            use rayon::prelude::*;
            spec.graphs.par_iter().map(runner).collect()
        }
    };
    Report {
        schema: REPORT_SCHEMA,
        tool: format!("quivalg {}", env!("CARGO_PKG_VERSION")),
        seed: spec.seed,
        level: spec.level,
        overall_pass: graphs.iter().all(|g| g.pass),
        graphs,
    }
}

fn thread_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var("QUIVALG_THREADS").ok()?.parse().ok()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build()
        .ok()
}

fn check_graph(name: &str, g: &DirectedGraph, spec: &CorpusSpec) -> GraphReport {
    let started = std::time::Instant::now();
    let mut report = GraphReport {
        name: name.to_owned(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        pass: false,
        error: None,
        relations: None,
        ball_dimensions: Vec::new(),
        edge_counts: Vec::new(),
        roundtrip: None,
        norms: Vec::new(),
        timing_ms: None,
    };
    match check_graph_stages(g, spec, None, &mut report) {
        Ok(pass) => report.pass = pass,
        Err(e) => {
            report.pass = false;
            report.error = Some(e.to_string());
        }
    }
    if spec.timings {
        report.timing_ms = Some(started.elapsed().as_millis());
    }
    report
}

/// Stage driver; `fock_override` lets tests inject a corrupted
/// representation.
pub(crate) fn check_graph_stages(
    g: &DirectedGraph,
    spec: &CorpusSpec,
    fock_override: Option<TruncatedFock>,
    report: &mut GraphReport,
) -> Result<bool, crate::error::Error> {
    let fock = match fock_override {
        Some(f) => f,
        None => build_truncated_rep(g, spec.level)?,
    };
    let relations = verify_relations(g, &fock);
    let mut pass = relations.all_pass();
    report.relations = Some(relations);

    for v in g.vertices() {
        report.ball_dimensions.push(BallDimRow {
            vertex: v.clone(),
            dim: crate::chars::ball_dimension(g, v)?,
        });
    }

    for x in 0..g.vertex_count() {
        for y in 0..g.vertex_count() {
            if x == y {
                continue;
            }
            let (vx, vy) = (g.vertex_name(x), g.vertex_name(y));
            let seed = crate::rng::child_seed(spec.seed, "corpus-radical", (x * 8191 + y) as u64);
            let probe = radical_probe(g, vx, vy, seed)?;
            if probe.computed_count != probe.direct_count {
                pass = false;
            }
            report.edge_counts.push(PairCountRow {
                from: vx.to_owned(),
                to: vy.to_owned(),
                family_size: probe.family_size,
                computed: probe.computed_count,
                direct: probe.direct_count,
            });
        }
    }

    let roundtrip = verify_roundtrip(g, spec.seed, &ROUNDTRIP_SCRAMBLES)?;
    pass &= roundtrip.pass;
    report.roundtrip = Some(roundtrip);

    for e in g.edges() {
        let elem = AlgebraElement::creation(g, &e.id)?;
        let (lower, upper) = norm_estimate_with(&elem, &fock)?;
        report.norms.push(NormRow {
            element: format!("L_{}", e.id),
            lower,
            upper,
        });
    }
    if g.edge_count() > 0 {
        let mut sum = AlgebraElement::zero(g);
        for e in g.edges() {
            sum = sum.add(&AlgebraElement::creation(g, &e.id)?)?;
        }
        let matrix = represent(&sum, &fock)?;
        let lower = top_singular_value(&matrix.to_numeric(), 500, 1e-12);
        report.norms.push(NormRow {
            element: "sum_creations".to_owned(),
            lower,
            upper: sum.coeff_one_norm_f64(),
        });
    }
    Ok(pass)
}
