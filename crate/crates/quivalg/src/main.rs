//! Command-line front end: parsing, path enumeration, Fock-space checks,
//! characters, radical probes, reconstruction, corpus runs, and DOT
//! output. Exit codes: 0 all checks passed, 1 at least one check failed,
//! 2 input error.

use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use quivalg::algebra::AlgebraElement;
use quivalg::chars::{ball_dimension, character};
use quivalg::corpus::{families, run_corpus, CorpusSpec};
use quivalg::dot::graph_to_dot;
use quivalg::fock::{build_truncated_rep, norm_estimate_with, verify_relations};
use quivalg::graph::DirectedGraph;
use quivalg::nestrep::radical_probe;
use quivalg::paths::enumerate_paths;
use quivalg::reconstruct::{realize, reconstruct_graph, verify_roundtrip};
use quivalg::scalar::Scalar;

#[derive(Debug, Parser)]
#[command(
    name = "quivalg",
    version,
    about = "Tensor-algebra computations over finite directed graphs"
)]
struct Cli {
    /// Truncation level for Fock-space stages.
    #[arg(long, global = true, default_value_t = 4)]
    level: usize,

    /// Base seed for every randomized probe.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Force JSON output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Force text output.
    #[arg(long, global = true)]
    text: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a graph document and print a summary.
    Parse { graph: PathBuf },

    /// Enumerate the path space up to the truncation level.
    Paths { graph: PathBuf },

    /// Build the truncated representation: dimension, relation report,
    /// and norm table. With --matrix, dump one generator in COO text.
    Fock {
        graph: PathBuf,
        /// Generator to export: "L:<edge-id>" or "P:<vertex-id>".
        #[arg(long)]
        matrix: Option<String>,
    },

    /// Per-vertex character ball dimensions; optionally evaluate an
    /// element at a character.
    Chars {
        graph: PathBuf,
        /// Base vertex of the character.
        #[arg(long)]
        at: Option<String>,
        /// Parameter vector as JSON [["re","im"], ...] with rationals.
        #[arg(long)]
        lambda: Option<String>,
        /// Element as inline JSON [[path,"re","im"], ...] or a file path.
        #[arg(long)]
        element: Option<String>,
    },

    /// Radical probe for one ordered vertex pair.
    Radical {
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },

    /// Rebuild the graph from algebra probes and verify the round trip.
    Reconstruct { graph: PathBuf },

    /// Run all check stages over graph files, inline family generators,
    /// or the built-in corpus.
    Corpus {
        graphs: Vec<PathBuf>,
        /// Use the built-in corpus (default when nothing else is given).
        #[arg(long)]
        builtin: bool,
        /// Inline generator, repeatable: loops:N, parallel:K, cycle:N,
        /// chain:N, or union:SPEC+SPEC.
        #[arg(long = "family")]
        families: Vec<String>,
        /// Record wall-clock timings (breaks byte-for-byte determinism).
        #[arg(long)]
        timings: bool,
    },

    /// Emit DOT, either of the input or of its reconstruction.
    Dot {
        graph: PathBuf,
        #[arg(long)]
        reconstructed: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Parse { graph } => {
            let g = load_graph(graph)?;
            let (sinks, sources) = g.classify_vertices();
            let body = if use_json(cli, false) {
                pretty(&json!({
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "sinks": sinks,
                    "sources": sources,
                }))
            } else {
                format!(
                    "vertices: {}\nedges: {}\nsinks: {}\nsources: {}\n",
                    g.vertex_count(),
                    g.edge_count(),
                    sinks.join(" "),
                    sources.join(" ")
                )
            };
            emit(cli, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Paths { graph } => {
            let g = load_graph(graph)?;
            let table = enumerate_paths(&g, cli.level);
            let body = if use_json(cli, false) {
                let levels: Vec<Value> = (0..=cli.level)
                    .map(|m| {
                        json!({
                            "length": m,
                            "count": table.level(m).len(),
                            "paths": table.level(m).iter().map(|p| p.text(&g)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                pretty(&json!({"total": table.total(), "levels": levels}))
            } else {
                let mut out = String::new();
                for m in 0..=cli.level {
                    let texts: Vec<String> = table.level(m).iter().map(|p| p.text(&g)).collect();
                    let _ = writeln!(out, "level {m} ({}): {}", texts.len(), texts.join(" "));
                }
                let _ = writeln!(out, "total: {}", table.total());
                out
            };
            emit(cli, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fock { graph, matrix } => {
            let g = load_graph(graph)?;
            let fock = build_truncated_rep(&g, cli.level).map_err(|e| e.to_string())?;
            if let Some(spec) = matrix {
                let coo = generator_coo(&g, &fock, spec)?;
                emit(cli, &coo)?;
                return Ok(ExitCode::SUCCESS);
            }
            let relations = verify_relations(&g, &fock);
            let pass = relations.all_pass();
            let mut norms = Vec::new();
            for e in g.edges() {
                let elem = AlgebraElement::creation(&g, &e.id).map_err(|e| e.to_string())?;
                let (lower, upper) = norm_estimate_with(&elem, &fock).map_err(|e| e.to_string())?;
                norms.push(
                    json!({"element": format!("L_{}", e.id), "lower": lower, "upper": upper}),
                );
            }
            let body = if use_json(cli, true) {
                pretty(&json!({
                    "dimension": fock.dim(),
                    "level": fock.level(),
                    "relations": serde_json::to_value(&relations).unwrap(),
                    "norms": norms,
                }))
            } else {
                format!(
                    "dimension {} at level {}; relations: {}\n",
                    fock.dim(),
                    fock.level(),
                    if pass { "pass" } else { "FAIL" }
                )
            };
            emit(cli, &body)?;
            Ok(exit_pass(pass))
        }
        Command::Chars {
            graph,
            at,
            lambda,
            element,
        } => {
            let g = load_graph(graph)?;
            let mut dims = Vec::new();
            for v in g.vertices() {
                dims.push((v.clone(), ball_dimension(&g, v).map_err(|e| e.to_string())?));
            }
            let evaluation = match (at, element) {
                (Some(x), Some(elem_text)) => {
                    let lam = parse_lambda(lambda.as_deref())?;
                    let rho = character(&g, x, lam).map_err(|e| e.to_string())?;
                    let elem = load_element(&g, elem_text)?;
                    let value = rho.eval(&elem).map_err(|e| e.to_string())?;
                    let (re, im) = value.to_f64_pair();
                    Some(json!({
                        "vertex": x,
                        "boundary": rho.is_boundary(),
                        "value": {
                            "re": Scalar::format_rational(&value.re),
                            "im": Scalar::format_rational(&value.im),
                            "re_f64": re,
                            "im_f64": im,
                        },
                    }))
                }
                (None, Some(_)) => return Err("--element requires --at".into()),
                (Some(_), None) => return Err("--at requires --element".into()),
                (None, None) => None,
            };
            let body = if use_json(cli, true) {
                let dims: Vec<Value> = dims
                    .iter()
                    .map(|(v, d)| json!({"vertex": v, "ball_dim": d}))
                    .collect();
                pretty(&json!({"ball_dimensions": dims, "evaluation": evaluation}))
            } else {
                let mut out = String::new();
                for (v, d) in &dims {
                    let _ = writeln!(out, "{v}: ball dimension {d}");
                }
                if let Some(e) = &evaluation {
                    let _ = writeln!(out, "evaluation: {e}");
                }
                out
            };
            emit(cli, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Radical { graph, from, to } => {
            let g = load_graph(graph)?;
            let probe = radical_probe(&g, from, to, cli.seed).map_err(|e| e.to_string())?;
            let pass = probe.computed_count == probe.direct_count;
            let body = if use_json(cli, true) {
                pretty(&serde_json::to_value(&probe).unwrap())
            } else {
                format!(
                    "{from} -> {to}: family {}, computed {}, direct {}\n",
                    probe.family_size, probe.computed_count, probe.direct_count
                )
            };
            emit(cli, &body)?;
            Ok(exit_pass(pass))
        }
        Command::Reconstruct { graph } => {
            let g = load_graph(graph)?;
            let reconstruction = reconstruct_graph(&g, cli.seed).map_err(|e| e.to_string())?;
            let roundtrip =
                verify_roundtrip(&g, cli.seed, &[1, 2, 3]).map_err(|e| e.to_string())?;
            let pass = roundtrip.pass;
            let body = if use_json(cli, true) {
                let components: Vec<Value> = reconstruction
                    .ball_dims
                    .iter()
                    .map(|d| json!({"ball_dim": d}))
                    .collect();
                pretty(&json!({
                    "components": components,
                    "counts": reconstruction.counts,
                    "provenance": reconstruction.provenance,
                    "roundtrip": if pass { "pass" } else { "fail" },
                    "witness": roundtrip.witness,
                }))
            } else {
                format!(
                    "components: {}; roundtrip: {}\n",
                    reconstruction.ball_dims.len(),
                    if pass { "pass" } else { "FAIL" }
                )
            };
            emit(cli, &body)?;
            Ok(exit_pass(pass))
        }
        Command::Corpus {
            graphs,
            builtin,
            families: family_specs,
            timings,
        } => {
            let mut spec_graphs: Vec<(String, DirectedGraph)> = Vec::new();
            if *builtin || (graphs.is_empty() && family_specs.is_empty()) {
                spec_graphs.extend(families::builtin_corpus());
            }
            for spec in family_specs {
                spec_graphs.push((spec.clone(), parse_family(spec)?));
            }
            for path in graphs {
                let g = load_graph(path)?;
                spec_graphs.push((path.display().to_string(), g));
            }
            let spec = CorpusSpec {
                graphs: spec_graphs,
                seed: cli.seed,
                level: cli.level,
                timings: *timings,
            };
            let report = run_corpus(&spec);
            let body = if use_json(cli, true) {
                pretty(&serde_json::to_value(&report).unwrap())
            } else {
                let mut out = String::new();
                for g in &report.graphs {
                    let _ = writeln!(out, "{}: {}", g.name, if g.pass { "pass" } else { "FAIL" });
                }
                let _ = writeln!(
                    out,
                    "overall: {}",
                    if report.overall_pass { "pass" } else { "FAIL" }
                );
                out
            };
            emit(cli, &body)?;
            Ok(exit_pass(report.overall_pass))
        }
        Command::Dot {
            graph,
            reconstructed,
        } => {
            let g = load_graph(graph)?;
            let body = if *reconstructed {
                let r = reconstruct_graph(&g, cli.seed).map_err(|e| e.to_string())?;
                graph_to_dot(&realize(&r))
            } else {
                graph_to_dot(&g)
            };
            emit(cli, &body)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_pass(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn use_json(cli: &Cli, default_json: bool) -> bool {
    if cli.json {
        true
    } else if cli.text {
        false
    } else {
        default_json
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, body: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn load_graph(path: &FsPath) -> Result<DirectedGraph, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    DirectedGraph::parse_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_element(g: &DirectedGraph, spec: &str) -> Result<AlgebraElement, String> {
    let text = if spec.trim_start().starts_with('[') {
        spec.to_owned()
    } else {
        std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("bad element JSON: {e}"))?;
    AlgebraElement::from_json(g, &value).map_err(|e| e.to_string())
}

fn parse_lambda(lambda: Option<&str>) -> Result<Vec<Scalar>, String> {
    let Some(text) = lambda else {
        return Ok(Vec::new());
    };
    let value: Value = serde_json::from_str(text).map_err(|e| format!("bad lambda JSON: {e}"))?;
    let arr = value.as_array().ok_or("lambda must be a JSON array")?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, entry) in arr.iter().enumerate() {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| format!("lambda[{i}] must be [re, im]"))?;
        let re = pair[0]
            .as_str()
            .ok_or_else(|| format!("lambda[{i}][0] must be a rational string"))?;
        let im = pair[1]
            .as_str()
            .ok_or_else(|| format!("lambda[{i}][1] must be a rational string"))?;
        out.push(Scalar::new(
            Scalar::parse_rational(re).map_err(|e| format!("lambda[{i}]: {e}"))?,
            Scalar::parse_rational(im).map_err(|e| format!("lambda[{i}]: {e}"))?,
        ));
    }
    Ok(out)
}

fn parse_family(spec: &str) -> Result<DirectedGraph, String> {
    if let Some(rest) = spec.strip_prefix("union:") {
        let (a, b) = rest
            .split_once('+')
            .ok_or("union spec must be union:SPEC+SPEC")?;
        return Ok(families::disjoint_union(
            &parse_family(a)?,
            &parse_family(b)?,
        ));
    }
    let (kind, n) = spec
        .split_once(':')
        .ok_or_else(|| format!("bad family spec {spec:?}; expected NAME:N"))?;
    let n: usize = n
        .parse()
        .map_err(|_| format!("bad family size in {spec:?}"))?;
    match kind {
        "loops" => Ok(families::loops(n)),
        "parallel" => Ok(families::parallel(n)),
        "cycle" => {
            if n < 1 {
                return Err("cycle needs at least one vertex".into());
            }
            Ok(families::cycle(n))
        }
        "chain" => {
            if n < 1 {
                return Err("chain needs at least one vertex".into());
            }
            Ok(families::chain(n))
        }
        other => Err(format!("unknown family {other:?}")),
    }
}

fn generator_coo(
    g: &DirectedGraph,
    fock: &quivalg::fock::TruncatedFock,
    spec: &str,
) -> Result<String, String> {
    let (kind, id) = spec
        .split_once(':')
        .ok_or("matrix spec must be L:<edge-id> or P:<vertex-id>")?;
    match kind {
        "L" => {
            let e = g.edge_ix(id).map_err(|e| e.to_string())?;
            Ok(fock.creation_matrix(e).to_coo_text())
        }
        "P" => {
            let v = g.vertex_ix(id).map_err(|e| e.to_string())?;
            Ok(fock.projection_matrix(v).to_coo_text())
        }
        _ => Err("matrix spec must start with L: or P:".into()),
    }
}
