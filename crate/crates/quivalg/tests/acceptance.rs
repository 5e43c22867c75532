//! Acceptance suite. Each test covers one criterion, pins its tolerance
//! in code, and prints a single pass/fail line (run with
//! `cargo test --test acceptance -- --nocapture` to see them).

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num::complex::Complex64;
use num::{One, ToPrimitive};

use quivalg::algebra::AlgebraElement;
use quivalg::chars::{ball_dimension, character};
use quivalg::corpus::families::{builtin_corpus, loops};
use quivalg::fock::{
    apply_to_basis, build_truncated_rep, corner_word_bijection, norm_estimate, represent_on,
    verify_relations,
};
use quivalg::graph::DirectedGraph;
use quivalg::nestrep::{edge_count_via_radical, nest_rep, rep_family};
use quivalg::paths::{enumerate_paths, factor_loop, Path, PathTable};
use quivalg::reconstruct::{realize, reconstruct_graph, verify_roundtrip};
use quivalg::rng::{child_seed, random_ball_point, random_element, small_scalar, stream};
use quivalg::scalar::{Rational, Scalar};

const BASE_SEED: u64 = 0;

fn announce(criterion: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion} {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed: {detail}");
}

/// Path count up to a level without materializing the table.
fn path_count(g: &DirectedGraph, k: usize) -> usize {
    let n = g.vertex_count();
    let mut per_range = vec![1usize; n];
    let mut total = n;
    for _ in 1..=k {
        let mut next = vec![0usize; n];
        for e in g.edges() {
            next[e.dst] += per_range[e.src];
        }
        per_range = next;
        total += per_range.iter().sum::<usize>();
    }
    total
}

/// Corpus vertices carrying at least one loop edge, on graphs whose path
/// table at `level` stays below `dim_cap`.
fn loop_vertex_instances(level: usize, dim_cap: usize) -> Vec<(String, DirectedGraph, String)> {
    let mut out = Vec::new();
    for (name, g) in builtin_corpus() {
        if path_count(&g, level) > dim_cap {
            continue;
        }
        for v in g.vertices() {
            if ball_dimension(&g, v).unwrap() >= 1 {
                out.push((name.clone(), g.clone(), v.clone()));
            }
        }
    }
    out
}

#[test]
fn criterion_1_relation_suite() {
    let started = Instant::now();
    let corpus = builtin_corpus();
    assert!(corpus.len() >= 20, "corpus too small");
    for (name, g) in &corpus {
        assert!(
            g.vertex_count() <= 12 && g.edge_count() <= 16,
            "{name} out of bounds"
        );
        for k in [4, 6] {
            let fock = build_truncated_rep(g, k).unwrap();
            let report = verify_relations(g, &fock);
            assert!(report.all_pass(), "{name} at k={k}: {report:?}");
        }
    }
    let elapsed = started.elapsed();
    announce(
        1,
        "relation suite",
        elapsed < Duration::from_secs(5),
        &format!("{} graphs, k=4 and k=6, {:.2?}", corpus.len(), elapsed),
    );
}

#[test]
fn criterion_2_homomorphism_suite() {
    let started = Instant::now();
    let corpus = builtin_corpus();
    let mut pairs_checked = 0usize;
    for (graph_ix, (name, g)) in corpus.iter().enumerate() {
        let table_small = enumerate_paths(g, 2);
        let table = enumerate_paths(g, 6);
        let nests: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| e.src != e.dst)
            .map(|e| nest_rep(g, &e.id).unwrap())
            .collect();
        let check_columns: Vec<&Path> = table.iter().filter(|u| u.len() <= 2).collect();
        for i in 0..200u64 {
            let mut rng = stream(child_seed(BASE_SEED, name, i + ((graph_ix as u64) << 32)));
            let a = random_element(g, &table_small, &mut rng, 2, 5);
            let b = random_element(g, &table_small, &mut rng, 2, 5);
            let ab = a.multiply(&b).unwrap();

            // Matrix multiplicativity, column by column at safe depth.
            for u in &check_columns {
                let direct = apply_to_basis(&ab, &table, u);
                let col_b = apply_to_basis(&b, &table, u);
                let mut composed: Vec<(usize, Scalar)> = Vec::new();
                for (ix, val) in col_b {
                    let t = table.path_by_index(ix).unwrap();
                    for (row, c) in apply_to_basis(&a, &table, t) {
                        match composed.binary_search_by_key(&row, |(r, _)| *r) {
                            Ok(pos) => {
                                let sum = composed[pos].1.clone() + &c * &val;
                                if sum.is_zero() {
                                    composed.remove(pos);
                                } else {
                                    composed[pos].1 = sum;
                                }
                            }
                            Err(pos) => {
                                let term = &c * &val;
                                if !term.is_zero() {
                                    composed.insert(pos, (row, term));
                                }
                            }
                        }
                    }
                }
                assert_eq!(
                    direct,
                    composed,
                    "{name}: represent columns differ at {}",
                    u.text(g)
                );
            }

            for pi in &nests {
                let lhs = pi.eval(&ab).unwrap();
                let rhs = pi.eval(&a).unwrap().mul(&pi.eval(&b).unwrap());
                assert_eq!(lhs, rhs, "{name}: nest rep at {}", pi.edge_name());
            }

            let v = g.vertex_name(rand::Rng::gen_range(&mut rng, 0..g.vertex_count()));
            let dim = ball_dimension(g, v).unwrap();
            let rho = character(g, v, random_ball_point(dim, &mut rng)).unwrap();
            let lhs = rho.eval(&ab).unwrap();
            let rhs = &rho.eval(&a).unwrap() * &rho.eval(&b).unwrap();
            assert_eq!(lhs, rhs, "{name}: character at {v}");

            pairs_checked += 1;
        }
    }
    let elapsed = started.elapsed();
    announce(
        2,
        "homomorphism suite",
        elapsed < Duration::from_secs(10),
        &format!("{pairs_checked} pairs, exact equalities, {:.2?}", elapsed),
    );
}

#[test]
fn criterion_3_character_fock_agreement() {
    let instances = loop_vertex_instances(10, 25_000);
    assert!(!instances.is_empty());
    let mut tables: HashMap<(String, usize), PathTable> = HashMap::new();
    let mut worst_final = 0.0f64;
    let cap = Scalar::from_ratio(7, 20); // |lambda| <= 0.35, inside the 0.9 cap

    for i in 0..50u64 {
        let (name, g, x) = &instances[(i as usize) % instances.len()];
        let mut rng = stream(child_seed(BASE_SEED, "char-fock", i));
        let dim = ball_dimension(g, x).unwrap();
        let lambda: Vec<Scalar> = random_ball_point(dim, &mut rng)
            .into_iter()
            .map(|z| &z * &cap)
            .collect();
        let rho = character(g, x, lambda).unwrap();
        let table3 = enumerate_paths(g, 3);
        let a = random_element(g, &table3, &mut rng, 3, 6);
        let exact = rho.eval(&a).unwrap();
        let (re, im) = exact.to_f64_pair();
        let symbolic = Complex64::new(re, im);

        let mut previous = f64::INFINITY;
        let mut final_err = f64::INFINITY;
        for k in 4..=10usize {
            let table = tables
                .entry((name.clone(), k))
                .or_insert_with(|| enumerate_paths(g, k));
            let matrix = represent_on(&a, table).unwrap().to_numeric();
            let v = quivalg::fock::eigenvector(g, x, &rho.lambda_f64(), k).unwrap();
            let mv = matrix.matvec(&v);
            let inner: Complex64 = mv.iter().zip(&v).map(|(m, vi)| m * vi.conj()).sum();
            let err = (symbolic - inner).norm();
            assert!(
                err <= previous + 1e-12,
                "{name}/{x} instance {i}: error grew from {previous} to {err} at k={k}"
            );
            previous = err;
            final_err = err;
        }
        assert!(
            final_err <= 1e-6,
            "{name}/{x} instance {i}: |rho(A) - <Av,v>| = {final_err} at k=10"
        );
        worst_final = worst_final.max(final_err);
    }
    announce(
        3,
        "character-Fock agreement",
        true,
        &format!("50 instances, worst error at k=10 was {worst_final:.3e} <= 1e-6, monotone within 1e-12"),
    );
}

#[test]
fn criterion_4_rep_family_matches_edge_existence() {
    let mut pairs = 0usize;
    for (name, g) in builtin_corpus() {
        for x in g.vertices() {
            for y in g.vertices() {
                if x == y {
                    continue;
                }
                let family = rep_family(&g, x, y).unwrap();
                let edges = g.edges_between(x, y).unwrap();
                assert_eq!(
                    family.is_empty(),
                    edges.is_empty(),
                    "{name}: family/edges mismatch at ({x}, {y})"
                );
                assert_eq!(family.len(), edges.len(), "{name}: ({x}, {y})");
                pairs += 1;
            }
        }
    }
    announce(
        4,
        "nest representation existence",
        true,
        &format!("{pairs} ordered pairs, zero exceptions"),
    );
}

#[test]
fn criterion_5_edge_count_via_radical() {
    let mut pairs = 0usize;
    for (name, g) in builtin_corpus() {
        for x in g.vertices() {
            for y in g.vertices() {
                if x == y {
                    continue;
                }
                let seed = child_seed(BASE_SEED, &format!("accept-radical-{name}"), pairs as u64);
                let computed = edge_count_via_radical(&g, x, y, seed).unwrap();
                let direct = g.edges_between(x, y).unwrap().len();
                assert_eq!(computed, direct, "{name}: ({x}, {y})");
                pairs += 1;
            }
        }
    }
    announce(
        5,
        "radical edge count",
        true,
        &format!("{pairs} ordered pairs, exact"),
    );
}

#[test]
fn criterion_6_roundtrip_and_discrimination() {
    let started = Instant::now();
    let corpus = builtin_corpus();
    let mut realized = Vec::new();
    for (name, g) in &corpus {
        let report = verify_roundtrip(g, BASE_SEED, &[1, 2, 3, 4, 5]).unwrap();
        assert!(report.pass, "{name}: {report:?}");
        realized.push(realize(&reconstruct_graph(g, BASE_SEED).unwrap()));
    }
    let mut discriminated = 0usize;
    for i in 0..corpus.len() {
        for j in (i + 1)..corpus.len() {
            let certified_isomorphic = corpus[i].1.are_isomorphic(&corpus[j].1).is_some();
            let rebuilt_isomorphic = realized[i].are_isomorphic(&realized[j]).is_some();
            assert_eq!(
                certified_isomorphic, rebuilt_isomorphic,
                "{} vs {}: reconstruction does not track the oracle",
                corpus[i].0, corpus[j].0
            );
            if !certified_isomorphic {
                discriminated += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    announce(
        6,
        "reconstruction round trip",
        elapsed < Duration::from_secs(30),
        &format!(
            "{} graphs with 5 scrambles each, {discriminated} non-isomorphic pairs discriminated, {:.2?}",
            corpus.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_7_corner_word_bijection() {
    let mut vertices = 0usize;
    for (name, g) in builtin_corpus() {
        for v in g.vertices() {
            corner_word_bijection(&g, v, 6).unwrap_or_else(|e| panic!("{name}, vertex {v}: {e}"));
            vertices += 1;
        }
    }
    announce(
        7,
        "corner word bijection",
        true,
        &format!("{vertices} vertices at L=6, bijection and intertwining exact"),
    );
}

#[test]
fn criterion_8_loop_weight_estimate() {
    let instances = loop_vertex_instances(12, 35_000);
    assert!(!instances.is_empty());
    let cap = Scalar::from_ratio(9, 10);
    let mut sharp_hits = 0usize;
    let mut violations = Vec::new();
    let mut produced = 0usize;
    let mut attempt = 0u64;

    while produced < 50 {
        let (name, g, x) = &instances[(attempt as usize) % instances.len()];
        let mut rng = stream(child_seed(BASE_SEED, "restimate", attempt));
        attempt += 1;

        let m = rand::Rng::gen_range(&mut rng, 1..=3usize);
        let table = enumerate_paths(g, 5);
        let xi = g.vertex_ix(x).unwrap();
        let heavy_loops: Vec<Path> = table
            .loops_at(xi)
            .into_iter()
            .filter(|u| factor_loop(g, u).unwrap().len() >= m)
            .cloned()
            .collect();
        if heavy_loops.is_empty() {
            continue;
        }
        // Distinct support paths keep every coefficient's modulus
        // rational, so the upper bound stays exact.
        let mut pool = heavy_loops.clone();
        rand::seq::SliceRandom::shuffle(pool.as_mut_slice(), &mut rng);
        let support = rand::Rng::gen_range(&mut rng, 1..=5usize.min(pool.len()));
        let mut a = AlgebraElement::zero(g);
        for u in pool.into_iter().take(support) {
            a = a
                .add(&AlgebraElement::from_path(g, u, small_scalar(&mut rng)))
                .unwrap();
        }
        if a.is_zero() {
            continue;
        }

        let dim = ball_dimension(g, x).unwrap();
        let lambda: Vec<Scalar> = random_ball_point(dim, &mut rng)
            .into_iter()
            .map(|z| &z * &cap)
            .collect();
        let rho = character(g, x, lambda).unwrap();
        let r_sq: Rational = rho.norm_sq();
        assert!(r_sq < Rational::one());

        // Exact route: |rho(A)|^2 <= (r^2)^m * upper^2 in rational
        // arithmetic; upper is the coefficient 1-norm, exact because
        // every coefficient has rational modulus.
        let value = rho.eval(&a).unwrap();
        let upper: Rational = a
            .terms()
            .map(|(_, c)| c.abs_exact().expect("rational modulus by construction"))
            .sum();
        let mut r_pow = Rational::one();
        for _ in 0..m {
            r_pow *= &r_sq;
        }
        let bound = &r_pow * &upper * &upper;
        assert!(
            value.norm_sq() <= bound,
            "{name}/{x} attempt {attempt}: exact bound violated (m={m})"
        );

        // Sharp probe: the truncated norm at k=12 plus a small tolerance.
        let (lower, _) = norm_estimate(g, &a, 12).unwrap();
        let r = r_sq.to_f64().unwrap().sqrt();
        let sharp = r.powi(m as i32) * (lower + 1e-6);
        let observed = value.abs_f64();
        if observed <= sharp {
            sharp_hits += 1;
        } else {
            violations.push(format!(
                "{name}/{x} m={m}: |rho(A)| = {observed:.6e} > {sharp:.6e}"
            ));
        }
        produced += 1;
    }

    for v in &violations {
        println!("  sharp-probe violation: {v}");
    }
    let ratio = sharp_hits as f64 / produced as f64;
    announce(
        8,
        "loop weight estimate",
        ratio >= 0.95,
        &format!(
            "{produced} instances: exact bound 100%, sharp probe {}/{} ({:.0}%)",
            sharp_hits,
            produced,
            ratio * 100.0
        ),
    );
}

#[test]
fn criterion_9_creation_sum_norms() {
    let mut detail = String::new();
    for n in 1..=4usize {
        let g = loops(n);
        let mut sum = AlgebraElement::zero(&g);
        for e in g.edges() {
            sum = sum
                .add(&AlgebraElement::creation(&g, &e.id).unwrap())
                .unwrap();
        }
        let (lower, upper) = norm_estimate(&g, &sum, 4).unwrap();
        let expected = (n as f64).sqrt();
        assert!(
            (lower - expected).abs() <= 1e-10,
            "n={n}: lower = {lower}, expected sqrt({n}) = {expected}"
        );
        assert_eq!(upper, n as f64);
        detail.push_str(&format!("n={n}: {lower:.12}; "));
    }
    announce(9, "creation sum norms", true, detail.trim_end_matches("; "));
}
