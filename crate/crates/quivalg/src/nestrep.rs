//! Two-dimensional nest representations attached to edges with distinct
//! endpoints, radical membership for vertex pairs, and edge counting via
//! the span of degree-one corner coefficients.

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::chars::character;
use crate::error::Error;
use crate::graph::DirectedGraph;
use crate::paths::{enumerate_paths, Path};
use crate::rng;
use crate::scalar::Scalar;

/// A 2x2 matrix with exact complex-rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2(pub [[Scalar; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([
            [Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), Scalar::zero()],
        ])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Scalar::zero();
                for k in 0..2 {
                    acc += &self.0[i][k] * &rhs.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }

    /// True when the square vanishes, i.e. both diagonal entries do.
    pub fn is_square_zero(&self) -> bool {
        self.mul(self).is_zero()
    }
}

/// The compression of the algebra to `span{xi_e, xi_x1}` for an edge
/// `e: x1 -> x2` with distinct endpoints. In the fixed basis
/// `(xi_e, xi_x1)` every image is upper triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestRep {
    graph_fp: u64,
    edge: usize,
    edge_name: String,
    x1: usize,
    x2: usize,
}

/// Builds the nest representation for an edge with distinct endpoints.
pub fn nest_rep(g: &DirectedGraph, e: &str) -> Result<NestRep, Error> {
    let ix = g.edge_ix(e)?;
    let edge = g.edge(ix);
    if edge.src == edge.dst {
        return Err(Error::LoopEdge(e.to_owned()));
    }
    Ok(NestRep {
        graph_fp: g.fingerprint(),
        edge: ix,
        edge_name: e.to_owned(),
        x1: edge.src,
        x2: edge.dst,
    })
}

impl NestRep {
    pub fn edge_name(&self) -> &str {
        &self.edge_name
    }

    pub fn source_ix(&self) -> usize {
        self.x1
    }

    pub fn range_ix(&self) -> usize {
        self.x2
    }

    /// Evaluates the representation on a polynomial. In the basis
    /// `(xi_e, xi_x1)` the image is
    /// `[[a_{x2}, a_e], [0, a_{x1}]]`,
    /// reading off the coefficients of the range vertex, the edge, and
    /// the source vertex. Exact and multiplicative.
    pub fn eval(&self, a: &AlgebraElement) -> Result<Mat2, Error> {
        if a.graph_fp() != self.graph_fp {
            return Err(Error::MixedGraphs);
        }
        let mut m = Mat2::zero();
        for (w, coeff) in a.terms() {
            if w.is_vertex() {
                if w.src() == self.x2 {
                    m.0[0][0] += coeff.clone();
                } else if w.src() == self.x1 {
                    m.0[1][1] += coeff.clone();
                }
            } else if w.word() == [self.edge] {
                m.0[0][1] += coeff.clone();
            }
        }
        Ok(m)
    }
}

/// One nest representation per edge from `x` to `y`; empty exactly when
/// no such edge exists. The vertices must be distinct.
pub fn rep_family(g: &DirectedGraph, x: &str, y: &str) -> Result<Vec<NestRep>, Error> {
    let (xi, yi) = (g.vertex_ix(x)?, g.vertex_ix(y)?);
    if xi == yi {
        return Err(Error::SameVertex(x.to_owned()));
    }
    g.edges_between_ixs(xi, yi)
        .into_iter()
        .map(|e| nest_rep(g, &g.edge(e).id.clone()))
        .collect()
}

/// Radical membership for the pair `(x, y)`: every family member must
/// square to zero on `a`, and the point characters at `x` and `y` must
/// vanish. Decided exactly.
pub fn in_radical(g: &DirectedGraph, a: &AlgebraElement, x: &str, y: &str) -> Result<bool, Error> {
    let family = rep_family(g, x, y)?;
    for pi in &family {
        if !pi.eval(a)?.is_square_zero() {
            return Ok(false);
        }
    }
    for v in [x, y] {
        let loops = g.loop_edge_ixs(g.vertex_ix(v)?);
        let rho = character(g, v, vec![Scalar::zero(); loops.len()])?;
        if !rho.eval(a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Everything the radical probe produces for one ordered vertex pair.
#[derive(Debug, Clone, Serialize)]
pub struct RadicalProbe {
    pub from: String,
    pub to: String,
    pub seed: u64,
    pub family_size: usize,
    pub probe_count: usize,
    /// Reduced basis of the degree-one corner span, in element text form.
    pub span_basis: Vec<String>,
    /// Dimension of the span of degree-one corner images over the probes.
    pub computed_count: usize,
    /// Direct edge count, recorded for cross-checking.
    pub direct_count: usize,
}

/// Probes the radical of the pair `(x, y)` and measures the span of the
/// degree-one corner images. Probes are the single-edge generators plus
/// seeded random corner polynomials of degree at most three; the span
/// dimension must reproduce the direct edge count, and a disagreement is
/// an error, never a silent result.
pub fn radical_probe(
    g: &DirectedGraph,
    x: &str,
    y: &str,
    seed: u64,
) -> Result<RadicalProbe, Error> {
    let (xi, yi) = (g.vertex_ix(x)?, g.vertex_ix(y)?);
    if xi == yi {
        return Err(Error::SameVertex(x.to_owned()));
    }
    let family = rep_family(g, x, y)?;
    let edges = g.edges_between_ixs(xi, yi);
    let n = edges.len();

    let mut probes: Vec<AlgebraElement> = edges
        .iter()
        .map(|&e| AlgebraElement::monomial(g, Path::edge(g, e)))
        .collect();

    // Seeded random radical representatives guard the deterministic
    // probe set against accidental degeneracy.
    let table = enumerate_paths(g, 3);
    let corner_pool: Vec<Path> = table
        .iter()
        .filter(|p| !p.is_vertex() && p.src() == xi && p.dst() == yi)
        .cloned()
        .collect();
    let mut stream = rng::stream(seed);
    if !corner_pool.is_empty() {
        for _ in 0..4 {
            let mut elem = AlgebraElement::zero(g);
            for p in &corner_pool {
                if rand::Rng::gen_bool(&mut stream, 0.5) {
                    elem = elem.add(&AlgebraElement::from_path(
                        g,
                        p.clone(),
                        rng::small_scalar(&mut stream),
                    ))?;
                }
            }
            if !elem.is_zero() {
                debug_assert!(in_radical(g, &elem, x, y)?);
                probes.push(elem);
            }
        }
    }

    // Coordinates of each probe: its degree-one corner coefficients over
    // the edges x -> y.
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(probes.len());
    for a in &probes {
        let image = a.corner_ix(xi, yi).phi(1);
        let row: Vec<Scalar> = edges
            .iter()
            .map(|&e| image.fourier_coeff(&Path::edge(g, e)).expect("same graph"))
            .collect();
        rows.push(row);
    }

    let reduced = row_reduce(rows, n);
    let computed = reduced.len();
    let span_basis: Vec<String> = reduced
        .iter()
        .map(|row| {
            let mut elem = AlgebraElement::zero(g);
            for (&e, c) in edges.iter().zip(row) {
                elem = elem
                    .add(&AlgebraElement::from_path(g, Path::edge(g, e), c.clone()))
                    .expect("same graph");
            }
            elem.text(g)
        })
        .collect();

    if computed != n {
        return Err(Error::Inconsistent(format!(
            "radical span dimension {computed} disagrees with edge count {n} for ({x}, {y})"
        )));
    }

    Ok(RadicalProbe {
        from: x.to_owned(),
        to: y.to_owned(),
        seed,
        family_size: family.len(),
        probe_count: probes.len(),
        span_basis,
        computed_count: computed,
        direct_count: n,
    })
}

/// The number of edges from `x` to `y` recovered through the radical
/// probe span.
pub fn edge_count_via_radical(
    g: &DirectedGraph,
    x: &str,
    y: &str,
    seed: u64,
) -> Result<usize, Error> {
    Ok(radical_probe(g, x, y, seed)?.computed_count)
}

/// Gaussian elimination over exact complex rationals; returns the
/// nonzero reduced rows.
fn row_reduce(mut rows: Vec<Vec<Scalar>>, width: usize) -> Vec<Vec<Scalar>> {
    let mut reduced: Vec<Vec<Scalar>> = Vec::new();
    for col in 0..width {
        let Some(pos) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let mut pivot = rows.swap_remove(pos);
        let inv = pivot[col].recip();
        for entry in &mut pivot {
            *entry = &*entry * &inv;
        }
        for r in &mut rows {
            if !r[col].is_zero() {
                let factor = r[col].clone();
                for (entry, p) in r.iter_mut().zip(&pivot) {
                    *entry = entry.clone() - &factor * p;
                }
            }
        }
        for r in &mut reduced {
            if !r[col].is_zero() {
                let factor = r[col].clone();
                for (entry, p) in r.iter_mut().zip(&pivot) {
                    *entry = entry.clone() - &factor * p;
                }
            }
        }
        reduced.push(pivot);
    }
    reduced
}
