//! Exact polynomial arithmetic in the algebra generated by the creation
//! operators `L_e` and vertex projections `P_v`.
//!
//! An element is a finitely supported series over paths with exact
//! complex-rational coefficients. Products follow the semigroupoid rule:
//! `L_u · L_v = L_{uv}` when the words compose, and `0` otherwise.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::Error;
use crate::graph::DirectedGraph;
use crate::paths::{compose, Path};
use crate::scalar::Scalar;

/// A finitely supported series `Σ a_w L_w` with exact coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    graph_fp: u64,
    terms: BTreeMap<Path, Scalar>,
}

impl AlgebraElement {
    pub fn zero(g: &DirectedGraph) -> Self {
        AlgebraElement {
            graph_fp: g.fingerprint(),
            terms: BTreeMap::new(),
        }
    }

    /// The vertex projection `P_v`, i.e. the length-0 path at `v`.
    pub fn vertex_projection(g: &DirectedGraph, v: &str) -> Result<Self, Error> {
        Ok(Self::from_path(g, Path::vertex_named(g, v)?, Scalar::one()))
    }

    /// The creation operator `L_e` for a single edge.
    pub fn creation(g: &DirectedGraph, e: &str) -> Result<Self, Error> {
        Ok(Self::from_path(g, Path::edge_named(g, e)?, Scalar::one()))
    }

    /// `L_w` for an arbitrary path.
    pub fn monomial(g: &DirectedGraph, w: Path) -> Self {
        Self::from_path(g, w, Scalar::one())
    }

    pub fn from_path(g: &DirectedGraph, w: Path, coeff: Scalar) -> Self {
        let mut elem = Self::zero(g);
        elem.add_term(w, coeff);
        elem
    }

    /// The unit `Σ_v P_v` of the algebra over a finite graph.
    pub fn unit(g: &DirectedGraph) -> Self {
        let mut elem = Self::zero(g);
        for v in 0..g.vertex_count() {
            elem.add_term(Path::vertex(g, v), Scalar::one());
        }
        elem
    }

    pub fn graph_fp(&self) -> u64 {
        self.graph_fp
    }

    pub(crate) fn add_term(&mut self, w: Path, coeff: Scalar) {
        debug_assert_eq!(w.graph_fp(), self.graph_fp);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Supported paths and coefficients in level-major order.
    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum length of a supported path; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) -> Result<(), Error> {
        if self.graph_fp != other.graph_fp {
            return Err(Error::MixedGraphs);
        }
        Ok(())
    }

    /// The semigroupoid-ring product, exact.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_same(rhs)?;
        let mut out = AlgebraElement {
            graph_fp: self.graph_fp,
            terms: BTreeMap::new(),
        };
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                if let Some(w) = compose(u, v)? {
                    out.add_term(w, a * b);
                }
            }
        }
        Ok(out)
    }

    /// `α·self + β·rhs`, exact, with zero coefficients dropped.
    pub fn add_scale(&self, rhs: &Self, alpha: &Scalar, beta: &Scalar) -> Result<Self, Error> {
        self.check_same(rhs)?;
        let mut out = AlgebraElement {
            graph_fp: self.graph_fp,
            terms: BTreeMap::new(),
        };
        for (w, a) in &self.terms {
            out.add_term(w.clone(), alpha * a);
        }
        for (w, b) in &rhs.terms {
            out.add_term(w.clone(), beta * b);
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, Error> {
        self.add_scale(rhs, &Scalar::one(), &Scalar::one())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.add_scale(rhs, &Scalar::one(), &-Scalar::one())
    }

    pub fn scale(&self, alpha: &Scalar) -> Self {
        let mut out = AlgebraElement {
            graph_fp: self.graph_fp,
            terms: BTreeMap::new(),
        };
        for (w, a) in &self.terms {
            out.add_term(w.clone(), alpha * a);
        }
        out
    }

    /// The corner `P_y · self · P_x`: retains exactly the coefficients of
    /// paths with source `x` and range `y`.
    pub fn corner(&self, g: &DirectedGraph, x: &str, y: &str) -> Result<Self, Error> {
        let (xi, yi) = (g.vertex_ix(x)?, g.vertex_ix(y)?);
        Ok(self.corner_ix(xi, yi))
    }

    pub fn corner_ix(&self, x: usize, y: usize) -> Self {
        AlgebraElement {
            graph_fp: self.graph_fp,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.src() == x && w.dst() == y)
                .map(|(w, a)| (w.clone(), a.clone()))
                .collect(),
        }
    }

    /// Restriction of the series to paths of length exactly `m`.
    pub fn phi(&self, m: usize) -> Self {
        AlgebraElement {
            graph_fp: self.graph_fp,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == m)
                .map(|(w, a)| (w.clone(), a.clone()))
                .collect(),
        }
    }

    /// The stored coefficient `a_w`; zero when unsupported.
    pub fn fourier_coeff(&self, w: &Path) -> Result<Scalar, Error> {
        if w.graph_fp() != self.graph_fp {
            return Err(Error::MixedGraphs);
        }
        Ok(self.terms.get(w).cloned().unwrap_or_else(Scalar::zero))
    }

    /// Sum of coefficient moduli; an upper bound for the operator norm
    /// since each `L_w` is a partial isometry.
    pub fn coeff_one_norm_f64(&self) -> f64 {
        self.terms.values().map(Scalar::abs_f64).sum()
    }

    /// Text form `α·w + …` with paths in their text form.
    pub fn text(&self, g: &DirectedGraph) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        self.terms
            .iter()
            .map(|(w, a)| format!("{}·{}", a, w.text(g)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON form: a list of `[path, re, im]` with rationals as strings.
    pub fn to_json(&self, g: &DirectedGraph) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, a)| {
                    Value::Array(vec![
                        Value::String(w.text(g)),
                        Value::String(Scalar::format_rational(&a.re)),
                        Value::String(Scalar::format_rational(&a.im)),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(g: &DirectedGraph, value: &Value) -> Result<Self, Error> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::parse("element", "expected a JSON array of terms"))?;
        let mut elem = AlgebraElement::zero(g);
        for (i, term) in arr.iter().enumerate() {
            let triple = term
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| Error::parse(format!("element[{i}]"), "expected [path, re, im]"))?;
            let path_text = triple[0]
                .as_str()
                .ok_or_else(|| Error::parse(format!("element[{i}][0]"), "expected a string"))?;
            let re = triple[1]
                .as_str()
                .ok_or_else(|| Error::parse(format!("element[{i}][1]"), "expected a string"))?;
            let im = triple[2]
                .as_str()
                .ok_or_else(|| Error::parse(format!("element[{i}][2]"), "expected a string"))?;
            let path = Path::parse(g, path_text)?;
            let re = Scalar::parse_rational(re)
                .map_err(|e| Error::parse(format!("element[{i}][1]"), e))?;
            let im = Scalar::parse_rational(im)
                .map_err(|e| Error::parse(format!("element[{i}][2]"), e))?;
            elem.add_term(path, Scalar::new(re, im));
        }
        Ok(elem)
    }
}
