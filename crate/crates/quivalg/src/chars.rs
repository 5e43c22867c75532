//! Multiplicative linear functionals on the polynomial algebra: every
//! character lives over one vertex and is parametrized by a point of the
//! unit ball indexed by the loop edges there.

use num::complex::Complex64;
use num::One;

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::graph::DirectedGraph;
use crate::scalar::{Rational, Scalar};

/// A character stored intensionally as its base vertex and parameter
/// vector. Evaluation is the word-product formula; boundary parameters
/// (`|lambda|_2 = 1`) are legal but flagged, since they have no truncated
/// eigenvector counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    graph_fp: u64,
    vertex: usize,
    vertex_name: String,
    lambda: Vec<Scalar>,
    loop_edges: Vec<usize>,
    boundary: bool,
}

/// Builds the character at `x` with parameter `lambda`, one entry per
/// loop edge at `x` in declaration order. Requires `|lambda|_2 <= 1`,
/// decided exactly.
pub fn character(g: &DirectedGraph, x: &str, lambda: Vec<Scalar>) -> Result<Character, Error> {
    let xi = g.vertex_ix(x)?;
    let loop_edges = g.loop_edge_ixs(xi);
    if lambda.len() != loop_edges.len() {
        return Err(Error::DimensionMismatch {
            got: lambda.len(),
            want: loop_edges.len(),
        });
    }
    let norm_sq: Rational = lambda.iter().map(Scalar::norm_sq).sum();
    if norm_sq > Rational::one() {
        return Err(Error::NormViolation(norm_sq.to_string()));
    }
    Ok(Character {
        graph_fp: g.fingerprint(),
        vertex: xi,
        vertex_name: x.to_owned(),
        boundary: norm_sq == Rational::one(),
        lambda,
        loop_edges,
    })
}

impl Character {
    pub fn vertex_name(&self) -> &str {
        &self.vertex_name
    }

    pub fn vertex_ix(&self) -> usize {
        self.vertex
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn lambda_f64(&self) -> Vec<Complex64> {
        self.lambda
            .iter()
            .map(|z| {
                let (re, im) = z.to_f64_pair();
                Complex64::new(re, im)
            })
            .collect()
    }

    /// True when the parameter sits on the unit sphere. Such characters
    /// are evaluated symbolically only.
    pub fn is_boundary(&self) -> bool {
        self.boundary
    }

    /// Squared parameter norm, exact.
    pub fn norm_sq(&self) -> Rational {
        self.lambda.iter().map(Scalar::norm_sq).sum()
    }

    /// Exact evaluation: the coefficient of the base vertex plus the sum
    /// of `a_w · w(lambda)` over words in the loop edges at the base
    /// vertex; every other path contributes zero.
    pub fn eval(&self, a: &AlgebraElement) -> Result<Scalar, Error> {
        if a.graph_fp() != self.graph_fp {
            return Err(Error::MixedGraphs);
        }
        let mut total = Scalar::zero();
        'terms: for (w, coeff) in a.terms() {
            if w.is_vertex() {
                if w.src() == self.vertex {
                    total += coeff.clone();
                }
                continue;
            }
            if w.src() != self.vertex || w.dst() != self.vertex {
                continue;
            }
            let mut product = Scalar::one();
            for &e in w.word() {
                match self.loop_edges.iter().position(|&le| le == e) {
                    Some(pos) => product = &product * &self.lambda[pos],
                    None => continue 'terms,
                }
            }
            total += &product * coeff;
        }
        Ok(total)
    }

    /// The unique vertex whose projection evaluates to one; validated by
    /// evaluating every vertex projection.
    pub fn component_of(&self, g: &DirectedGraph) -> Result<String, Error> {
        let mut found = None;
        for v in 0..g.vertex_count() {
            let p = AlgebraElement::vertex_projection(g, g.vertex_name(v))?;
            let value = self.eval(&p)?;
            let expected_one = v == self.vertex;
            if value == Scalar::one() {
                if !expected_one || found.is_some() {
                    return Err(Error::Inconsistent(
                        "more than one vertex projection evaluates to one".into(),
                    ));
                }
                found = Some(g.vertex_name(v).to_owned());
            } else if !value.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "P_{} evaluated to {}",
                    g.vertex_name(v),
                    value
                )));
            }
        }
        found.ok_or_else(|| Error::Inconsistent("no vertex projection evaluates to one".into()))
    }
}

/// The parameter dimension of the character family at `x`: the number of
/// loop edges based there.
pub fn ball_dimension(g: &DirectedGraph, x: &str) -> Result<usize, Error> {
    Ok(g.loop_edge_ixs(g.vertex_ix(x)?).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::families::{g2, g4, g5};
    use crate::paths::Path;

    fn half() -> Vec<Scalar> {
        vec![Scalar::from_ratio(1, 2), Scalar::zero()]
    }

    #[test]
    fn character_construction_and_bounds() {
        let g = g2();
        let rho = character(&g, "v", half()).unwrap();
        assert!(!rho.is_boundary());
        let la = AlgebraElement::creation(&g, "a").unwrap();
        let lb = AlgebraElement::creation(&g, "b").unwrap();
        assert_eq!(rho.eval(&la).unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!(rho.eval(&lb).unwrap(), Scalar::zero());

        let g4v = g4();
        let point = character(&g4v, "x", vec![]).unwrap();
        assert_eq!(point.lambda().len(), 0);

        let boundary = character(&g, "v", vec![Scalar::one(), Scalar::zero()]).unwrap();
        assert!(boundary.is_boundary());

        let too_big = character(&g, "v", vec![Scalar::one(), Scalar::one()]);
        assert!(matches!(too_big, Err(Error::NormViolation(_))));
        let mismatch = character(&g, "v", vec![Scalar::one()]);
        assert!(matches!(mismatch, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn evaluation_follows_word_products() {
        let g = g2();
        let rho = character(&g, "v", half()).unwrap();

        // P_v + L_a + L_aa evaluates to 1 + 1/2 + 1/4 = 7/4.
        let pv = AlgebraElement::vertex_projection(&g, "v").unwrap();
        let la = AlgebraElement::creation(&g, "a").unwrap();
        let laa = AlgebraElement::monomial(&g, Path::from_edge_ids(&g, &["a", "a"]).unwrap());
        let elem = pv.add(&la).unwrap().add(&laa).unwrap();
        assert_eq!(rho.eval(&elem).unwrap(), Scalar::from_ratio(7, 4));

        // Any word containing b vanishes since lambda_b = 0.
        let lab = AlgebraElement::monomial(&g, Path::from_edge_ids(&g, &["a", "b"]).unwrap());
        assert_eq!(rho.eval(&lab).unwrap(), Scalar::zero());

        // Edges with distinct endpoints are nilpotent: every character
        // kills them.
        let g4v = g4();
        let rho_x = character(&g4v, "x", vec![]).unwrap();
        let le = AlgebraElement::creation(&g4v, "e").unwrap();
        assert_eq!(rho_x.eval(&le).unwrap(), Scalar::zero());

        let py = AlgebraElement::vertex_projection(&g4v, "y").unwrap();
        let px = AlgebraElement::vertex_projection(&g4v, "x").unwrap();
        assert_eq!(rho_x.eval(&py).unwrap(), Scalar::zero());
        assert_eq!(rho_x.eval(&px).unwrap(), Scalar::one());
    }

    #[test]
    fn component_is_the_base_vertex() {
        let g = g2();
        let rho = character(&g, "v", half()).unwrap();
        assert_eq!(rho.component_of(&g).unwrap(), "v");

        let g4v = g4();
        let rho = character(&g4v, "y", vec![]).unwrap();
        assert_eq!(rho.component_of(&g4v).unwrap(), "y");

        // Vertex projection values sum to one.
        let mut sum = Scalar::zero();
        for v in g4v.vertices() {
            let p = AlgebraElement::vertex_projection(&g4v, v).unwrap();
            sum += rho.eval(&p).unwrap();
        }
        assert_eq!(sum, Scalar::one());
    }

    #[test]
    fn multiplicative_on_products_including_boundary() {
        let g = g2();
        for lambda in [
            half(),
            vec![Scalar::from_ratio(3, 5), Scalar::from_ratio(4, 5)], // boundary
        ] {
            let rho = character(&g, "v", lambda).unwrap();
            let la = AlgebraElement::creation(&g, "a").unwrap();
            let lb = AlgebraElement::creation(&g, "b").unwrap();
            let pv = AlgebraElement::vertex_projection(&g, "v").unwrap();
            let x = pv
                .add_scale(&la, &Scalar::from_int(2), &Scalar::from_parts(1, 3, 1, 1))
                .unwrap();
            let y = lb
                .add_scale(&la, &Scalar::i(), &Scalar::from_ratio(-2, 3))
                .unwrap();
            let product = x.multiply(&y).unwrap();
            let lhs = rho.eval(&product).unwrap();
            let rhs = &rho.eval(&x).unwrap() * &rho.eval(&y).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ball_dimensions() {
        assert_eq!(ball_dimension(&g2(), "v").unwrap(), 2);
        assert_eq!(ball_dimension(&g4(), "x").unwrap(), 0);
        assert_eq!(ball_dimension(&g5(), "y").unwrap(), 1);
        assert!(ball_dimension(&g5(), "zz").is_err());
    }

    #[test]
    fn fock_inner_products_approach_character_values() {
        use num::complex::Complex64;

        // Large parameter norms converge slowly; the truncated inner
        // product must still approach the symbolic value monotonically.
        let g = g2();
        let lambda = vec![Scalar::from_ratio(3, 5), Scalar::from_ratio(-2, 5)];
        let rho = character(&g, "v", lambda).unwrap();
        let la = AlgebraElement::creation(&g, "a").unwrap();
        let laa = AlgebraElement::monomial(&g, Path::from_edge_ids(&g, &["a", "a"]).unwrap());
        let elem = AlgebraElement::vertex_projection(&g, "v")
            .unwrap()
            .add_scale(&la, &Scalar::one(), &Scalar::from_int(2))
            .unwrap()
            .add(&laa.scale(&Scalar::from_parts(0, 1, 1, 2)))
            .unwrap();
        let (re, im) = rho.eval(&elem).unwrap().to_f64_pair();
        let symbolic = Complex64::new(re, im);

        let mut previous = f64::INFINITY;
        let mut first = 0.0;
        for k in 3..=9usize {
            let table = crate::paths::enumerate_paths(&g, k);
            let matrix = crate::fock::represent_on(&elem, &table)
                .unwrap()
                .to_numeric();
            let v = crate::fock::eigenvector(&g, "v", &rho.lambda_f64(), k).unwrap();
            let mv = matrix.matvec(&v);
            let inner: Complex64 = mv.iter().zip(&v).map(|(m, vi)| m * vi.conj()).sum();
            let err = (symbolic - inner).norm();
            assert!(err <= previous + 1e-10, "error grew at k={k}");
            if k == 3 {
                first = err;
            }
            previous = err;
        }
        assert!(previous < first, "no progress from k=3 to k=9");
    }

    #[test]
    fn characters_with_equal_parameters_agree_on_a_spanning_set() {
        let g = g2();
        let rho1 = character(&g, "v", half()).unwrap();
        let rho2 = character(&g, "v", half()).unwrap();
        let table = crate::paths::enumerate_paths(&g, 3);
        for w in table.iter() {
            let m = AlgebraElement::monomial(&g, w.clone());
            assert_eq!(rho1.eval(&m).unwrap(), rho2.eval(&m).unwrap());
        }
    }
}
