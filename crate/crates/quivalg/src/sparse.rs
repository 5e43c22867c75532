//! Column-major sparse matrices: exact entries for relation checks and
//! representations, complex floats for the norm and eigenvector numerics.

use std::fmt::Write as _;

use num::complex::Complex64;

use crate::scalar::Scalar;

/// Entry arithmetic needed by the sparse kernels.
pub trait Entry: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn write_coo(&self, out: &mut String);
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        *self
    }
    fn write_coo(&self, out: &mut String) {
        let _ = write!(out, "{self} 0");
    }
}

impl Entry for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn write_coo(&self, out: &mut String) {
        let _ = write!(
            out,
            "{} {}",
            Scalar::format_rational(&self.re),
            Scalar::format_rational(&self.im)
        );
    }
}

/// Sparse matrix stored as per-column lists of `(row, value)`, sorted by
/// row with no explicit zeros. Equality is well defined on this normal
/// form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat<T> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Entry> SparseMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.columns[j].push((j, T::one()));
        }
        m
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            m.add_entry(r, c, v);
        }
        m
    }

    pub fn add_entry(&mut self, row: usize, col: usize, value: T) {
        if value.is_zero() {
            return;
        }
        debug_assert!(row < self.rows && col < self.cols);
        let column = &mut self.columns[col];
        match column.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(pos) => {
                let sum = column[pos].1.add(&value);
                if sum.is_zero() {
                    column.remove(pos);
                } else {
                    column[pos].1 = sum;
                }
            }
            Err(pos) => column.insert(pos, (row, value)),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero_mat(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, T)] {
        &self.columns[j]
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.columns[col]
            .binary_search_by_key(&row, |(r, _)| *r)
            .map(|pos| self.columns[col][pos].1.clone())
            .unwrap_or_else(|_| T::zero())
    }

    /// Image of a sparse column vector.
    pub fn apply(&self, x: &[(usize, T)]) -> Vec<(usize, T)> {
        let mut acc: Vec<(usize, T)> = Vec::new();
        for (j, xv) in x {
            for (r, a) in &self.columns[*j] {
                let term = a.mul(xv);
                if term.is_zero() {
                    continue;
                }
                match acc.binary_search_by_key(r, |(row, _)| *row) {
                    Ok(pos) => {
                        let sum = acc[pos].1.add(&term);
                        if sum.is_zero() {
                            acc.remove(pos);
                        } else {
                            acc[pos].1 = sum;
                        }
                    }
                    Err(pos) => acc.insert(pos, (*r, term)),
                }
            }
        }
        acc
    }

    pub fn mul(&self, rhs: &SparseMat<T>) -> SparseMat<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = SparseMat::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            out.columns[j] = self.apply(&rhs.columns[j]);
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMat<T> {
        let mut out = SparseMat::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for (r, v) in &self.columns[j] {
                out.columns[*r].push((j, v.conj()));
            }
        }
        // Row order within each output column follows the source column
        // scan, which is already ascending in j.
        out
    }

    pub fn sub(&self, rhs: &SparseMat<T>) -> SparseMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for j in 0..rhs.cols {
            for (r, v) in &rhs.columns[j] {
                out.add_entry(*r, j, v.neg());
            }
        }
        out
    }

    /// Compares columns `0..col_limit` only.
    pub fn columns_equal(&self, rhs: &SparseMat<T>, col_limit: usize) -> bool {
        self.columns[..col_limit] == rhs.columns[..col_limit]
    }

    /// First column in `0..col_limit` where the matrices differ.
    pub fn first_differing_column(&self, rhs: &SparseMat<T>, col_limit: usize) -> Option<usize> {
        (0..col_limit).find(|&j| self.columns[j] != rhs.columns[j])
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, col)| col.iter().all(|(r, _)| *r == j))
    }

    /// Coordinate text form: a `rows cols nnz` header, then one
    /// `row col re im` line per entry, column-major.
    pub fn to_coo_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, self.nnz());
        for (j, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                let _ = write!(out, "{r} {j} ");
                v.write_coo(&mut out);
                out.push('\n');
            }
        }
        out
    }
}

impl SparseMat<Scalar> {
    pub fn to_numeric(&self) -> NumMat {
        NumMat {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(r, v)| {
                            let (re, im) = v.to_f64_pair();
                            (*r, Complex64::new(re, im))
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl SparseMat<i64> {
    pub fn to_scalar(&self) -> SparseMat<Scalar> {
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(r, v)| (*r, Scalar::from_int(*v)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Floating-point sparse matrix for power iteration and eigenvector
/// numerics.
#[derive(Debug, Clone)]
pub struct NumMat {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Complex64)>>,
}

impl NumMat {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.cols);
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            let xj = x[j];
            if xj.norm_sqr() == 0.0 {
                continue;
            }
            for (r, a) in col {
                y[*r] += a * xj;
            }
        }
        y
    }

    pub fn matvec_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.rows);
        let mut y = vec![Complex64::new(0.0, 0.0); self.cols];
        for (j, col) in self.columns.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (r, a) in col {
                acc += a.conj() * x[*r];
            }
            y[j] = acc;
        }
        y
    }
}

fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest-singular-value lower bound by power iteration on the Gram
/// operator, from the normalized all-ones seed. Deterministic; stops at
/// `max_iter` steps or relative change below `tol`. The returned value is
/// `‖A x‖` for a unit vector `x`, hence a true lower bound for `‖A‖`.
pub fn top_singular_value(m: &NumMat, max_iter: usize, tol: f64) -> f64 {
    if m.cols == 0 || m.rows == 0 {
        return 0.0;
    }
    let seed = Complex64::new(1.0 / (m.cols as f64).sqrt(), 0.0);
    let mut x = vec![seed; m.cols];
    let mut estimate = 0.0f64;
    for _ in 0..max_iter {
        let ax = m.matvec(&x);
        let sigma = norm2(&ax);
        if sigma == 0.0 {
            return estimate;
        }
        let relative_change = (sigma - estimate).abs() / sigma.max(1.0);
        let mut next = m.matvec_adjoint(&ax);
        let n = norm2(&next);
        if n == 0.0 {
            return sigma.max(estimate);
        }
        for z in &mut next {
            *z /= n;
        }
        x = next;
        estimate = estimate.max(sigma);
        if relative_change < tol {
            break;
        }
    }
    estimate
}
