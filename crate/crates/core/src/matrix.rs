//! Sparse Z₂-graded square matrices.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::fockspace::Parity;
use crate::qarith::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Square sparse matrix with an explicit Z₂ degree.
///
/// Rows are stored as ordered maps, so iteration is row-major and
/// deterministic. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedMatrix<S> {
    dim: usize,
    degree: Parity,
    rows: Vec<BTreeMap<usize, S>>,
}

impl<S: Scalar> GradedMatrix<S> {
    pub fn zeros(dim: usize, degree: Parity) -> Self {
        Self { dim, degree, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| S::one()))
    }

    /// Even diagonal matrix.
    pub fn diagonal<I: IntoIterator<Item = S>>(diag: I) -> Self {
        let rows: Vec<BTreeMap<usize, S>> = diag
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let mut row = BTreeMap::new();
                if !v.is_zero() {
                    row.insert(k, v);
                }
                row
            })
            .collect();
        Self { dim: rows.len(), degree: Parity::Even, rows }
    }

    /// Single-entry matrix `E_{row,col}`.
    pub fn unit(dim: usize, row: usize, col: usize) -> Self {
        let mut out = Self::zeros(dim, Parity::Even);
        out.set(row, col, S::one());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> Parity {
        self.degree
    }

    pub fn with_degree(mut self, degree: Parity) -> Self {
        self.degree = degree;
        self
    }

    /// Sets an entry; a zero value removes it.
    pub fn set(&mut self, row: usize, col: usize, value: S) {
        if value.is_zero() {
            self.rows[row].remove(&col);
        } else {
            self.rows[row].insert(col, value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&S> {
        self.rows[row].get(&col)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Nonzero entries of one column, ascending by row.
    pub fn column(&self, col: usize) -> Vec<(usize, &S)> {
        self.rows.iter().enumerate().filter_map(|(r, row)| row.get(&col).map(|v| (r, v))).collect()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim, self.degree);
        for (r, c, v) in self.entries() {
            out.rows[c].insert(r, v.clone());
        }
        out
    }

    pub fn map<T: Scalar, F: Fn(&S) -> T>(&self, f: F) -> GradedMatrix<T> {
        let mut out = GradedMatrix::zeros(self.dim, self.degree);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dim, self.degree);
        }
        self.map(|v| v.times(c)).with_degree(self.degree)
    }

    fn check_dim(&self, other: &Self) -> Result<(), MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Product; the degree is the Z₂ sum of the factor degrees.
    pub fn try_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_dim(other)?;
        let mut out = Self::zeros(self.dim, self.degree + other.degree);
        for (r, row) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[r];
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let term = a.times(b);
                    match acc.get_mut(c) {
                        Some(v) => *v = v.plus(&term),
                        None => {
                            acc.insert(*c, term);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self, MatrixError> {
        self.check_dim(other)?;
        // A zero summand carries no degree information.
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = self.clone().with_degree(degree);
        for (r, c, v) in other.entries() {
            let row = &mut out.rows[r];
            let updated = match row.get(&c) {
                Some(x) if negate => x.minus(v),
                Some(x) => x.plus(v),
                None if negate => v.negated(),
                None => v.clone(),
            };
            if updated.is_zero() {
                row.remove(&c);
            } else {
                row.insert(c, updated);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.combine(other, false)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.combine(other, true)
    }

    /// Largest number of nonzeros found in any row and in any column.
    pub fn max_nnz_per_row_and_column(&self) -> (usize, usize) {
        let mut cols = vec![0usize; self.dim];
        for (_, c, _) in self.entries() {
            cols[c] += 1;
        }
        let row_max = self.rows.iter().map(BTreeMap::len).max().unwrap_or(0);
        (row_max, cols.into_iter().max().unwrap_or(0))
    }
}

// Operator forms panic on dimension mismatch; use the `try_*` methods when
// the dimensions are not known to agree.

impl<S: Scalar> Mul for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn mul(self, rhs: Self) -> GradedMatrix<S> {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl<S: Scalar> Add for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn add(self, rhs: Self) -> GradedMatrix<S> {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl<S: Scalar> Sub for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn sub(self, rhs: Self) -> GradedMatrix<S> {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl<S: Scalar> Neg for &GradedMatrix<S> {
    type Output = GradedMatrix<S>;
    fn neg(self) -> GradedMatrix<S> {
        self.map(|v| v.negated()).with_degree(self.degree)
    }
}

/// Plain commutator `[A, B] = AB - BA`, ignoring the grading.
pub fn commutator<S: Scalar>(a: &GradedMatrix<S>, b: &GradedMatrix<S>) -> Result<GradedMatrix<S>, MatrixError> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// Plain anticommutator `{A, B} = AB + BA`.
pub fn anticommutator<S: Scalar>(a: &GradedMatrix<S>, b: &GradedMatrix<S>) -> Result<GradedMatrix<S>, MatrixError> {
    a.try_mul(b)?.try_add(&b.try_mul(a)?)
}

/// Graded bracket `⟦A, B⟧_x = AB - (-1)^{deg A · deg B} x BA`.
pub fn q_bracket<S: Scalar>(a: &GradedMatrix<S>, b: &GradedMatrix<S>, x: &S) -> Result<GradedMatrix<S>, MatrixError> {
    let ab = a.try_mul(b)?;
    let mut coeff = x.clone();
    if a.degree().times(b.degree()).is_odd() {
        coeff = coeff.negated();
    }
    ab.try_sub(&b.try_mul(a)?.scale(&coeff)).map(|m| m.with_degree(a.degree() + b.degree()))
}

/// Graded bracket `⟦A, B⟧ = AB - (-1)^{deg A · deg B} BA`.
pub fn bracket<S: Scalar>(a: &GradedMatrix<S>, b: &GradedMatrix<S>) -> Result<GradedMatrix<S>, MatrixError> {
    q_bracket(a, b, &S::one())
}
