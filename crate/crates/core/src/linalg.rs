//! Dense exact linear algebra.
//!
//! Over the rationals, elimination clears denominators row by row and runs a
//! fraction-free (Bareiss) sweep on the integer matrix; over prime fields it is
//! plain Gauss-Jordan. Pivots are always the first nonzero entry of the
//! current column, scanning rows top to bottom, so results are reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Row-major dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Matrix { rows, cols, data, field })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols], field }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: FieldSpec, diag: &[Scalar]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries, convenient in tests and builders.
    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, len: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != len {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {len} rows",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?;
        Matrix::new(self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
            field: self.field,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().chain(other.row(r)).cloned().collect())
            .collect();
        Matrix::from_rows(self.field, rows)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let data = rows.clone().flat_map(|r| cols.clone().map(move |c| (r, c))).map(|(r, c)| self.get(r, c).clone()).collect();
        Matrix { rows: rows.len(), cols: cols.len(), data, field: self.field }
    }

    pub fn rref(&self) -> Rref {
        match self.field {
            FieldSpec::Rationals => rref_rational(self),
            FieldSpec::Prime(_) => rref_generic(self),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        Ok(match self.field {
            FieldSpec::Rationals => det_rational(self),
            FieldSpec::Prime(_) => det_generic(self),
        })
    }

    pub fn try_inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        Ok(matrix.submatrix(0..n, n..2 * n))
    }

    /// Some `x` with `self * x = rhs`.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[rhs.to_vec()])?)?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(x)
    }

    /// Invertible `p`, `q` with `p * self * q = diag(1, .., 1, 0, .., 0)`;
    /// the number of ones is the rank.
    pub fn rank_normal_form(&self) -> (Matrix, Matrix, usize) {
        let field = self.field;
        let aug = self.hstack(&Matrix::identity(field, self.rows)).expect("same rows");
        let Rref { matrix, pivots, rank } = aug.rref();
        // rows of the left block use only data columns when rank is measured there
        let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < self.cols).collect();
        let rank_data = pivots.len();
        debug_assert!(rank >= rank_data);
        let p = matrix.submatrix(0..self.rows, self.cols..self.cols + self.rows);
        let reduced = matrix.submatrix(0..self.rows, 0..self.cols);
        // column operations: move pivots to the front, clear the rest of each pivot row
        let mut q = Matrix::identity(field, self.cols);
        let mut order: Vec<usize> = pivots.clone();
        order.extend((0..self.cols).filter(|c| !pivots.contains(c)));
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..self.cols {
                if c != pc && !reduced.get(r, c).is_zero() {
                    // column c -= reduced[r][c] * column pc
                    let factor = reduced.get(r, c).clone();
                    for i in 0..self.cols {
                        let v = q.get(i, c) - &(&factor * q.get(i, pc));
                        q.set(i, c, v);
                    }
                }
            }
        }
        let perm = Matrix::from_columns(
            field,
            self.cols,
            &order.iter().map(|&c| unit_vector(field, self.cols, c)).collect::<Vec<_>>(),
        )
        .expect("permutation");
        let q = q.mul(&perm).expect("square");
        (p, q, rank_data)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn rref_generic(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else { continue };
        swap_rows(&mut a, row, p);
        let inv = a.get(row, col).inv().expect("nonzero pivot");
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                let v = a.get(r, c) - &(&factor * a.get(row, c));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { matrix: a, rank: pivots.len(), pivots }
}

fn swap_rows(a: &mut Matrix, i: usize, j: usize) {
    if i != j {
        for c in 0..a.cols {
            a.data.swap(i * a.cols + c, j * a.cols + c);
        }
    }
}

/// Scales each row by the lcm of its denominators; returns the integer rows
/// and the product of the scaling factors.
fn integer_rows(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row
                .iter()
                .map(|x| x.as_rational().expect("rational").denom().clone())
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            total *= &lcm;
            row.iter()
                .map(|x| {
                    let q = x.as_rational().expect("rational");
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect();
    (rows, total)
}

/// Fraction-free forward elimination. Returns pivot columns and the sign of
/// the row permutation; `a` ends in echelon form where the last pivot value
/// is the determinant of the leading minor.
fn bareiss_forward(a: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, bool) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut negated = false;
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        if p != row {
            a.swap(p, row);
            negated = !negated;
        }
        for r in row + 1..rows {
            for c in col + 1..cols {
                let v = (&a[row][col] * &a[r][c] - &a[r][col] * &a[row][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    (pivots, negated)
}

fn rref_rational(m: &Matrix) -> Rref {
    let (mut a, _) = integer_rows(m);
    let (pivots, _) = bareiss_forward(&mut a, m.cols);
    let mut out: Vec<Vec<BigRational>> = a
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (r, &pc) in pivots.iter().enumerate() {
        let inv = out[r][pc].recip();
        for c in pc..m.cols {
            out[r][c] = &out[r][c] * &inv;
        }
    }
    for (r, &pc) in pivots.iter().enumerate().rev() {
        for above in 0..r {
            if out[above][pc].is_zero() {
                continue;
            }
            let factor = out[above][pc].clone();
            for c in pc..m.cols {
                let v = &out[above][c] - &factor * &out[r][c];
                out[above][c] = v;
            }
        }
    }
    let data = out.into_iter().flatten().map(Scalar::Rational).collect();
    Rref {
        matrix: Matrix { rows: m.rows, cols: m.cols, data, field: m.field },
        rank: pivots.len(),
        pivots,
    }
}

fn det_rational(m: &Matrix) -> Scalar {
    let n = m.rows;
    if n == 0 {
        return m.field.one();
    }
    let (mut a, scale) = integer_rows(m);
    let (pivots, negated) = bareiss_forward(&mut a, n);
    if pivots.len() < n {
        return m.field.zero();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negated {
        det = -det;
    }
    Scalar::Rational(BigRational::new(det, scale))
}

fn det_generic(m: &Matrix) -> Scalar {
    let mut a = m.clone();
    let n = a.rows;
    let mut det = m.field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
            return m.field.zero();
        };
        if p != col {
            swap_rows(&mut a, p, col);
            det = -det;
        }
        let pivot = a.get(col, col).clone();
        det = &det * &pivot;
        let inv = pivot.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col) * &inv;
            for c in col..n {
                let v = a.get(r, c) - &(&factor * a.get(col, c));
                a.set(r, c, v);
            }
        }
    }
    det
}

/// Linear map stored as a codomain x domain matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(field, n) }
    }

    pub fn zero(field: FieldSpec, domain: usize, codomain: usize) -> Self {
        LinearMap { matrix: Matrix::zeros(field, codomain, domain) }
    }

    /// Map sending basis vector `i` to `images[i]`.
    pub fn from_images(field: FieldSpec, codomain: usize, images: &[Vec<Scalar>]) -> Result<Self> {
        Ok(LinearMap { matrix: Matrix::from_columns(field, codomain, images)? })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.codomain_dim() != self.domain_dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a map from dimension {} after one into dimension {}",
                self.domain_dim(),
                inner.codomain_dim()
            )));
        }
        Ok(LinearMap { matrix: self.matrix.mul(&inner.matrix)? })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_square() && self.rank() == self.domain_dim()
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        Ok(LinearMap { matrix: self.matrix.try_inverse()? })
    }

    /// Dual map with respect to the standard bases.
    pub fn transpose(&self) -> LinearMap {
        LinearMap { matrix: self.matrix.transpose() }
    }
}

/// Incrementally maintained reduced echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    len: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(field: FieldSpec, len: usize) -> Self {
        EchelonBasis { field, len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&factor * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[pivot].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = &*x - &(&factor * r);
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }

    /// Basis vectors in pivot order.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Coordinates of `v` in [`Self::basis`], if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|(p, _)| v[*p].clone()).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}

/// Coordinate-wise vector helpers.
pub mod vector {
    use crate::scalar::Scalar;

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
        a.iter().map(|x| x * c).collect()
    }

    pub fn is_zero(a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    /// Is `a = c * b` for some scalar `c`? Returns `c` (zero vectors give
    /// `Some(0)` only when `a` is zero).
    pub fn ratio(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
        let i = b.iter().position(|x| !x.is_zero())?;
        let c = &a[i] / &b[i];
        a.iter().zip(b).all(|(x, y)| *x == &c * y).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let id = Matrix::identity(q(), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        let z = Matrix::zeros(q(), 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_of_proportional_rows() {
        let m = Matrix::from_i64_rows(q(), &[&[1, 2], &[2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64_rows(q(), &[&[1, 2], &[0, 0]]).unwrap());
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_with_fractions() {
        let f = q();
        let m = Matrix::from_rows(
            f,
            vec![
                vec![f.parse_scalar("1/2").unwrap(), f.from_i64(1), f.from_i64(0)],
                vec![f.from_i64(1), f.parse_scalar("1/3").unwrap(), f.from_i64(1)],
            ],
        )
        .unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        // verify by reconstructing the kernel
        for k in m.kernel_basis() {
            assert!(vector::is_zero(&m.mul_vec(&k).unwrap()));
        }
        assert_eq!(r.matrix.get(0, 0), &f.one());
        assert_eq!(r.matrix.get(1, 0), &f.zero());
        assert_eq!(r.matrix.get(0, 1), &f.zero());
    }

    #[test]
    fn kernel_and_image_examples() {
        let id = Matrix::identity(q(), 3);
        assert!(id.kernel_basis().is_empty());
        assert_eq!(id.image_basis(), (0..3).map(|i| unit_vector(q(), 3, i)).collect::<Vec<_>>());
        assert_eq!(Matrix::zeros(q(), 3, 3).kernel_basis().len(), 3);
        // e_i -> v for a single i
        let v: Vec<Scalar> = [1, -2, 5].iter().map(|&x| q().from_i64(x)).collect();
        let mut cols = vec![vec![q().zero(); 3]; 3];
        cols[1] = v.clone();
        let m = Matrix::from_columns(q(), 3, &cols).unwrap();
        assert_eq!(m.image_basis(), vec![v]);
    }

    #[test]
    fn det_and_inverse() {
        let f = q();
        let d = Matrix::diagonal(f, &[f.from_i64(1), f.from_i64(2), f.from_i64(3)]);
        assert_eq!(d.det().unwrap(), f.from_i64(6));
        let s = Matrix::from_i64_rows(f, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(s.try_inverse(), Err(Error::NotInvertible));
        assert!(matches!(
            Matrix::zeros(f, 2, 3).det(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
        let m = Matrix::from_i64_rows(f, &[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).unwrap();
        let inv = m.try_inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 3));
        assert_eq!(m.det().unwrap(), f.from_i64(-2));
    }

    #[test]
    fn det_with_row_swap_sign() {
        let f = q();
        let m = Matrix::from_i64_rows(f, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), f.from_i64(-1));
        let f7 = FieldSpec::prime(7).unwrap();
        let m = Matrix::from_i64_rows(f7, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), f7.from_i64(-1));
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let rhs: Vec<Scalar> = [3, 4].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(Matrix::identity(f, 2).solve(&rhs).unwrap(), rhs);
        let m = Matrix::from_i64_rows(f, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(m.solve(&rhs), Err(Error::NoSolution));
    }

    #[test]
    fn rank_normal_form_diagonalizes() {
        let f = q();
        let m = Matrix::from_i64_rows(f, &[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]).unwrap();
        let (p, qm, r) = m.rank_normal_form();
        assert_eq!(r, 2);
        assert!(p.try_inverse().is_ok());
        assert!(qm.try_inverse().is_ok());
        let d = p.mul(&m).unwrap().mul(&qm).unwrap();
        let mut expected = Matrix::zeros(f, 3, 3);
        expected.set(0, 0, f.one());
        expected.set(1, 1, f.one());
        assert_eq!(d, expected);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let f = FieldSpec::prime(5).unwrap();
        let mut b = EchelonBasis::new(f, 3);
        let v = |xs: [i64; 3]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        assert!(b.insert(&v([1, 2, 3])));
        assert!(!b.insert(&v([2, 4, 6])));
        assert!(b.insert(&v([0, 1, 1])));
        assert_eq!(b.dim(), 2);
        let w = v([1, 3, 4]);
        let coords = b.coordinates(&w).unwrap();
        let rebuilt = b
            .basis()
            .iter()
            .zip(&coords)
            .fold(v([0, 0, 0]), |acc, (row, c)| vector::add(&acc, &vector::scale(row, c)));
        assert_eq!(rebuilt, w);
        assert!(b.coordinates(&v([0, 0, 1])).is_none());
    }

    #[test]
    fn compose_checks_dimensions() {
        let f = q();
        let a = LinearMap::zero(f, 2, 3);
        let b = LinearMap::zero(f, 4, 2);
        assert_eq!(a.compose(&b).unwrap().domain_dim(), 4);
        assert!(b.compose(&a).is_err());
    }
}
