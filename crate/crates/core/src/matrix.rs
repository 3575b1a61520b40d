//! Dense matrices over a ring, with exact linear algebra over base fields.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;

/// Minimal ring interface for matrix entries.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero_like(self)
    }
    fn one_like(&self) -> Self {
        Scalar::one_like(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero: zero.zero_like() }
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        let mut m = Matrix::zeros(n, n, zero);
        for i in 0..n {
            m.set(i, i, zero.one_like());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, zero: &T) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), zero: zero.zero_like() }
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &T, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        Matrix { rows, cols, data, zero: zero.zero_like() }
    }

    /// Column vector.
    pub fn column(v: Vec<T>, zero: &T) -> Self {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v, zero: zero.zero_like() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &T) {
        let idx = i * self.cols + j;
        self.data[idx] = self.data[idx].plus(v);
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<U: Ring>(&self, zero: &U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), zero: zero.zero_like() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &a.times(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in sum");
        Matrix::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).plus(o.get(i, j)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in difference");
        Matrix::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).minus(o.get(i, j)))
    }

    pub fn neg(&self) -> Self {
        self.map(&self.zero, |x| x.negated())
    }

    /// Entrywise `c * a`.
    pub fn scale_left(&self, c: &T) -> Self {
        self.map(&self.zero, |x| c.times(x))
    }

    /// Entrywise `a * c`.
    pub fn scale_right(&self, c: &T) -> Self {
        self.map(&self.zero, |x| x.times(c))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(rows.len(), cols.len(), &self.zero, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, &self.zero, |i, j| self.get(idx[i], j).clone())
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(self.rows, self.cols + o.cols, &self.zero, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        Matrix::from_fn(self.rows + o.rows, self.cols, &self.zero, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                o.get(i - self.rows, j).clone()
            }
        })
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

/// Reduced row echelon form with pivot columns.
pub struct Echelon {
    pub reduced: Matrix<Scalar>,
    pub pivots: Vec<usize>,
}

impl Matrix<Scalar> {
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : A v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Echelon { reduced, pivots } = self.rref();
        let zero = self.zero.clone();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![zero.clone(); self.cols];
                v[fc] = zero.one_like();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = reduced.get(r, fc).neg_ref();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y A = 0}` as row vectors.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel()
    }

    /// One solution of `A v = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::column(b.to_vec(), &self.zero));
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut v = vec![self.zero.clone(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = reduced.get(r, self.cols).clone();
        }
        Ok(v)
    }

    /// Solutions of `X A = B` for a matrix `X`, one row at a time.
    pub fn solve_left(&self, b: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
        if b.rows == 0 {
            return Ok(Matrix::zeros(0, self.rows, &self.zero));
        }
        let at = self.transpose();
        let rows = (0..b.rows).map(|i| at.solve(&b.row(i))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows, &self.zero))
    }

    pub fn inverse(&self) -> Result<Matrix<Scalar>> {
        if self.rows != self.cols {
            return Err(Error::Invalid("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(n, &self.zero));
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Invalid("singular matrix".into()));
        }
        Ok(reduced.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Rows spanning the row space.
    pub fn row_basis(&self) -> Vec<Vec<Scalar>> {
        let Echelon { reduced, pivots } = self.rref();
        (0..pivots.len()).map(|r| reduced.row(r)).collect()
    }

    /// Matrix `Q` (rows) whose kernel is the column space of `self`, with a
    /// section `S` satisfying `Q S = I`. Presents the cokernel of `self`.
    pub fn cokernel_projection(&self) -> (Matrix<Scalar>, Matrix<Scalar>) {
        let rows = self.left_kernel();
        let q = if rows.is_empty() { Matrix::zeros(0, self.rows, &self.zero) } else { Matrix::from_rows(rows, &self.zero) };
        // section: pick the columns of identity at the pivot positions of Q
        let pivots = q.rref().pivots;
        let mut section = Matrix::zeros(self.rows, q.rows, &self.zero);
        for (r, &pc) in pivots.iter().enumerate() {
            section.set(pc, r, self.zero.one_like());
        }
        // Q S = E for some invertible E; fix up so that Q S = I
        let e = q.mul(&section);
        let fix = e.inverse().expect("pivot columns give an invertible block");
        (q, section.mul(&fix))
    }
}

/// True when the given vectors are linearly independent.
pub fn independent(vectors: &[Vec<Scalar>], zero: &Scalar) -> bool {
    if vectors.is_empty() {
        return true;
    }
    Matrix::from_rows(vectors.to_vec(), zero).rank() == vectors.len()
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vectors: &[Vec<Scalar>], zero: &Scalar) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), zero).rank()
}
