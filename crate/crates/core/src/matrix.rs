//! Dense matrices: a column-major rectangular type and a packed symmetric type.
//!
//! `SymMatrix` stores one triangle only, so symmetry is exact by
//! representation rather than a property to be checked after the fact.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense column-major matrix. Columns are contiguous, which is convenient
/// because everything here (eigenvector sets, projection bases) is a bundle
/// of column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Assembles a matrix from column vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            m.col_mut(j).copy_from_slice(col);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[j * self.rows + i] = v;
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[T]> {
        (0..self.cols).map(move |j| self.col(j))
    }

    /// `self * v` for a vector of length `cols`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![T::zero(); self.rows];
        for (j, &vj) in v.iter().enumerate() {
            let c = self.col(j);
            for (o, &ci) in out.iter_mut().zip(c) {
                *o += ci * vj;
            }
        }
        out
    }

    /// `self^T * v` for a vector of length `rows`.
    pub fn apply_transpose(&self, v: &[T]) -> Vec<T> {
        debug_assert_eq!(v.len(), self.rows);
        (0..self.cols).map(|j| dot(self.col(j), v)).collect()
    }

    /// Largest absolute entry of `self^T self - I`; zero for an exactly
    /// orthonormal column set.
    pub fn orthonormality_defect(&self) -> T {
        let mut worst = T::zero();
        for j in 0..self.cols {
            for k in j..self.cols {
                let g = dot(self.col(j), self.col(k));
                let target = if j == k { T::one() } else { T::zero() };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc += *x * *y;
    }
    acc
}

pub fn norm2<T: Scalar>(v: &[T]) -> T {
    dot(v, v).sqrt()
}

/// Symmetric matrix stored as the packed lower triangle, so that
/// `get(i, j) == get(j, i)` holds bit-exactly by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    dim: usize,
    tri: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            tri: vec![T::zero(); dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            s.set(i, i, T::one());
        }
        s
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut s = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            s.set(i, i, v);
        }
        s
    }

    /// Fills the lower triangle (`i >= j`) from a function.
    pub fn from_lower_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        // caller guarantees i >= j
        i * (i + 1) / 2 + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        self.tri[self.idx(i, j)]
    }

    /// Sets entry `(i, j)` and, by representation, `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let k = self.idx(i, j);
        self.tri[k] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: T) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let k = self.idx(i, j);
        self.tri[k] += v;
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// `self * v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        debug_assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = T::zero();
                for (j, &vj) in v.iter().enumerate() {
                    acc += self.get(i, j) * vj;
                }
                acc
            })
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.tri
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.get(i, j);
                acc += v * v;
            }
        }
        acc.sqrt()
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &SymMatrix<T>) -> T {
        debug_assert_eq!(self.dim, other.dim);
        self.tri
            .iter()
            .zip(&other.tri)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_storage_is_bit_exact() {
        let mut s = SymMatrix::<f64>::zeros(3);
        s.set(2, 0, 0.1 + 0.2); // not representable exactly; must mirror bit-exactly
        assert_eq!(s.get(2, 0).to_bits(), s.get(0, 2).to_bits());
    }

    #[test]
    fn matvec_matches_dense() {
        let s = SymMatrix::from_lower_fn(3, |i, j| (i + j) as f64 + 1.0);
        let v = vec![1.0, -2.0, 0.5];
        let dense = s.to_dense();
        let a = s.apply(&v);
        let b = dense.apply(&v);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn orthonormality_defect_of_identity_is_zero() {
        let m = Matrix::<f64>::identity(4);
        assert_eq!(m.orthonormality_defect(), 0.0);
    }
}
