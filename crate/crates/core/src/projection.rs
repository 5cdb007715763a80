//! Orthogonal projections stored by an orthonormal basis of their range.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix, SymMatrix};
use crate::scalar::{scalar, Scalar};

/// Orthonormality slack accepted when constructing or deserializing a
/// projection basis.
pub const ORTHONORMALITY_TOL: f64 = 1e-12;

/// Rank-`r` orthogonal projection on `R^dim`, stored as a `dim x r` matrix
/// with orthonormal columns spanning the range. The dense form `Q Q^T` is
/// symmetric by construction and idempotent up to rounding.
#[derive(Debug, Clone)]
pub struct Projection<T> {
    dim: usize,
    basis: Matrix<T>,
}

impl<T: Scalar> Projection<T> {
    /// Builds a projection from range-basis columns, verifying orthonormality.
    pub fn from_columns(dim: usize, columns: &[Vec<T>]) -> Result<Self> {
        let basis = Matrix::from_columns(dim, columns)?;
        let defect = basis.orthonormality_defect();
        if defect > scalar(ORTHONORMALITY_TOL) {
            return Err(Error::InvalidInput(format!(
                "projection basis is not orthonormal (defect {:e})",
                crate::scalar::to_f64(defect)
            )));
        }
        Ok(Projection { dim, basis })
    }

    /// Identity projection (rank = dim).
    pub fn identity(dim: usize) -> Self {
        Projection {
            dim,
            basis: Matrix::identity(dim),
        }
    }

    /// Rank-zero projection onto the trivial subspace.
    pub fn zero(dim: usize) -> Self {
        Projection {
            dim,
            basis: Matrix::zeros(dim, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    /// Applies the projection: `P v = Q (Q^T v)`.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(self.basis.apply(&self.basis.apply_transpose(v)))
    }

    /// Dense form `P = Q Q^T`, assembled one triangle at a time so symmetry
    /// is exact.
    pub fn to_dense(&self) -> SymMatrix<T> {
        let q = &self.basis;
        SymMatrix::from_lower_fn(self.dim, |i, j| {
            let mut acc = T::zero();
            for k in 0..q.cols() {
                acc += q.get(i, k) * q.get(j, k);
            }
            acc
        })
    }

    /// `max |P^2 - P|` over entries of the dense form.
    pub fn idempotency_defect(&self) -> T {
        let p = self.to_dense();
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..=i {
                let mut acc = T::zero();
                for k in 0..self.dim {
                    acc += p.get(i, k) * p.get(k, j);
                }
                worst = worst.max((acc - p.get(i, j)).abs());
            }
        }
        worst
    }
}

/// Compression `P E P` of a symmetric operator by a projection, returned as
/// a full symmetric matrix. Computed as `Q (Q^T E Q) Q^T` with every
/// symmetric factor assembled triangle-first, so the result is symmetric by
/// construction.
pub fn compress<T: Scalar>(p: &Projection<T>, e: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    if p.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            got: p.dim(),
        });
    }
    let d = p.dim();
    let r = p.rank();
    let q = p.basis();

    // EQ = E * Q  (d x r)
    let mut eq = Matrix::zeros(d, r);
    for k in 0..r {
        let col = e.apply(q.col(k));
        eq.col_mut(k).copy_from_slice(&col);
    }
    // B = Q^T E Q, symmetric by triangle assembly
    let b = SymMatrix::from_lower_fn(r, |k, l| dot(q.col(k), eq.col(l)));
    // C = Q * B  (d x r)
    let mut c = Matrix::<T>::zeros(d, r);
    for l in 0..r {
        for k in 0..r {
            let bkl = b.get(k, l);
            let qk = q.col(k);
            let cl = c.col_mut(l);
            for i in 0..d {
                cl[i] += qk[i] * bkl;
            }
        }
    }
    // PEP = C * Q^T, lower triangle only
    Ok(SymMatrix::from_lower_fn(d, |i, j| {
        let mut acc = T::zero();
        for k in 0..r {
            acc += c.get(i, k) * q.get(j, k);
        }
        acc
    }))
}

#[derive(Serialize, Deserialize)]
struct ProjectionRepr<T> {
    dim: usize,
    rank: usize,
    basis_columns: Vec<Vec<T>>,
}

impl<T: Scalar + Serialize> Serialize for Projection<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ProjectionRepr {
            dim: self.dim,
            rank: self.rank(),
            basis_columns: self.basis.columns().map(|c| c.to_vec()).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Projection<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ProjectionRepr::<T>::deserialize(deserializer)?;
        if repr.basis_columns.len() != repr.rank {
            return Err(D::Error::custom(format!(
                "declared rank {} does not match {} basis columns",
                repr.rank,
                repr.basis_columns.len()
            )));
        }
        Projection::from_columns(repr.dim, &repr.basis_columns)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}
