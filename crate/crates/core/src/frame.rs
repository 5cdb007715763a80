//! Frames as finite vector lists, their frame operators, and frame bounds.

use serde::{Deserialize, Serialize};

use crate::eigen::jacobi_eigh;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::scalar::{scalar, Scalar};

/// A finite sequence of `len` vectors in `R^dim`. Spanning is not assumed;
/// `frame_bounds` reports `A = 0` when the vectors fail to span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSpec<T> {
    pub dim: usize,
    pub vectors: Vec<Vec<T>>,
}

impl<T: Scalar> FrameSpec<T> {
    /// Validating constructor.
    pub fn new(dim: usize, vectors: Vec<Vec<T>>) -> Result<Self> {
        let f = FrameSpec { dim, vectors };
        f.validate()?;
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("frame dimension must be positive".into()));
        }
        if self.vectors.is_empty() {
            return Err(Error::InvalidInput(
                "frame must contain at least one vector".into(),
            ));
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != self.dim {
                return Err(Error::InvalidInput(format!(
                    "vector {i} has {} entries, expected {}",
                    v.len(),
                    self.dim
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "vector {i} contains a non-finite entry"
                )));
            }
        }
        Ok(())
    }

    /// Frame scaled by a scalar factor.
    pub fn scaled(&self, c: T) -> FrameSpec<T> {
        FrameSpec {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|&x| c * x).collect())
                .collect(),
        }
    }
}

/// Frame operator `S = sum_i f_i f_i^T`, assembled directly into the packed
/// lower triangle. Positive semidefinite always; positive definite exactly
/// when the vectors span.
pub fn frame_operator<T: Scalar>(frame: &FrameSpec<T>) -> Result<SymMatrix<T>> {
    frame.validate()?;
    let d = frame.dim;
    let mut s = SymMatrix::zeros(d);
    for v in &frame.vectors {
        for i in 0..d {
            for j in 0..=i {
                s.add_to(i, j, v[i] * v[j]);
            }
        }
    }
    Ok(s)
}

/// Optimal frame bounds `(A, B) = (lambda_min(S), lambda_max(S))`.
///
/// `A > 0` says the vectors form a frame for the full space; `A == B`
/// (within eigensolver accuracy) says the frame is tight.
pub fn frame_bounds<T: Scalar>(frame: &FrameSpec<T>) -> Result<(T, T)> {
    let s = frame_operator(frame)?;
    let eig = jacobi_eigh(&s, scalar(crate::eigen::DEFAULT_JACOBI_TOL))?;
    let a = eig.eigenvalues[0];
    let b = eig.eigenvalues[eig.dim() - 1];
    Ok((a, b))
}

/// Projects every frame vector, keeping ambient coordinates. The result is
/// rank-deficient by design; it is the object whose tightness on `ran P` the
/// certificates speak about.
pub fn project_frame<T: Scalar>(p: &Projection<T>, frame: &FrameSpec<T>) -> Result<FrameSpec<T>> {
    frame.validate()?;
    if p.dim() != frame.dim {
        return Err(Error::DimensionMismatch {
            expected: frame.dim,
            got: p.dim(),
        });
    }
    let vectors = frame
        .vectors
        .iter()
        .map(|v| p.apply(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(FrameSpec {
        dim: frame.dim,
        vectors,
    })
}

/// The truncated bounded orthogonal sequence `phi_n = sqrt(2 - 1/n) e_n`,
/// n = 1..=dim. Every finite truncation tightens fine; the modeled infinite
/// object is the classifier's canonical non-projectable fixture.
pub fn harmonic_orthogonal_frame<T: Scalar>(dim: usize) -> FrameSpec<T> {
    let two = scalar::<T>(2.0);
    let vectors = (1..=dim)
        .map(|n| {
            let mut v = vec![T::zero(); dim];
            v[n - 1] = (two - T::from_usize(n).unwrap().recip()).sqrt();
            v
        })
        .collect();
    FrameSpec { dim, vectors }
}
