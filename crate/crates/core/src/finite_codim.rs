//! Finite-codimension tight projections: `P` with a finite-dimensional
//! kernel and `P E P = alpha P` exists exactly when `E - alpha` has finite
//! rank at most twice the kernel dimension. The constructed witness is the
//! projection onto the numerical kernel of `E - alpha`.

use crate::eigen::jacobi_eigh;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::pairing::eigenspace_projection;
use crate::projection::Projection;
use crate::scalar::{scalar, Scalar};
use crate::classifier::{SpectrumFamily, SpectrumModel};

/// Rank of a translate `E - alpha`, possibly infinite for modeled operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslateRank {
    Finite(usize),
    Infinite,
}

/// Numerical rank of `E - alpha` for a symmetric matrix: the number of
/// eigenvalues farther than `tol * (1 + ||E||_max)` from `alpha`. The cutoff
/// is recorded by the caller; exact rank needs exact arithmetic.
pub fn rank_of_translate<T: Scalar>(
    e: &SymMatrix<T>,
    alpha: T,
    tol: T,
) -> Result<TranslateRank> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "rank tolerance must be positive, got {tol}"
        )));
    }
    let eig = jacobi_eigh(e, scalar(crate::eigen::DEFAULT_JACOBI_TOL))?;
    let threshold = tol * (T::one() + e.max_abs());
    let count = eig
        .eigenvalues
        .iter()
        .filter(|&&v| (v - alpha).abs() > threshold)
        .count();
    Ok(TranslateRank::Finite(count))
}

/// Rank of the translate for a declared spectrum model: finite only when the
/// constant tail sits at `alpha`, in which case it is the number of head
/// entries away from `alpha`.
pub fn rank_of_translate_model<T: Scalar>(
    model: &SpectrumModel<T>,
    alpha: T,
    tol: T,
) -> Result<TranslateRank> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "rank tolerance must be positive, got {tol}"
        )));
    }
    model.validate()?;
    let threshold = tol * (T::one() + alpha.abs());
    if let SpectrumFamily::ExplicitTail { head, tail } = &model.family {
        if (*tail - alpha).abs() <= threshold {
            let count = head
                .iter()
                .filter(|&&v| (v - alpha).abs() > threshold)
                .count();
            return Ok(TranslateRank::Finite(count));
        }
    }
    Ok(TranslateRank::Infinite)
}

/// Constructs a projection with `dim ker P <= 2 * max_kernel_dim` and
/// `P E P = alpha P`, namely the projection onto the kernel of `E - alpha`.
/// Fails with an obstruction when the translate rank exceeds the bound
/// `dim ran(E - alpha) <= 2N`.
pub fn finite_codim_projection<T: Scalar>(
    e: &SymMatrix<T>,
    alpha: T,
    max_kernel_dim: usize,
    tol: T,
) -> Result<Projection<T>> {
    if alpha < T::zero() {
        return Err(Error::InvalidInput(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    if max_kernel_dim == 0 {
        return Err(Error::InvalidInput(
            "kernel dimension bound must be positive".into(),
        ));
    }
    let rank = match rank_of_translate(e, alpha, tol)? {
        TranslateRank::Finite(r) => r,
        TranslateRank::Infinite => unreachable!("matrix translate rank is always finite"),
    };
    if rank > 2 * max_kernel_dim {
        return Err(Error::Obstruction(format!(
            "translate rank {rank} violates the bound dim ran(E - alpha) <= 2N = {}; no projection with kernel dimension <= {max_kernel_dim} can compress E to alpha",
            2 * max_kernel_dim
        )));
    }
    let eig = jacobi_eigh(e, scalar(crate::eigen::DEFAULT_JACOBI_TOL))?;
    let threshold = tol * (T::one() + e.max_abs());
    eigenspace_projection(&eig, alpha, threshold)
}

/// Decision form for modeled operators: returns the finite translate rank
/// when the construction is possible, or the obstruction. No infinite
/// projection object is emitted; the rank and bound are the whole story.
pub fn finite_codim_check_model<T: Scalar>(
    model: &SpectrumModel<T>,
    alpha: T,
    max_kernel_dim: usize,
    tol: T,
) -> Result<usize> {
    match rank_of_translate_model(model, alpha, tol)? {
        TranslateRank::Finite(rank) => {
            if rank > 2 * max_kernel_dim {
                Err(Error::Obstruction(format!(
                    "translate rank {rank} violates the bound dim ran(E - alpha) <= 2N = {}",
                    2 * max_kernel_dim
                )))
            } else {
                Ok(rank)
            }
        }
        TranslateRank::Infinite => Err(Error::Obstruction(format!(
            "E - {alpha} has infinite rank for this model: infinitely many eigenvalues differ from {alpha}, so no finite-codimension projection exists"
        ))),
    }
}
