//! Spectral pairing: choose a level `alpha`, pair eigenvalues across it with
//! convex weights, and assemble the projection whose compression of the
//! operator is exactly `alpha` times itself.
//!
//! For an ascending spectrum the default level is the midpoint of the central
//! gap (even dimension) or the median eigenvalue (odd dimension, which leaves
//! one singleton). Pairing is symmetric, k-th smallest with k-th largest,
//! which maximizes the feasible interval for `alpha` and keeps the
//! construction deterministic.

use serde::{Deserialize, Serialize};

use crate::eigen::{jacobi_eigh, EigenDecomp, DEFAULT_JACOBI_TOL};
use crate::error::{Error, Result};
use crate::frame::{frame_operator, FrameSpec};
use crate::projection::Projection;
use crate::scalar::{scalar, to_f64, Scalar};
use crate::verify::{
    default_certificate_tol, verify_tight, TightnessCertificate, DEFAULT_PROBES,
    DEFAULT_PROBE_SEED,
};

/// Relative tolerance for the weight identity and singleton checks.
const LEVEL_TOL: f64 = 1e-12;

/// One block of the pairing: either a cross-level pair with convex weights
/// or a singleton eigenvalue sitting exactly at the level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PairEntry<T> {
    Pair {
        low: usize,
        high: usize,
        weight_low: T,
        weight_high: T,
    },
    Singleton {
        index: usize,
    },
}

impl<T> PairEntry<T> {
    fn indices(&self) -> Vec<usize> {
        match self {
            PairEntry::Pair { low, high, .. } => vec![*low, *high],
            PairEntry::Singleton { index } => vec![*index],
        }
    }
}

/// A validated pairing plan: the level `alpha`, and disjoint index blocks
/// whose weighted eigenvalue combinations all equal `alpha`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairingPlan<T> {
    alpha: T,
    entries: Vec<PairEntry<T>>,
}

impl<T: Scalar> PairingPlan<T> {
    /// Validates the plan invariants against the eigenvalue list it indexes:
    /// disjoint indices, unit weight norms, and the weighted level identity.
    pub fn new(alpha: T, entries: Vec<PairEntry<T>>, eigenvalues: &[T]) -> Result<Self> {
        let tol = scalar::<T>(LEVEL_TOL) * (T::one() + alpha.abs());
        let mut seen = vec![false; eigenvalues.len()];
        for entry in &entries {
            for idx in entry.indices() {
                if idx >= eigenvalues.len() {
                    return Err(Error::InvalidInput(format!(
                        "pairing index {idx} out of range for spectrum of length {}",
                        eigenvalues.len()
                    )));
                }
                if seen[idx] {
                    return Err(Error::InvalidInput(format!(
                        "pairing index {idx} used twice"
                    )));
                }
                seen[idx] = true;
            }
            match entry {
                PairEntry::Pair {
                    low,
                    high,
                    weight_low,
                    weight_high,
                } => {
                    let (wl, wh) = (*weight_low, *weight_high);
                    let unit = T::zero().max(wl).min(T::one());
                    if unit != wl || wh < T::zero() || wh > T::one() {
                        return Err(Error::InvalidInput(format!(
                            "pair weights ({wl}, {wh}) outside [0, 1]"
                        )));
                    }
                    if ((wl * wl + wh * wh) - T::one()).abs() > scalar(1e-14) {
                        return Err(Error::InvalidInput(format!(
                            "pair weights ({wl}, {wh}) are not unit-normalized"
                        )));
                    }
                    let combo = wl * wl * eigenvalues[*low] + wh * wh * eigenvalues[*high];
                    if (combo - alpha).abs() > tol {
                        return Err(Error::InvalidInput(format!(
                            "pair ({low}, {high}) hits {combo} instead of alpha = {alpha}"
                        )));
                    }
                }
                PairEntry::Singleton { index } => {
                    if (eigenvalues[*index] - alpha).abs() > tol {
                        return Err(Error::InvalidInput(format!(
                            "singleton eigenvalue {} is not at alpha = {alpha}",
                            eigenvalues[*index]
                        )));
                    }
                }
            }
        }
        Ok(PairingPlan { alpha, entries })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn entries(&self) -> &[PairEntry<T>] {
        &self.entries
    }

    /// Number of blocks, i.e. the rank of the projection the plan builds.
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Sorted union of all eigenvalue indices consumed by the plan.
    pub fn consumed_indices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.entries.iter().flat_map(|e| e.indices()).collect();
        all.sort_unstable();
        all
    }

    /// Worst deviation of a block's weighted eigenvalue combination from
    /// `alpha`.
    pub fn max_level_residual(&self, eigenvalues: &[T]) -> T {
        let mut worst = T::zero();
        for entry in &self.entries {
            let combo = match entry {
                PairEntry::Pair {
                    low,
                    high,
                    weight_low,
                    weight_high,
                } => {
                    *weight_low * *weight_low * eigenvalues[*low]
                        + *weight_high * *weight_high * eigenvalues[*high]
                }
                PairEntry::Singleton { index } => eigenvalues[*index],
            };
            worst = worst.max((combo - self.alpha).abs());
        }
        worst
    }
}

/// Convex weights `(w_low, w_high)` with `w_low^2 lo + w_high^2 hi = alpha`
/// and `w_low^2 + w_high^2 = 1`, when `lo <= alpha <= hi` admits them.
/// Requires `lo < hi`; equal eigenvalues are the caller's special case.
pub fn convex_pair_weights<T: Scalar>(lo_v: T, hi_v: T, alpha: T) -> Option<(T, T)> {
    if !(lo_v < hi_v) || alpha < lo_v || alpha > hi_v {
        return None;
    }
    let wl2 = ((hi_v - alpha) / (hi_v - lo_v)).max(T::zero()).min(T::one());
    let wh2 = (T::one() - wl2).max(T::zero());
    Some((wl2.sqrt(), wh2.sqrt()))
}

fn check_ascending<T: Scalar>(eigenvalues: &[T]) -> Result<()> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidInput("empty eigenvalue list".into()));
    }
    if eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite eigenvalue".into()));
    }
    if eigenvalues.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput(
            "eigenvalues must be sorted ascending".into(),
        ));
    }
    Ok(())
}

/// Picks the pairing level for an ascending spectrum.
///
/// Even length `2N`: the midpoint `(lambda_N + lambda_{N+1}) / 2` of the
/// central gap. Odd length: the median eigenvalue, which becomes a singleton.
/// An explicit override is accepted only if it admits a valid pairing; the
/// violating pair is named otherwise.
pub fn choose_alpha<T: Scalar>(eigenvalues: &[T], level_override: Option<T>) -> Result<T> {
    check_ascending(eigenvalues)?;
    if let Some(alpha) = level_override {
        // feasibility is exactly "build_pairing accepts it"
        build_pairing(eigenvalues, alpha)?;
        return Ok(alpha);
    }
    let d = eigenvalues.len();
    let two = scalar::<T>(2.0);
    Ok(if d.is_multiple_of(2) {
        (eigenvalues[d / 2 - 1] + eigenvalues[d / 2]) / two
    } else {
        eigenvalues[d / 2]
    })
}

/// Builds the symmetric pairing plan for an ascending spectrum at level
/// `alpha`: the k-th smallest eigenvalue is paired with the k-th largest,
/// with convex weights solving `w_low^2 lambda_low + w_high^2 lambda_high =
/// alpha`; for odd length the median is a singleton (the lowest index among
/// tied medians) and must sit at `alpha`.
pub fn build_pairing<T: Scalar>(eigenvalues: &[T], alpha: T) -> Result<PairingPlan<T>> {
    check_ascending(eigenvalues)?;
    let d = eigenvalues.len();
    let tol = scalar::<T>(LEVEL_TOL) * (T::one() + alpha.abs());

    let mut entries = Vec::with_capacity(d / 2 + 1);
    let mut indices: Vec<usize> = (0..d).collect();

    if !d.is_multiple_of(2) {
        let center = d / 2;
        // lowest index within the tied median block
        let tie = scalar::<T>(LEVEL_TOL) * (T::one() + eigenvalues[center].abs());
        let mut singleton = center;
        while singleton > 0 && eigenvalues[center] - eigenvalues[singleton - 1] <= tie {
            singleton -= 1;
        }
        if (eigenvalues[singleton] - alpha).abs() > tol {
            return Err(Error::InfeasibleAlpha {
                alpha: to_f64(alpha),
                low: singleton,
                high: singleton,
                detail: format!(
                    "median eigenvalue {} must equal alpha for an odd-length spectrum",
                    eigenvalues[singleton]
                ),
            });
        }
        entries.push(PairEntry::Singleton { index: singleton });
        indices.remove(singleton);
    }

    let half = indices.len() / 2;
    for k in 0..half {
        let low = indices[k];
        let high = indices[indices.len() - 1 - k];
        let lo_v = eigenvalues[low];
        let hi_v = eigenvalues[high];
        let entry = if hi_v > lo_v {
            let clamped = alpha.max(lo_v).min(hi_v);
            if (clamped - alpha).abs() > tol {
                return Err(Error::InfeasibleAlpha {
                    alpha: to_f64(alpha),
                    low,
                    high,
                    detail: format!(
                        "alpha outside [{lo_v}, {hi_v}]: pair weight would leave [0, 1]"
                    ),
                });
            }
            let (weight_low, weight_high) =
                convex_pair_weights(lo_v, hi_v, clamped).expect("clamped level is in range");
            PairEntry::Pair {
                low,
                high,
                weight_low,
                weight_high,
            }
        } else {
            // equal eigenvalues can only hit alpha if they already sit there;
            // weights are pinned to (1, 0) for determinism
            if (lo_v - alpha).abs() > tol {
                return Err(Error::InfeasibleAlpha {
                    alpha: to_f64(alpha),
                    low,
                    high,
                    detail: format!("equal eigenvalues {lo_v} cannot combine to alpha"),
                });
            }
            PairEntry::Pair {
                low,
                high,
                weight_low: T::one(),
                weight_high: T::zero(),
            }
        };
        entries.push(entry);
    }

    PairingPlan::new(alpha, entries, eigenvalues)
}

/// Realizes a pairing plan as a projection: each block contributes the range
/// basis vector `w_low q_low + w_high q_high` (or `q_index` for a singleton)
/// in ambient coordinates. Disjoint blocks over an orthonormal eigenbasis
/// make these columns orthonormal.
pub fn pairing_projection<T: Scalar>(
    eig: &EigenDecomp<T>,
    plan: &PairingPlan<T>,
) -> Result<Projection<T>> {
    let d = eig.dim();
    let q = &eig.eigenvectors;
    let mut columns = Vec::with_capacity(plan.rank());
    for entry in plan.entries() {
        for idx in entry.indices() {
            if idx >= d {
                return Err(Error::InvalidInput(format!(
                    "plan index {idx} out of range for dimension {d}"
                )));
            }
        }
        let col = match entry {
            PairEntry::Pair {
                low,
                high,
                weight_low,
                weight_high,
            } => {
                let ql = q.col(*low);
                let qh = q.col(*high);
                (0..d)
                    .map(|i| *weight_low * ql[i] + *weight_high * qh[i])
                    .collect::<Vec<T>>()
            }
            PairEntry::Singleton { index } => q.col(*index).to_vec(),
        };
        columns.push(col);
    }
    Projection::from_columns(d, &columns)
}

/// Projection onto the span of eigenvectors whose eigenvalue is within `tol`
/// of `alpha`. Rank zero is a valid result.
pub fn eigenspace_projection<T: Scalar>(
    eig: &EigenDecomp<T>,
    alpha: T,
    tol: T,
) -> Result<Projection<T>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "eigenspace tolerance must be positive, got {tol}"
        )));
    }
    let columns: Vec<Vec<T>> = (0..eig.dim())
        .filter(|&i| (eig.eigenvalues[i] - alpha).abs() <= tol)
        .map(|i| eig.eigenvectors.col(i).to_vec())
        .collect();
    Projection::from_columns(eig.dim(), &columns)
}

/// Full tightening pipeline: frame operator, eigendecomposition, level
/// selection, pairing, projection, certificate. The certificate must pass at
/// `tol`; a failure after a feasible pairing is an internal contradiction and
/// is reported as a hard error.
///
/// A spectrum that is constant within rounding is already tight; the fast
/// path returns the identity projection with the common eigenvalue.
pub fn tighten<T: Scalar>(
    frame: &FrameSpec<T>,
    level_override: Option<T>,
    tol: T,
) -> Result<(Projection<T>, T, TightnessCertificate<T>)> {
    tighten_with(frame, level_override, tol, DEFAULT_PROBES, DEFAULT_PROBE_SEED)
}

/// `tighten` with explicit certificate probe count and seed.
pub fn tighten_with<T: Scalar>(
    frame: &FrameSpec<T>,
    level_override: Option<T>,
    tol: T,
    probes: usize,
    seed: u64,
) -> Result<(Projection<T>, T, TightnessCertificate<T>)> {
    frame.validate()?;
    let s = frame_operator(frame)?;
    let eig = jacobi_eigh(&s, scalar(DEFAULT_JACOBI_TOL))?;
    let d = eig.dim();
    let lambda = &eig.eigenvalues;

    let spread_tol = scalar::<T>(LEVEL_TOL) * (T::one() + lambda[d - 1].abs());
    let all_equal = lambda[d - 1] - lambda[0] <= spread_tol;

    let (p, alpha) = if all_equal {
        let common = lambda[d / 2];
        let alpha = match level_override {
            Some(ov) => {
                if (ov - common).abs() > spread_tol {
                    return Err(Error::Infeasible(format!(
                        "operator is {common} times the identity; alpha override {ov} cannot hold"
                    )));
                }
                ov
            }
            None => common,
        };
        if !(alpha > T::zero()) {
            return Err(Error::Infeasible(format!(
                "spectrum offers no positive level (alpha = {alpha})"
            )));
        }
        (Projection::identity(d), alpha)
    } else {
        let alpha = choose_alpha(lambda, level_override)?;
        if !(alpha > T::zero()) {
            return Err(Error::Infeasible(format!(
                "central pairing level is not positive (alpha = {alpha})"
            )));
        }
        let plan = build_pairing(lambda, alpha)?;
        (pairing_projection(&eig, &plan)?, alpha)
    };

    let cert = verify_tight(frame, &p, alpha, tol, probes, seed)?;
    if !cert.pass {
        return Err(Error::CertificateFailed(format!(
            "tightening certificate failed: compression residual {:e}, reconstruction residual {:e}, tolerance {:e}",
            to_f64(cert.residual_compression),
            to_f64(cert.residual_reconstruction),
            to_f64(cert.tolerance),
        )));
    }
    Ok((p, alpha, cert))
}

/// `tighten` with the default certificate tolerance for the frame's operator.
pub fn tighten_default<T: Scalar>(
    frame: &FrameSpec<T>,
    level_override: Option<T>,
) -> Result<(Projection<T>, T, TightnessCertificate<T>)> {
    let s = frame_operator(frame)?;
    tighten(frame, level_override, default_certificate_tol(&s))
}
