//! Tightness certificates: machine-checkable evidence that `P S P = alpha P`.
//!
//! Two independent residual routes are computed. The compression route
//! measures `max |P S P - alpha P|` entrywise; the reconstruction route
//! replays the tight-frame reconstruction formula on probe vectors inside
//! `ran P` and measures how far `(1/alpha) sum <f, g_i> g_i` lands from `f`
//! for the projected frame `g_i = P f_i`. The two routes agreeing on
//! pass/fail is itself a tested property of the toolkit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{frame_operator, project_frame, FrameSpec};
use crate::matrix::{dot, norm2, SymMatrix};
use crate::projection::{compress, Projection};
use crate::scalar::{scalar, Scalar};

/// Seed used for certificate probe vectors when the caller does not pick one.
pub const DEFAULT_PROBE_SEED: u64 = 42;

/// Number of pseudo-random probe vectors added to the range-basis probes.
pub const DEFAULT_PROBES: usize = 8;

/// Version string embedded in serialized certificates.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Residual certificate for `P S P = alpha P` at a stated tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TightnessCertificate<T> {
    pub alpha: T,
    pub rank: usize,
    /// `max |P S P - alpha P|` over matrix entries.
    pub residual_compression: T,
    /// Worst reconstruction error `||(1/alpha) sum <f, g_i> g_i - f||_2`
    /// over the probe vectors.
    pub residual_reconstruction: T,
    pub tolerance: T,
    pub probe_seed: u64,
    pub pass: bool,
    pub tool_version: String,
}

/// Default certificate tolerance: two matrix products of eigensolver-accuracy
/// inputs, scaled to the operator.
pub fn default_certificate_tol<T: Scalar>(s: &SymMatrix<T>) -> T {
    scalar::<T>(1e-9) * (T::one() + s.max_abs())
}

/// Checks whether projecting `frame` by `p` yields a tight frame with bound
/// `alpha` on `ran p`, at tolerance `tol`.
///
/// Probe vectors are the `rank` basis columns of `p` plus `probes` seeded
/// pseudo-random unit vectors in `ran p`; the seed is recorded in the
/// certificate so runs are reproducible.
pub fn verify_tight<T: Scalar>(
    frame: &FrameSpec<T>,
    p: &Projection<T>,
    alpha: T,
    tol: T,
    probes: usize,
    seed: u64,
) -> Result<TightnessCertificate<T>> {
    if !(alpha > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    frame.validate()?;
    if p.dim() != frame.dim {
        return Err(Error::DimensionMismatch {
            expected: frame.dim,
            got: p.dim(),
        });
    }

    // Route 1: compression residual, entrywise.
    let s = frame_operator(frame)?;
    let psp = compress(p, &s)?;
    let p_dense = p.to_dense();
    let mut residual_compression = T::zero();
    for i in 0..frame.dim {
        for j in 0..=i {
            let r = (psp.get(i, j) - alpha * p_dense.get(i, j)).abs();
            residual_compression = residual_compression.max(r);
        }
    }

    // Route 2: reconstruction residual on probes in ran P.
    let projected = project_frame(p, frame)?;
    let mut residual_reconstruction = T::zero();
    for k in 0..p.rank() {
        let f = p.basis().col(k).to_vec();
        let r = reconstruction_error(&projected, &f, alpha);
        residual_reconstruction = residual_reconstruction.max(r);
    }
    if p.rank() > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..probes {
            let f = random_range_unit(p, &mut rng);
            let r = reconstruction_error(&projected, &f, alpha);
            residual_reconstruction = residual_reconstruction.max(r);
        }
    }

    let pass = residual_compression <= tol && residual_reconstruction <= tol;
    Ok(TightnessCertificate {
        alpha,
        rank: p.rank(),
        residual_compression,
        residual_reconstruction,
        tolerance: tol,
        probe_seed: seed,
        pass,
        tool_version: TOOL_VERSION.to_string(),
    })
}

/// Least-squares optimal level for a given frame and projection:
/// `trace(Q^T S Q) / rank`, the value of `alpha` minimizing
/// `||P S P - alpha P||_F`.
pub fn optimal_level<T: Scalar>(frame: &FrameSpec<T>, p: &Projection<T>) -> Result<T> {
    frame.validate()?;
    if p.dim() != frame.dim {
        return Err(Error::DimensionMismatch {
            expected: frame.dim,
            got: p.dim(),
        });
    }
    if p.rank() == 0 {
        return Err(Error::InvalidInput(
            "cannot derive a level for a rank-zero projection".into(),
        ));
    }
    let s = frame_operator(frame)?;
    let mut trace = T::zero();
    for k in 0..p.rank() {
        let q = p.basis().col(k);
        trace += dot(q, &s.apply(q));
    }
    Ok(trace / T::from_usize(p.rank()).unwrap())
}

/// `||(1/alpha) sum_i <f, g_i> g_i - f||_2` for a unit probe `f`.
fn reconstruction_error<T: Scalar>(projected: &FrameSpec<T>, f: &[T], alpha: T) -> T {
    let mut recon = vec![T::zero(); f.len()];
    for g in &projected.vectors {
        let c = dot(f, g);
        for (r, &gi) in recon.iter_mut().zip(g) {
            *r += c * gi;
        }
    }
    let inv_alpha = alpha.recip();
    let mut diff = T::zero();
    for (r, &fi) in recon.iter().zip(f) {
        let d = *r * inv_alpha - fi;
        diff += d * d;
    }
    diff.sqrt()
}

/// Seeded unit vector in `ran p`: a random combination of the basis columns.
fn random_range_unit<T: Scalar>(p: &Projection<T>, rng: &mut ChaCha8Rng) -> Vec<T> {
    loop {
        let coeffs: Vec<T> = (0..p.rank())
            .map(|_| scalar::<T>(rng.random::<f64>() * 2.0 - 1.0))
            .collect();
        let v = p.basis().apply(&coeffs);
        let n = norm2(&v);
        if n > scalar(1e-6) {
            return v.iter().map(|&x| x / n).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_frame(d: usize) -> FrameSpec<f64> {
        let vectors = (0..d)
            .map(|i| {
                let mut v = vec![0.0; d];
                v[i] = 1.0;
                v
            })
            .collect();
        FrameSpec::new(d, vectors).unwrap()
    }

    #[test]
    fn orthonormal_basis_certifies_at_alpha_one() {
        let f = basis_frame(3);
        let p = Projection::identity(3);
        let cert = verify_tight(&f, &p, 1.0, 1e-12, 4, DEFAULT_PROBE_SEED).unwrap();
        assert!(cert.pass);
        assert!(cert.residual_compression <= 1e-15);
        assert!(cert.residual_reconstruction <= 1e-14);
    }

    #[test]
    fn non_tight_frame_fails_both_routes_for_any_alpha() {
        // S = diag(2, 1) is not a multiple of I, so P = I cannot certify.
        let f = FrameSpec::new(2, vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let p = Projection::identity(2);
        for alpha in [0.5, 1.0, 1.5, 2.0, 3.0] {
            let cert = verify_tight(&f, &p, alpha, 1e-8, 4, DEFAULT_PROBE_SEED).unwrap();
            assert!(!cert.pass);
            assert!(cert.residual_compression > 1e-8);
            assert!(cert.residual_reconstruction > 1e-8);
        }
    }

    #[test]
    fn nonpositive_alpha_rejected() {
        let f = basis_frame(2);
        let p = Projection::identity(2);
        assert!(matches!(
            verify_tight(&f, &p, 0.0, 1e-8, 4, 0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            verify_tight(&f, &p, -1.0, 1e-8, 4, 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = basis_frame(3);
        let p = Projection::identity(2);
        assert!(matches!(
            verify_tight(&f, &p, 1.0, 1e-8, 4, 0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn certificate_records_seed_and_version() {
        let f = basis_frame(2);
        let p = Projection::identity(2);
        let cert = verify_tight(&f, &p, 1.0, 1e-10, 2, 777).unwrap();
        assert_eq!(cert.probe_seed, 777);
        assert_eq!(cert.tool_version, TOOL_VERSION);
    }
}
