//! Symmetric eigendecomposition via the cyclic Jacobi method.
//!
//! Jacobi is chosen over QR deliberately: it is dependency-free, simple to
//! make bit-deterministic (fixed sweep order, no shifts), and accurate enough
//! at desk scale. Each rotation annihilates one off-diagonal entry; the
//! off-diagonal Frobenius norm decays quadratically once sweeps settle.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{scalar, to_f64, Scalar};
use crate::SymMatrix;

/// Default relative off-diagonal tolerance for the solver.
pub const DEFAULT_JACOBI_TOL: f64 = 1e-14;

/// Sweep cap; convergence failures past this are reported, not retried.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues and the
/// matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomp<T> {
    /// Eigenvalues sorted ascending.
    pub eigenvalues: Vec<T>,
    /// Column `i` is the eigenvector for `eigenvalues[i]`.
    pub eigenvectors: Matrix<T>,
}

impl<T: Scalar> EigenDecomp<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max |Q^T Q - I|`.
    pub fn orthonormality_defect(&self) -> T {
        self.eigenvectors.orthonormality_defect()
    }

    /// `max |Q diag(lambda) Q^T - S|` against the matrix that was decomposed.
    pub fn reconstruction_defect(&self, s: &SymMatrix<T>) -> T {
        let d = self.dim();
        let q = &self.eigenvectors;
        let mut worst = T::zero();
        for i in 0..d {
            for j in 0..=i {
                let mut acc = T::zero();
                for k in 0..d {
                    acc += q.get(i, k) * self.eigenvalues[k] * q.get(j, k);
                }
                worst = worst.max((acc - s.get(i, j)).abs());
            }
        }
        worst
    }
}

/// Diagonalizes a symmetric matrix with cyclic-by-row Jacobi rotations.
///
/// Rotations continue until the off-diagonal Frobenius norm drops below
/// `tol * ||S||_F` (the Frobenius norm is invariant under the rotations, so
/// it is computed once). Eigenvalues are sorted ascending with a stable sort;
/// ties keep the solver's output order, which makes results reproducible.
pub fn jacobi_eigh<T: Scalar>(s: &SymMatrix<T>, tol: T) -> Result<EigenDecomp<T>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "jacobi tolerance must be positive, got {tol}"
        )));
    }
    let n = s.dim();
    let mut a = s.to_dense();
    let mut q = Matrix::<T>::identity(n);

    let fro = s.frobenius_norm();
    let threshold = tol * fro;

    if n <= 1 || fro == T::zero() {
        let eigenvalues = (0..n).map(|i| a.get(i, i)).collect();
        return sorted_decomp(eigenvalues, q);
    }

    let mut sweeps = 0usize;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps >= MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: to_f64(off),
            });
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                rotate(&mut a, &mut q, p, r);
            }
        }
        sweeps += 1;
    }

    let eigenvalues: Vec<T> = (0..n).map(|i| a.get(i, i)).collect();
    sorted_decomp(eigenvalues, q)
}

fn sorted_decomp<T: Scalar>(eigenvalues: Vec<T>, q: Matrix<T>) -> Result<EigenDecomp<T>> {
    let n = eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep the solver's output order
    order.sort_by(|&i, &j| {
        eigenvalues[i]
            .partial_cmp(&eigenvalues[j])
            .expect("finite eigenvalues")
    });
    let sorted_vals: Vec<T> = order.iter().map(|&i| eigenvalues[i]).collect();
    let cols: Vec<Vec<T>> = order.iter().map(|&i| q.col(i).to_vec()).collect();
    let vectors = Matrix::from_columns(n, &cols)?;
    Ok(EigenDecomp {
        eigenvalues: sorted_vals,
        eigenvectors: vectors,
    })
}

fn off_diagonal_norm<T: Scalar>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = a.get(i, j);
                acc += v * v;
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation in the (p, r) plane, annihilating `a[p][r]`.
fn rotate<T: Scalar>(a: &mut Matrix<T>, q: &mut Matrix<T>, p: usize, r: usize) {
    let apr = a.get(p, r);
    if apr == T::zero() {
        return;
    }
    let app = a.get(p, p);
    let arr = a.get(r, r);
    let two = scalar::<T>(2.0);

    let tau = (arr - app) / (two * apr);
    // smaller-magnitude root of t^2 + 2 tau t - 1 = 0
    let t = if tau.abs() > T::one() / T::epsilon() {
        (two * tau).recip()
    } else {
        let sign = if tau >= T::zero() { T::one() } else { -T::one() };
        sign / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = (T::one() + t * t).sqrt().recip();
    let s = t * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a.get(k, p);
        let akr = a.get(k, r);
        a.set(k, p, c * akp - s * akr);
        a.set(k, r, s * akp + c * akr);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let ark = a.get(r, k);
        a.set(p, k, c * apk - s * ark);
        a.set(r, k, s * apk + c * ark);
    }
    // pin the annihilated pair to avoid round-off residue
    a.set(p, r, T::zero());
    a.set(r, p, T::zero());

    for k in 0..n {
        let qkp = q.get(k, p);
        let qkr = q.get(k, r);
        q.set(k, p, c * qkp - s * qkr);
        q.set(k, r, s * qkp + c * qkr);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn eigh64(s: &SymMatrix<f64>) -> EigenDecomp<f64> {
        jacobi_eigh(s, DEFAULT_JACOBI_TOL).unwrap()
    }

    #[test]
    fn already_diagonal_matrix_sorts_ascending() {
        let s = SymMatrix::diagonal(&[2.0, 1.0]);
        let e = eigh64(&s);
        assert_eq!(e.eigenvalues, vec![1.0, 2.0]);
        // eigenvector for 1 is e_2, for 2 is e_1
        assert_eq!(e.eigenvectors.get(1, 0).abs(), 1.0);
        assert_eq!(e.eigenvectors.get(0, 1).abs(), 1.0);
    }

    #[test]
    fn symmetric_swap_matrix() {
        let mut s = SymMatrix::zeros(2);
        s.set(0, 1, 1.0);
        let e = eigh64(&s);
        assert!((e.eigenvalues[0] + 1.0).abs() <= 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() <= 1e-14);
        // eigenvectors are (e1 -+ e2)/sqrt(2) up to sign
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for j in 0..2 {
            let col = e.eigenvectors.col(j);
            assert!((col[0].abs() - inv_sqrt2).abs() <= 1e-14);
            assert!((col[1].abs() - inv_sqrt2).abs() <= 1e-14);
        }
    }

    #[test]
    fn random_64x64_reconstruction_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = 64;
        let s = SymMatrix::from_lower_fn(d, |_, _| rng.random::<f64>() * 2.0 - 1.0);
        let e = eigh64(&s);
        let scale = s.max_abs();
        assert!(e.reconstruction_defect(&s) <= 1e-10 * scale);
        assert!(e.orthonormality_defect() <= 1e-12);
    }

    #[test]
    fn zero_tolerance_rejected() {
        let s = SymMatrix::<f64>::identity(2);
        assert!(matches!(
            jacobi_eigh(&s, 0.0),
            Err(Error::InvalidInput(_))
        ));
    }
}
