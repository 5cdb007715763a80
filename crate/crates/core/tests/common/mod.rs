//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use frameproj::{jacobi_eigh, FrameSpec64, Matrix64, Projection64, SymMatrix64};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

pub fn random_frame(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> FrameSpec64 {
    let vectors = (0..count)
        .map(|_| (0..dim).map(|_| uniform(rng, -1.0, 1.0)).collect())
        .collect();
    FrameSpec64::new(dim, vectors).unwrap()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, dim: usize) -> SymMatrix64 {
    SymMatrix64::from_lower_fn(dim, |_, _| uniform(rng, -1.0, 1.0))
}

/// Orthogonal matrix: the eigenvector set of a random symmetric matrix.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, dim: usize) -> Matrix64 {
    let s = random_symmetric(rng, dim);
    jacobi_eigh(&s, 1e-14).unwrap().eigenvectors
}

/// Random rank-`rank` projection: a subset of orthogonal columns.
pub fn random_projection(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> Projection64 {
    let q = random_orthogonal(rng, dim);
    let columns: Vec<Vec<f64>> = (0..rank).map(|j| q.col(j).to_vec()).collect();
    Projection64::from_columns(dim, &columns).unwrap()
}
