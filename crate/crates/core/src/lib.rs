//! Numerical toolkit for tight projections of frames.
//!
//! Given a frame for `R^d`, the toolkit constructs a projection `P` and a
//! level `alpha > 0` with `P S P = alpha P` for the frame operator `S`, so
//! the projected frame is tight on `ran P`, and emits a residual certificate
//! for the claim. Alongside the finite constructive path it ships:
//!
//! - a classifier deciding projectability for modeled eigenvalue sequences
//!   standing in for infinite-dimensional positive operators (the obstruction
//!   class being translates of compact operators whose positive or negative
//!   part has finite-dimensional kernel),
//! - a multiplication-operator pipeline for piecewise-polynomial symbols on
//!   an interval, with exact integration and preimage partitioning,
//! - finite-codimension constructions governed by the rank of `E - alpha`.
//!
//! Core numerics are generic over the scalar type; the `*64` aliases at the
//! crate root pin `f64`, which all documented tolerances assume.

// `!(x > 0)` rather than `x <= 0`: the negated form also rejects NaN,
// which is the point of these validation checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classifier;
pub mod eigen;
pub mod error;
pub mod finite_codim;
pub mod frame;
pub mod interval;
pub mod io;
pub mod matrix;
pub mod multop;
pub mod pairing;
pub mod poly;
pub mod projection;
pub mod scalar;
pub mod verify;

pub use classifier::{
    classify, find_alpha_infinite, fk_membership, truncated_plan, Classification, CountDecl,
    LimitPointDecl, SpectrumFamily, SpectrumModel, TruncationReport, Verdict, Witness,
};
pub use eigen::{jacobi_eigh, EigenDecomp};
pub use error::{Error, Result};
pub use finite_codim::{
    finite_codim_check_model, finite_codim_projection, rank_of_translate,
    rank_of_translate_model, TranslateRank,
};
pub use frame::{frame_bounds, frame_operator, harmonic_orthogonal_frame, project_frame, FrameSpec};
pub use interval::IntervalSet;
pub use matrix::{Matrix, SymMatrix};
pub use multop::{
    block_eigenvalues, dyadic_edge_partition, essential_range_pair, partition_preimage,
    partition_preimage_toward, tighten_multop, verify_block_tight, BlockFunction, BlockSystem,
    MultOpCertificate, MultOpSpec, MultOpTightening, PartitionScheme, Piece,
};
pub use pairing::{
    build_pairing, choose_alpha, convex_pair_weights, eigenspace_projection, pairing_projection,
    tighten, tighten_default, tighten_with, PairEntry, PairingPlan,
};
pub use poly::Poly;
pub use projection::{compress, Projection};
pub use scalar::Scalar;
pub use verify::{default_certificate_tol, verify_tight, TightnessCertificate};

/// `f64` aliases for the domain types; the CLI and the test suites use these.
pub type FrameSpec64 = FrameSpec<f64>;
pub type SymMatrix64 = SymMatrix<f64>;
pub type Matrix64 = Matrix<f64>;
pub type EigenDecomp64 = EigenDecomp<f64>;
pub type Projection64 = Projection<f64>;
pub type TightnessCertificate64 = TightnessCertificate<f64>;
pub type PairingPlan64 = PairingPlan<f64>;
pub type SpectrumModel64 = SpectrumModel<f64>;
pub type Classification64 = Classification<f64>;
pub type MultOpSpec64 = MultOpSpec<f64>;
pub type MultOpCertificate64 = MultOpCertificate<f64>;
