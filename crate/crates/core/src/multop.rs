//! Multiplication operators `f -> phi . f` on `L^2[a, b)` for piecewise
//! polynomial symbols: preimage partitioning, normalized-indicator block
//! systems with exactly integrated compressed eigenvalues, and the two-stage
//! tightening that combines blocks from two spectral regions into a system
//! whose compression is a positive multiple of the identity.
//!
//! Piecewise polynomials are the symbol class on purpose: preimages reduce
//! to root isolation and integrals to antiderivatives, so the only numeric
//! error anywhere is floating-point rounding; there is no quadrature
//! discretization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::pairing::{build_pairing, choose_alpha, PairEntry, PairingPlan};
use crate::poly::Poly;
use crate::scalar::{scalar, to_f64, Scalar};
use crate::verify::TOOL_VERSION;

/// Maximum polynomial degree accepted per piece.
pub const MAX_SYMBOL_DEGREE: usize = 8;

/// Shrink-step cap for preimage partitioning.
const MAX_SHRINK_STEPS: usize = 64;

/// One polynomial piece, valid on `[previous end, end)`, with ascending
/// coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece<T> {
    pub end: T,
    pub coeffs: Vec<T>,
}

/// A nonnegative piecewise-polynomial symbol on the half-open interval
/// `[domain.0, domain.1)`. Pieces cover the domain exactly, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultOpSpec<T> {
    pub domain: (T, T),
    pub pieces: Vec<Piece<T>>,
}

impl<T: Scalar> MultOpSpec<T> {
    pub fn new(domain: (T, T), pieces: Vec<Piece<T>>) -> Result<Self> {
        let spec = MultOpSpec { domain, pieces };
        spec.validate()?;
        Ok(spec)
    }

    /// Convenience constructor for a single-piece symbol on `[a, b)`.
    pub fn single(domain: (T, T), coeffs: &[T]) -> Result<Self> {
        Self::new(
            domain,
            vec![Piece {
                end: domain.1,
                coeffs: coeffs.to_vec(),
            }],
        )
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!(
                "domain [{a}, {b}) is not a bounded nonempty interval"
            )));
        }
        if self.pieces.is_empty() {
            return Err(Error::InvalidInput("symbol needs at least one piece".into()));
        }
        let mut lo = a;
        for (i, piece) in self.pieces.iter().enumerate() {
            if piece.coeffs.is_empty() || piece.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "piece {i} has missing or non-finite coefficients"
                )));
            }
            if piece.coeffs.len() > MAX_SYMBOL_DEGREE + 1 {
                return Err(Error::InvalidInput(format!(
                    "piece {i} exceeds maximum degree {MAX_SYMBOL_DEGREE}"
                )));
            }
            if !(piece.end > lo) {
                return Err(Error::InvalidInput(format!(
                    "piece {i} end {} does not advance past {lo}",
                    piece.end
                )));
            }
            lo = piece.end;
        }
        if lo != b {
            return Err(Error::InvalidInput(format!(
                "pieces end at {lo}, domain ends at {b}"
            )));
        }
        let (min_v, _) = self.extrema();
        if min_v < T::zero() {
            return Err(Error::InvalidInput(format!(
                "symbol is negative (minimum {min_v}); multiplication operator must be positive"
            )));
        }
        Ok(())
    }

    /// Iterates `(piece_start, piece_end, polynomial)`.
    pub fn piece_ranges(&self) -> Vec<(T, T, Poly<T>)> {
        let mut out = Vec::with_capacity(self.pieces.len());
        let mut lo = self.domain.0;
        for piece in &self.pieces {
            out.push((lo, piece.end, Poly::new(&piece.coeffs)));
            lo = piece.end;
        }
        out
    }

    /// Symbol value at a domain point.
    pub fn eval(&self, x: T) -> T {
        for (lo, hi, poly) in self.piece_ranges() {
            if x >= lo && x < hi {
                return poly.eval(x);
            }
        }
        // right endpoint: evaluate the final piece's limit
        let (_, _, poly) = self.piece_ranges().pop().unwrap();
        poly.eval(x)
    }

    /// True when some piece is a constant polynomial: the symbol is constant
    /// on a set of positive measure, so its operator has point spectrum.
    pub fn has_constant_piece(&self) -> bool {
        self.pieces
            .iter()
            .any(|p| Poly::new(&p.coeffs).is_constant())
    }

    /// Global minimum and maximum over the closed domain.
    pub fn extrema(&self) -> (T, T) {
        let mut min_v = T::infinity();
        let mut max_v = T::neg_infinity();
        for (lo, hi, poly) in self.piece_ranges() {
            let (pmin, pmax) = poly.extrema_on(lo, hi);
            min_v = min_v.min(pmin);
            max_v = max_v.max(pmax);
        }
        (min_v, max_v)
    }

    /// Exact preimage `{x in domain : level_lo < phi(x) < level_hi}` as an
    /// interval set, via per-piece root isolation.
    pub fn preimage_open(&self, level_lo: T, level_hi: T) -> IntervalSet<T> {
        let two = scalar::<T>(2.0);
        let mut spans: Vec<(T, T)> = Vec::new();
        for (lo, hi, poly) in self.piece_ranges() {
            let mut cuts = vec![lo, hi];
            cuts.extend(poly.roots_in(lo, hi, level_lo));
            cuts.extend(poly.roots_in(lo, hi, level_hi));
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            cuts.dedup_by(|a, b| *a == *b);
            for w in cuts.windows(2) {
                let (u, v) = (w[0], w[1]);
                if !(v > u) {
                    continue;
                }
                let mid = (u + v) / two;
                let value = poly.eval(mid);
                if value > level_lo && value < level_hi {
                    spans.push((u, v));
                }
            }
        }
        IntervalSet::new(spans)
    }

    /// Exact integral of the symbol over an interval set.
    pub fn integrate_over(&self, set: &IntervalSet<T>) -> T {
        let mut acc = T::zero();
        for &(slo, shi) in set.spans() {
            for (plo, phi_end, poly) in self.piece_ranges() {
                let lo = slo.max(plo);
                let hi = shi.min(phi_end);
                if hi > lo {
                    acc += poly.integrate_on(lo, hi);
                }
            }
        }
        acc
    }

    /// Hull `[min, max]` of the symbol over an interval set (closed spans).
    pub fn hull_over(&self, set: &IntervalSet<T>) -> (T, T) {
        let mut min_v = T::infinity();
        let mut max_v = T::neg_infinity();
        for &(slo, shi) in set.spans() {
            for (plo, phi_end, poly) in self.piece_ranges() {
                let lo = slo.max(plo);
                let hi = shi.min(phi_end);
                if hi > lo {
                    let (pmin, pmax) = poly.extrema_on(lo, hi);
                    min_v = min_v.min(pmin);
                    max_v = max_v.max(pmax);
                }
            }
        }
        (min_v, max_v)
    }
}

/// Finitely many disjoint positive-measure interval sets, partitioning a
/// preimage.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionScheme<T> {
    pub sets: Vec<IntervalSet<T>>,
    pub measures: Vec<T>,
}

impl<T: Scalar> PartitionScheme<T> {
    pub fn new(sets: Vec<IntervalSet<T>>) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            if !(s.measure() > T::zero()) {
                return Err(Error::InvalidInput(format!(
                    "partition set {i} has zero measure"
                )));
            }
            for (j, t) in sets.iter().enumerate().skip(i + 1) {
                if !s.is_disjoint_from(t) {
                    return Err(Error::InvalidInput(format!(
                        "partition sets {i} and {j} overlap"
                    )));
                }
            }
        }
        let measures = sets.iter().map(|s| s.measure()).collect();
        Ok(PartitionScheme { sets, measures })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// A simple function: a finite combination `sum_k coeff_k . indicator(set_k)`
/// with pairwise-disjoint supports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockFunction<T> {
    pub terms: Vec<(IntervalSet<T>, T)>,
}

impl<T: Scalar> BlockFunction<T> {
    /// `integral phi . f . g dmu` for two simple functions.
    pub fn weighted_product_integral(
        spec: &MultOpSpec<T>,
        f: &BlockFunction<T>,
        g: &BlockFunction<T>,
    ) -> T {
        let mut acc = T::zero();
        for (fa, fc) in &f.terms {
            for (ga, gc) in &g.terms {
                let common = fa.intersection(ga);
                if !common.is_empty() {
                    acc += *fc * *gc * spec.integrate_over(&common);
                }
            }
        }
        acc
    }

    /// Plain `L^2` inner product `integral f . g dmu`.
    pub fn inner_product(f: &BlockFunction<T>, g: &BlockFunction<T>) -> T {
        let mut acc = T::zero();
        for (fa, fc) in &f.terms {
            for (ga, gc) in &g.terms {
                acc += *fc * *gc * fa.intersection(ga).measure();
            }
        }
        acc
    }
}

/// Normalized indicator functions over a partition, with their compressed
/// eigenvalues `eta_i = mu(X_i)^{-1} integral_{X_i} phi`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockSystem<T> {
    /// `(support, coefficient)` with `coefficient = measure^{-1/2}`.
    pub functions: Vec<(IntervalSet<T>, T)>,
    pub eigenvalues: Vec<T>,
}

impl<T: Scalar> BlockSystem<T> {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn block_function(&self, i: usize) -> BlockFunction<T> {
        BlockFunction {
            terms: vec![self.functions[i].clone()],
        }
    }

    /// Largest absolute entry of `Gram - I` over the system.
    pub fn gram_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.len() {
            for j in i..self.len() {
                let g = BlockFunction::inner_product(&self.block_function(i), &self.block_function(j));
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

/// Residual certificate for `P M_phi P = alpha P` on a constructed block
/// subspace: diagonal entries must hit `alpha`, off-diagonal entries must
/// vanish.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultOpCertificate<T> {
    pub alpha: T,
    pub rank: usize,
    pub max_diagonal_residual: T,
    pub max_cross_term: T,
    pub tolerance: T,
    pub pass: bool,
    pub tool_version: String,
}

/// Result of the two-stage tightening: the stage-1 block system (sorted by
/// compressed eigenvalue), the stage-2 pairing plan over it, the level, and
/// the certificate.
#[derive(Debug, Clone)]
pub struct MultOpTightening<T> {
    pub stage1: BlockSystem<T>,
    pub plan: PairingPlan<T>,
    pub alpha: T,
    pub certificate: MultOpCertificate<T>,
}

/// `(x, y, ball_low, ball_high)`: two essential-range representatives and
/// their disjoint-closure balls.
pub type RangePair<T> = (T, T, (T, T), (T, T));

/// Two representatives of the essential range (the symbol's essential
/// infimum and supremum) together with open balls of radius `(y - x) / 4`
/// around them, whose closures are disjoint.
pub fn essential_range_pair<T: Scalar>(spec: &MultOpSpec<T>) -> Result<RangePair<T>> {
    spec.validate()?;
    if spec.has_constant_piece() {
        return Err(Error::NotApplicable(
            "symbol is constant on a set of positive measure; constant levels contribute point spectrum and belong to the diagonal pathway".into(),
        ));
    }
    let (x, y) = spec.extrema();
    if !(y > x) {
        return Err(Error::NotApplicable(
            "symbol range is a single point; no two essential-range values exist".into(),
        ));
    }
    let radius = (y - x) / scalar(4.0);
    Ok((x, y, (x - radius, x + radius), (y - radius, y + radius)))
}

/// Partitions the preimage of the open interval `b` into `count` sets of
/// positive measure by shrinking `b` geometrically (ratio 1/2) toward its
/// center.
pub fn partition_preimage<T: Scalar>(
    spec: &MultOpSpec<T>,
    b: (T, T),
    count: usize,
) -> Result<PartitionScheme<T>> {
    let center = (b.0 + b.1) / scalar(2.0);
    partition_preimage_toward(spec, b, center, count)
}

/// As `partition_preimage`, shrinking toward an arbitrary target point in the
/// closure of `b`. Annuli of zero measure are skipped and the shrink
/// continues; running out of steps is reported as exhaustion (the target may
/// not be a limit of essential-range values).
pub fn partition_preimage_toward<T: Scalar>(
    spec: &MultOpSpec<T>,
    b: (T, T),
    target: T,
    count: usize,
) -> Result<PartitionScheme<T>> {
    spec.validate()?;
    let (lo, hi) = b;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInput(format!(
            "ball ({lo}, {hi}) is not a bounded open interval"
        )));
    }
    if target < lo || target > hi {
        return Err(Error::InvalidInput(format!(
            "shrink target {target} lies outside [{lo}, {hi}]"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidInput("partition count must be positive".into()));
    }

    let mut current = spec.preimage_open(lo, hi);
    if !(current.measure() > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "({lo}, {hi}) misses the essential range: its preimage has zero measure"
        )));
    }

    let half = scalar::<T>(0.5);
    let mut ball = (lo, hi);
    let mut sets = Vec::with_capacity(count);
    for step in 0..MAX_SHRINK_STEPS {
        let next_ball = (
            target + (ball.0 - target) * half,
            target + (ball.1 - target) * half,
        );
        let inner = spec.preimage_open(next_ball.0, next_ball.1);
        let annulus = current.difference(&inner);
        if annulus.measure() > T::zero() {
            sets.push(annulus);
            if sets.len() == count {
                return PartitionScheme::new(sets);
            }
        }
        ball = next_ball;
        current = inner;
        if current.measure() == T::zero() {
            return Err(Error::PartitionExhausted {
                steps: step + 1,
                produced: sets.len(),
                requested: count,
            });
        }
    }
    Err(Error::PartitionExhausted {
        steps: MAX_SHRINK_STEPS,
        produced: sets.len(),
        requested: count,
    })
}

/// Normalized indicators over a partition, with exactly integrated
/// compressed eigenvalues. Each eigenvalue lies in the convex hull of the
/// symbol over its set.
pub fn block_eigenvalues<T: Scalar>(
    spec: &MultOpSpec<T>,
    parts: &PartitionScheme<T>,
) -> Result<BlockSystem<T>> {
    spec.validate()?;
    let mut functions = Vec::with_capacity(parts.len());
    let mut eigenvalues = Vec::with_capacity(parts.len());
    for set in &parts.sets {
        let measure = set.measure();
        if !(measure > T::zero()) {
            return Err(Error::InvalidInput(
                "partition set with zero measure cannot be normalized".into(),
            ));
        }
        let coefficient = measure.sqrt().recip();
        let eta = spec.integrate_over(set) / measure;
        functions.push((set.clone(), coefficient));
        eigenvalues.push(eta);
    }
    Ok(BlockSystem {
        functions,
        eigenvalues,
    })
}

/// Checks `P M_phi P = alpha P` on the span of the given simple functions:
/// every diagonal weighted integral must be within `tol` of `alpha` and every
/// cross term within `tol` of zero. Cross terms of honestly disjoint supports
/// are identically zero, which makes this a sharp test of the partition.
pub fn verify_block_tight<T: Scalar>(
    spec: &MultOpSpec<T>,
    functions: &[BlockFunction<T>],
    alpha: T,
    tol: T,
) -> Result<MultOpCertificate<T>> {
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
    let mut max_diag = T::zero();
    let mut max_cross = T::zero();
    for i in 0..functions.len() {
        for j in i..functions.len() {
            let value =
                BlockFunction::weighted_product_integral(spec, &functions[i], &functions[j]);
            if i == j {
                max_diag = max_diag.max((value - alpha).abs());
            } else {
                max_cross = max_cross.max(value.abs());
            }
        }
    }
    let pass = max_diag <= tol && max_cross <= tol;
    Ok(MultOpCertificate {
        alpha,
        rank: functions.len(),
        max_diagonal_residual: max_diag,
        max_cross_term: max_cross,
        tolerance: tol,
        pass,
        tool_version: TOOL_VERSION.to_string(),
    })
}

/// Two-stage tightening for a nonconstant symbol.
///
/// Stage 1 partitions the preimages of two disjoint balls around the
/// essential infimum and supremum into `n` sets each and takes normalized
/// indicators: a diagonal system with `n` compressed eigenvalues in each
/// ball. Stage 2 pairs the 2n eigenvalues across the central gap and
/// combines the indicators accordingly; the certificate then checks the
/// compressed operator entrywise on the combined system.
pub fn tighten_multop<T: Scalar>(
    spec: &MultOpSpec<T>,
    n: usize,
    tol: T,
) -> Result<MultOpTightening<T>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "stage-1 block count must be at least 2, got {n}"
        )));
    }
    let (_, _, ball_low, ball_high) = essential_range_pair(spec)?;
    let parts_low = partition_preimage(spec, ball_low, n)?;
    let parts_high = partition_preimage(spec, ball_high, n)?;
    let blocks_low = block_eigenvalues(spec, &parts_low)?;
    let blocks_high = block_eigenvalues(spec, &parts_high)?;

    // merge and sort the 2n blocks by compressed eigenvalue
    let mut items: Vec<(IntervalSet<T>, T, T)> = Vec::with_capacity(2 * n);
    for (f, e) in blocks_low
        .functions
        .into_iter()
        .zip(blocks_low.eigenvalues)
        .chain(blocks_high.functions.into_iter().zip(blocks_high.eigenvalues))
    {
        items.push((f.0, f.1, e));
    }
    items.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
    let eigenvalues: Vec<T> = items.iter().map(|it| it.2).collect();

    let alpha = choose_alpha(&eigenvalues, None)?;
    if !(alpha > T::zero()) {
        return Err(Error::Infeasible(format!(
            "central level {alpha} is not positive"
        )));
    }
    let plan = build_pairing(&eigenvalues, alpha)?;

    let stage1 = BlockSystem {
        functions: items.iter().map(|it| (it.0.clone(), it.1)).collect(),
        eigenvalues,
    };

    let combined: Vec<BlockFunction<T>> = plan
        .entries()
        .iter()
        .map(|entry| match entry {
            PairEntry::Pair {
                low,
                high,
                weight_low,
                weight_high,
            } => BlockFunction {
                terms: vec![
                    (stage1.functions[*low].0.clone(), *weight_low * stage1.functions[*low].1),
                    (
                        stage1.functions[*high].0.clone(),
                        *weight_high * stage1.functions[*high].1,
                    ),
                ],
            },
            PairEntry::Singleton { index } => BlockFunction {
                terms: vec![(stage1.functions[*index].0.clone(), stage1.functions[*index].1)],
            },
        })
        .collect();

    let certificate = verify_block_tight(spec, &combined, alpha, tol)?;
    if !certificate.pass {
        return Err(Error::CertificateFailed(format!(
            "block certificate failed: diagonal residual {:e}, cross term {:e}, tolerance {:e}",
            to_f64(certificate.max_diagonal_residual),
            to_f64(certificate.max_cross_term),
            to_f64(certificate.tolerance),
        )));
    }
    Ok(MultOpTightening {
        stage1,
        plan,
        alpha,
        certificate,
    })
}

/// The symmetric dyadic partition of `[0, 1)`: set `i` (1-based) is
/// `[2^-i-1, 2^-i) u [1 - 2^-i, 1 - 2^-i-1)`, of measure `2^-i`. For the
/// identity symbol each block averages to exactly one half.
pub fn dyadic_edge_partition<T: Scalar>(count: usize) -> Result<PartitionScheme<T>> {
    let sets = (1..=count as i32)
        .map(|i| {
            let lo = scalar::<T>(2f64.powi(-i - 1));
            let hi = scalar::<T>(2f64.powi(-i));
            let one = T::one();
            IntervalSet::new(vec![(lo, hi), (one - hi, one - lo)])
        })
        .collect();
    PartitionScheme::new(sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_symbol() -> MultOpSpec<f64> {
        MultOpSpec::single((0.0, 1.0), &[0.0, 1.0]).unwrap()
    }

    fn square_symbol() -> MultOpSpec<f64> {
        MultOpSpec::single((0.0, 1.0), &[0.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn essential_range_of_identity() {
        let (x, y, bx, by) = essential_range_pair(&identity_symbol()).unwrap();
        assert_eq!((x, y), (0.0, 1.0));
        assert_eq!(bx, (-0.25, 0.25));
        assert_eq!(by, (0.75, 1.25));
    }

    #[test]
    fn essential_range_of_square() {
        let (x, y, _, _) = essential_range_pair(&square_symbol()).unwrap();
        assert!(x.abs() <= 1e-15);
        assert!((y - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn constant_symbol_is_redirected() {
        let spec = MultOpSpec::single((0.0, 1.0), &[3.0]).unwrap();
        assert!(matches!(
            essential_range_pair(&spec),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn dyadic_annuli_for_identity_shrinking_to_zero() {
        // B = (0, 1/2) shrinking toward 0: annuli [1/4,1/2), [1/8,1/4), ...
        let spec = identity_symbol();
        let parts = partition_preimage_toward(&spec, (0.0, 0.5), 0.0, 3).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts.sets[0].spans(), &[(0.25, 0.5)]);
        assert_eq!(parts.sets[1].spans(), &[(0.125, 0.25)]);
        assert_eq!(parts.sets[2].spans(), &[(0.0625, 0.125)]);
        for (m, expect) in parts.measures.iter().zip([0.25, 0.125, 0.0625]) {
            assert!((m - expect).abs() <= 1e-15);
        }
    }

    #[test]
    fn preimage_clips_at_domain_boundary() {
        // ball (3/4, 5/4) around the supremum: annuli accumulate at 1 from
        // the left and never leave [0, 1)
        let spec = identity_symbol();
        let parts = partition_preimage(&spec, (0.75, 1.25), 4).unwrap();
        for set in &parts.sets {
            for &(lo, hi) in set.spans() {
                assert!(lo >= 0.75 && hi <= 1.0);
            }
        }
    }

    #[test]
    fn single_annulus_partition() {
        let spec = identity_symbol();
        let parts = partition_preimage_toward(&spec, (0.0, 0.5), 0.0, 1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts.sets[0].spans(), &[(0.25, 0.5)]);
    }

    #[test]
    fn ball_missing_the_range_is_rejected() {
        let spec = identity_symbol();
        assert!(matches!(
            partition_preimage(&spec, (2.0, 3.0), 2),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn shrinking_past_the_range_exhausts() {
        // phi = x on [0, 1/2): the ball reaches into the range but its
        // center 0.6 is never approached, so annuli die out
        let spec = MultOpSpec::single((0.0, 0.5), &[0.0, 1.0]).unwrap();
        assert!(matches!(
            partition_preimage(&spec, (0.4, 0.8), 8),
            Err(Error::PartitionExhausted { .. })
        ));
    }

    #[test]
    fn dyadic_edge_blocks_average_to_one_half() {
        let spec = identity_symbol();
        let parts = dyadic_edge_partition(20).unwrap();
        let blocks = block_eigenvalues(&spec, &parts).unwrap();
        for eta in &blocks.eigenvalues {
            assert!((eta - 0.5).abs() <= 1e-14, "eta = {eta}");
        }
        // normalization: coefficient^2 * measure = 1
        for ((_, c), m) in blocks.functions.iter().zip(&parts.measures) {
            assert!((c * c * m - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn whole_interval_average_of_identity() {
        let spec = identity_symbol();
        let parts = PartitionScheme::new(vec![IntervalSet::interval(0.0, 1.0)]).unwrap();
        let blocks = block_eigenvalues(&spec, &parts).unwrap();
        assert!((blocks.eigenvalues[0] - 0.5).abs() <= f64::EPSILON);
    }

    #[test]
    fn whole_interval_average_of_square() {
        let spec = square_symbol();
        let parts = PartitionScheme::new(vec![IntervalSet::interval(0.0, 1.0)]).unwrap();
        let blocks = block_eigenvalues(&spec, &parts).unwrap();
        assert!((blocks.eigenvalues[0] - 1.0 / 3.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn dyadic_edge_certificate_at_one_half() {
        let spec = identity_symbol();
        let parts = dyadic_edge_partition(20).unwrap();
        let blocks = block_eigenvalues(&spec, &parts).unwrap();
        let functions: Vec<BlockFunction<f64>> =
            (0..blocks.len()).map(|i| blocks.block_function(i)).collect();
        let cert = verify_block_tight(&spec, &functions, 0.5, 1e-12).unwrap();
        assert!(cert.pass);
        assert!(cert.max_cross_term == 0.0);
    }

    #[test]
    fn two_stage_identity_symbol() {
        let spec = identity_symbol();
        let result = tighten_multop(&spec, 16, 1e-10).unwrap();
        assert!(result.alpha > 0.25 && result.alpha < 0.75);
        assert!(result.certificate.pass);
        assert_eq!(result.plan.rank(), 16);
        assert!(result.certificate.max_cross_term <= 1e-14);
        // with zero cross contamination the certificate's diagonal residual
        // is the pairing plan's level residual
        let plan_residual = result.plan.max_level_residual(&result.stage1.eigenvalues);
        assert!((result.certificate.max_diagonal_residual - plan_residual).abs() <= 1e-13);
    }

    #[test]
    fn two_stage_square_symbol() {
        let spec = square_symbol();
        let result = tighten_multop(&spec, 8, 1e-10).unwrap();
        assert!(result.certificate.pass);
        assert!(result.certificate.max_diagonal_residual <= 1e-10);
    }

    #[test]
    fn stage1_eigenvalues_stay_in_their_balls() {
        let spec = identity_symbol();
        let (_, _, bx, by) = essential_range_pair(&spec).unwrap();
        let result = tighten_multop(&spec, 8, 1e-10).unwrap();
        for &eta in &result.stage1.eigenvalues {
            let in_low = eta >= bx.0 && eta <= bx.1;
            let in_high = eta >= by.0 && eta <= by.1;
            assert!(in_low || in_high, "eta = {eta} escapes both balls");
        }
    }

    #[test]
    fn gram_matrix_of_block_system_is_identity() {
        let spec = square_symbol();
        let parts = partition_preimage(&spec, (0.75, 1.25), 6).unwrap();
        let blocks = block_eigenvalues(&spec, &parts).unwrap();
        assert!(blocks.gram_defect() <= 1e-12);
    }

    #[test]
    fn eta_containment_in_symbol_hull() {
        let spec = square_symbol();
        let parts = partition_preimage(&spec, (-0.25, 0.25), 5).unwrap();
        let blocks = block_eigenvalues(&spec, &parts).unwrap();
        for (i, set) in parts.sets.iter().enumerate() {
            let (lo, hi) = spec.hull_over(set);
            let eta = blocks.eigenvalues[i];
            assert!(eta >= lo - 1e-15 && eta <= hi + 1e-15);
        }
    }

    #[test]
    fn overlapping_domain_pieces_rejected() {
        let spec = MultOpSpec {
            domain: (0.0, 1.0),
            pieces: vec![
                Piece {
                    end: 0.7,
                    coeffs: vec![0.0, 1.0],
                },
                Piece {
                    end: 0.5,
                    coeffs: vec![0.0, 2.0],
                },
            ],
        };
        assert!(matches!(spec.validate(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn over_degree_symbol_rejected() {
        let spec = MultOpSpec {
            domain: (0.0, 1.0),
            pieces: vec![Piece {
                end: 1.0,
                coeffs: vec![0.0; 10], // degree 9
            }],
        };
        assert!(matches!(spec.validate(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn negative_symbol_rejected() {
        let spec = MultOpSpec {
            domain: (0.0, 1.0),
            pieces: vec![Piece {
                end: 1.0,
                coeffs: vec![-0.5, 1.0],
            }],
        };
        assert!(matches!(spec.validate(), Err(Error::InvalidInput(_))));
    }
}
