//! Univariate real polynomials: evaluation, derivatives, root isolation on
//! an interval, and exact integration.
//!
//! Root isolation works by recursion on the derivative: critical points cut
//! the interval into monotone segments, and each segment holds at most one
//! sign change, pinned down by bisection. No tolerance knobs; bisection runs
//! to floating-point exhaustion, so results are deterministic.
//!
//! Integration uses the midpoint form: shifting the polynomial to the
//! interval midpoint and integrating the even powers of the half-width
//! avoids the catastrophic cancellation of evaluating an antiderivative at
//! two nearby endpoints. Thin intervals near 1 (the dyadic partitions used
//! by the block systems) would otherwise lose half their digits.

use crate::scalar::{scalar, Scalar};

/// Polynomial with ascending coefficients `c0 + c1 x + c2 x^2 + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds from ascending coefficients; trailing zeros are trimmed.
    pub fn new(coeffs: &[T]) -> Self {
        let mut c = coeffs.to_vec();
        while c.len() > 1 && *c.last().unwrap() == T::zero() {
            c.pop();
        }
        if c.is_empty() {
            c.push(T::zero());
        }
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        let mut acc = T::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly<T> {
        if self.is_constant() {
            return Poly::new(&[T::zero()]);
        }
        let d: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * T::from_usize(k).unwrap())
            .collect();
        Poly::new(&d)
    }

    /// Taylor coefficients of `p(m + t)` in `t`, by repeated synthetic
    /// division.
    fn shifted_coeffs(&self, m: T) -> Vec<T> {
        let n = self.degree();
        // descending order work array
        let mut work: Vec<T> = self.coeffs.iter().rev().copied().collect();
        let mut out = vec![T::zero(); n + 1];
        for k in 0..=n {
            for i in 1..=n - k {
                let prev = work[i - 1];
                work[i] += m * prev;
            }
            out[k] = work[n - k];
        }
        out
    }

    /// Exact integral over `[lo, hi)` (the endpoint does not matter for the
    /// Lebesgue integral). Midpoint form: with `m` the midpoint and `h` the
    /// half-width, only even shifted powers contribute.
    pub fn integrate_on(&self, lo: T, hi: T) -> T {
        if !(hi > lo) {
            return T::zero();
        }
        let two = scalar::<T>(2.0);
        let m = (lo + hi) / two;
        let h = (hi - lo) / two;
        let q = self.shifted_coeffs(m);
        let h2 = h * h;
        let mut power = T::one(); // h^j for even j
        let mut sum = T::zero();
        let mut j = 0usize;
        while j < q.len() {
            sum += q[j] * power / T::from_usize(j + 1).unwrap();
            power *= h2;
            j += 2;
        }
        two * h * sum
    }

    /// Minimum and maximum of the polynomial over the closed interval,
    /// via endpoint and critical-point evaluation.
    pub fn extrema_on(&self, lo: T, hi: T) -> (T, T) {
        let mut min_v = self.eval(lo).min(self.eval(hi));
        let mut max_v = self.eval(lo).max(self.eval(hi));
        for c in self.derivative().roots_in(lo, hi, T::zero()) {
            let v = self.eval(c);
            min_v = min_v.min(v);
            max_v = max_v.max(v);
        }
        (min_v, max_v)
    }

    /// All solutions of `p(x) = level` in the closed interval `[lo, hi]`,
    /// sorted ascending. Tangential solutions are found only when a critical
    /// point lands on the level exactly; for measure computations this is
    /// immaterial.
    pub fn roots_in(&self, lo: T, hi: T, level: T) -> Vec<T> {
        if !(hi >= lo) {
            return Vec::new();
        }
        if self.is_constant() {
            return Vec::new();
        }
        if self.degree() == 1 {
            let root = (level - self.coeffs[0]) / self.coeffs[1];
            if root >= lo && root <= hi {
                return vec![root];
            }
            return Vec::new();
        }

        let mut cuts = self.derivative().roots_in(lo, hi, T::zero());
        cuts.insert(0, lo);
        cuts.push(hi);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| *a == *b);

        let mut roots = Vec::new();
        for w in cuts.windows(2) {
            let (u, v) = (w[0], w[1]);
            let fu = self.eval(u) - level;
            let fv = self.eval(v) - level;
            if fu == T::zero() {
                roots.push(u);
            }
            if fu * fv < T::zero() {
                roots.push(self.bisect(u, v, level));
            }
        }
        let last = *cuts.last().unwrap();
        if self.eval(last) - level == T::zero() {
            roots.push(last);
        }
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        roots.dedup_by(|a, b| *a == *b);
        roots
    }

    /// Bisection on a monotone segment with a strict sign change.
    fn bisect(&self, mut lo: T, mut hi: T, level: T) -> T {
        let two = scalar::<T>(2.0);
        let mut flo = self.eval(lo) - level;
        for _ in 0..200 {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi {
                break; // interval exhausted at this precision
            }
            let fmid = self.eval(mid) - level;
            if fmid == T::zero() {
                return mid;
            }
            if flo * fmid < T::zero() {
                hi = mid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        (lo + hi) / two
    }
}
