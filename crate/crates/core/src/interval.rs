//! Finite unions of half-open intervals `[lo, hi)` with exact set algebra.
//!
//! Half-open conventions everywhere keep partitions exact: adjacent pieces
//! meet with no overlap and no gap, so measures add up without endpoint
//! bookkeeping.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Normalized finite union of half-open intervals: sorted, pairwise disjoint,
/// adjacent pieces merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet<T> {
    spans: Vec<(T, T)>,
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet { spans: Vec::new() }
    }

    /// Single interval `[lo, hi)`; empty if `hi <= lo`.
    pub fn interval(lo: T, hi: T) -> Self {
        Self::new(vec![(lo, hi)])
    }

    /// Normalizes an arbitrary list of spans.
    pub fn new(mut spans: Vec<(T, T)>) -> Self {
        spans.retain(|&(lo, hi)| hi > lo);
        spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(T, T)> = Vec::with_capacity(spans.len());
        for (lo, hi) in spans {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        IntervalSet { spans: merged }
    }

    pub fn spans(&self) -> &[(T, T)] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Total Lebesgue measure.
    pub fn measure(&self) -> T {
        self.spans
            .iter()
            .fold(T::zero(), |acc, &(lo, hi)| acc + (hi - lo))
    }

    pub fn contains(&self, x: T) -> bool {
        self.spans.iter().any(|&(lo, hi)| x >= lo && x < hi)
    }

    pub fn union(&self, other: &IntervalSet<T>) -> IntervalSet<T> {
        let mut spans = self.spans.clone();
        spans.extend_from_slice(&other.spans);
        IntervalSet::new(spans)
    }

    pub fn intersection(&self, other: &IntervalSet<T>) -> IntervalSet<T> {
        let mut out = Vec::new();
        for &(alo, ahi) in &self.spans {
            for &(blo, bhi) in &other.spans {
                let lo = alo.max(blo);
                let hi = ahi.min(bhi);
                if hi > lo {
                    out.push((lo, hi));
                }
            }
        }
        IntervalSet::new(out)
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &IntervalSet<T>) -> IntervalSet<T> {
        let mut out = Vec::new();
        for &(alo, ahi) in &self.spans {
            let mut cursor = alo;
            for &(blo, bhi) in &other.spans {
                if bhi <= cursor || blo >= ahi {
                    continue;
                }
                if blo > cursor {
                    out.push((cursor, blo.min(ahi)));
                }
                cursor = cursor.max(bhi);
                if cursor >= ahi {
                    break;
                }
            }
            if cursor < ahi {
                out.push((cursor, ahi));
            }
        }
        IntervalSet::new(out)
    }

    pub fn is_disjoint_from(&self, other: &IntervalSet<T>) -> bool {
        self.intersection(other).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_adjacent_spans() {
        let s = IntervalSet::new(vec![(0.0f64, 0.25), (0.25, 0.5), (0.75, 1.0)]);
        assert_eq!(s.spans(), &[(0.0, 0.5), (0.75, 1.0)]);
        assert!((s.measure() - 0.75).abs() <= 1e-15);
    }

    #[test]
    fn empty_spans_are_dropped() {
        let s = IntervalSet::<f64>::new(vec![(0.5, 0.5), (1.0, 0.0)]);
        assert!(s.is_empty());
        assert_eq!(s.measure(), 0.0);
    }

    #[test]
    fn difference_carves_out_the_middle() {
        let a = IntervalSet::<f64>::interval(0.0, 1.0);
        let b = IntervalSet::interval(0.25, 0.5);
        let d = a.difference(&b);
        assert_eq!(d.spans(), &[(0.0, 0.25), (0.5, 1.0)]);
    }

    #[test]
    fn intersection_and_disjointness() {
        let a = IntervalSet::<f64>::new(vec![(0.0, 0.5)]);
        let b = IntervalSet::new(vec![(0.5, 1.0)]);
        assert!(a.is_disjoint_from(&b)); // half-open: touching is disjoint
        let c = IntervalSet::new(vec![(0.4, 0.6)]);
        assert_eq!(a.intersection(&c).spans(), &[(0.4, 0.5)]);
    }

    #[test]
    fn half_open_membership() {
        let s = IntervalSet::<f64>::interval(0.0, 1.0);
        assert!(s.contains(0.0));
        assert!(!s.contains(1.0));
    }
}
