//! Projectability classifier for modeled infinite-dimensional operators.
//!
//! An infinite positive diagonal operator is represented by a declared
//! eigenvalue-sequence family together with its limit points and per-point
//! side counts (how many terms sit strictly below / at-or-above the point:
//! finitely or infinitely many). Limit points are declared metadata, checked
//! against a numeric truncation but never inferred from it: detecting limit
//! points of a black-box sequence is not decidable, while the families here
//! carry exact closed forms.
//!
//! The decision implemented: the operator admits a projection `P` onto an
//! infinite-dimensional subspace with `P E P = alpha P`, `alpha > 0`, exactly
//! when it is not a translate of a compact operator whose positive or
//! negative part has finite-dimensional kernel. Concretely:
//!
//! - a level with infinite multiplicity gives an eigenspace projection;
//! - two limit points give a level strictly between them;
//! - one limit point with infinitely many terms on both sides is itself a
//!   usable level;
//! - one limit point approached from a single side is the obstruction class:
//!   no projection exists (the verdict encodes the known obstruction, it
//!   does not re-derive it);
//! - a sequence vanishing at its only limit point 0 is a compact operator,
//!   outside the hypotheses entirely.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairing::{convex_pair_weights, PairEntry, PairingPlan};
use crate::scalar::{scalar, Scalar};

/// Truncation length used to cross-check declarations.
pub const VALIDATION_TRUNCATION: usize = 10_000;

/// A declared point must have at least this many truncated terms nearby.
const MIN_NEAR_TERMS: usize = 100;

/// "Nearby" radius for the declared-point check.
const NEAR_RADIUS: f64 = 1e-3;

/// Radius around declared points excluded from undeclared-cluster scanning.
const CLUSTER_REMOVAL_RADIUS: f64 = 5e-2;

/// A window of this many sorted leftover terms inside `CLUSTER_SPAN` flags an
/// undeclared cluster.
const CLUSTER_WINDOW: usize = 100;
const CLUSTER_SPAN: f64 = 2e-3;

/// Relative tolerance for "this eigenvalue sits exactly at the level".
const LEVEL_TOL: f64 = 1e-12;

/// Whether a declared side count is finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountDecl {
    #[serde(rename = "finite")]
    Finite,
    #[serde(rename = "infinite")]
    Infinite,
}

/// A declared limit point with its approach data: the number of sequence
/// terms strictly below the point and at-or-above it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitPointDecl<T> {
    pub value: T,
    pub below: CountDecl,
    pub at_or_above: CountDecl,
}

/// Closed-form eigenvalue-sequence families (1-based index `n`).
///
/// `CompactDecay` carries an optional `shift` so translates of compact
/// sequences stay representable; with the default shift 0 it is the plain
/// geometric decay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params")]
#[serde(bound(deserialize = "T: serde::Deserialize<'de> + Default"))]
pub enum SpectrumFamily<T> {
    /// Finite head followed by a constant tail of infinite multiplicity.
    ExplicitTail { head: Vec<T>, tail: T },
    /// `beta - c / n^p`; approaches `beta` from one side.
    HarmonicShift { beta: T, c: T, p: T },
    /// `beta + (-1)^n c / n^p`; approaches `beta` from both sides.
    Alternating { beta: T, c: T, p: T },
    /// Interleaved `beta1 + c1/k` (even n = 2k) and `beta2 - c2/k`
    /// (odd n = 2k-1), with `beta1 < beta2`.
    TwoCluster { beta1: T, c1: T, beta2: T, c2: T },
    /// `shift + c r^n` with `0 < r < 1`.
    CompactDecay {
        c: T,
        r: T,
        #[serde(default)]
        shift: T,
    },
}

/// A declared spectrum model: the family plus its limit-point declarations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: serde::Deserialize<'de> + Default"))]
pub struct SpectrumModel<T> {
    #[serde(flatten)]
    pub family: SpectrumFamily<T>,
    pub limit_points: Vec<LimitPointDecl<T>>,
}

impl<T: Scalar> SpectrumModel<T> {
    /// Builds a model with the family's analytically known limit points and
    /// side counts, then validates it.
    pub fn from_family(family: SpectrumFamily<T>) -> Result<Self> {
        let limit_points = canonical_limit_points(&family);
        let model = SpectrumModel {
            family,
            limit_points,
        };
        model.validate()?;
        Ok(model)
    }

    /// Term `lambda_n`, 1-based.
    pub fn eval(&self, n: usize) -> T {
        debug_assert!(n >= 1);
        match &self.family {
            SpectrumFamily::ExplicitTail { head, tail } => {
                if n <= head.len() {
                    head[n - 1]
                } else {
                    *tail
                }
            }
            SpectrumFamily::HarmonicShift { beta, c, p } => {
                *beta - *c / T::from_usize(n).unwrap().powf(*p)
            }
            SpectrumFamily::Alternating { beta, c, p } => {
                let sign = if n.is_multiple_of(2) { T::one() } else { -T::one() };
                *beta + sign * *c / T::from_usize(n).unwrap().powf(*p)
            }
            SpectrumFamily::TwoCluster {
                beta1,
                c1,
                beta2,
                c2,
            } => {
                if n.is_multiple_of(2) {
                    let k = T::from_usize(n / 2).unwrap();
                    *beta1 + *c1 / k
                } else {
                    let k = T::from_usize(n.div_ceil(2)).unwrap();
                    *beta2 - *c2 / k
                }
            }
            SpectrumFamily::CompactDecay { c, r, shift } => *shift + *c * r.powi(n as i32),
        }
    }

    /// First `n` terms.
    pub fn truncate(&self, n: usize) -> Vec<T> {
        (1..=n).map(|k| self.eval(k)).collect()
    }

    /// Full declaration check: family parameters, nonnegativity on the
    /// truncation, and limit-point consistency (every declared point has
    /// enough nearby terms; no undeclared cluster survives the gap scan).
    /// Any failure is a hard model error.
    pub fn validate(&self) -> Result<()> {
        self.validate_family_params()?;
        if self.limit_points.is_empty() {
            return Err(Error::Model(
                "at least one limit point must be declared".into(),
            ));
        }
        let mut values: Vec<T> = self.limit_points.iter().map(|lp| lp.value).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Model("limit point value is not finite".into()));
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_gap = scalar::<T>(2.0 * NEAR_RADIUS);
        if values.windows(2).any(|w| w[1] - w[0] <= min_gap) {
            return Err(Error::Model(format!(
                "declared limit points closer than {}: indistinguishable at the validation resolution",
                2.0 * NEAR_RADIUS
            )));
        }

        let sample = self.truncate(VALIDATION_TRUNCATION);
        if sample.iter().any(|v| !v.is_finite()) {
            return Err(Error::Model("sequence produced a non-finite term".into()));
        }
        if sample.iter().any(|&v| v < T::zero()) {
            return Err(Error::Model(
                "sequence is not nonnegative on the validation truncation".into(),
            ));
        }

        let near = scalar::<T>(NEAR_RADIUS);
        for lp in &self.limit_points {
            let count = sample
                .iter()
                .filter(|&&v| (v - lp.value).abs() <= near)
                .count();
            if count < MIN_NEAR_TERMS {
                return Err(Error::Model(format!(
                    "declared limit point {} has only {count} truncated terms within {NEAR_RADIUS}; need {MIN_NEAR_TERMS}",
                    lp.value
                )));
            }
        }

        // gap-based scan for clusters nobody declared
        let removal = scalar::<T>(CLUSTER_REMOVAL_RADIUS);
        let mut leftover: Vec<T> = sample
            .iter()
            .copied()
            .filter(|&v| {
                self.limit_points
                    .iter()
                    .all(|lp| (v - lp.value).abs() > removal)
            })
            .collect();
        leftover.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let span = scalar::<T>(CLUSTER_SPAN);
        for w in leftover.windows(CLUSTER_WINDOW) {
            if w[CLUSTER_WINDOW - 1] - w[0] <= span {
                return Err(Error::Model(format!(
                    "undeclared cluster near {}: {CLUSTER_WINDOW} terms within a span of {CLUSTER_SPAN}",
                    w[0]
                )));
            }
        }
        Ok(())
    }

    fn validate_family_params(&self) -> Result<()> {
        fn finite<T: Scalar>(v: T, name: &str) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::Model(format!("parameter {name} is not finite")))
            }
        }
        match &self.family {
            SpectrumFamily::ExplicitTail { head, tail } => {
                finite(*tail, "tail")?;
                if head.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Model("head entry is not finite".into()));
                }
            }
            SpectrumFamily::HarmonicShift { beta, c, p }
            | SpectrumFamily::Alternating { beta, c, p } => {
                finite(*beta, "beta")?;
                finite(*c, "c")?;
                finite(*p, "p")?;
                if *c == T::zero() {
                    return Err(Error::Model(
                        "c must be nonzero; a constant sequence is an ExplicitTail".into(),
                    ));
                }
                if !(*p > T::zero()) {
                    return Err(Error::Model("exponent p must be positive".into()));
                }
            }
            SpectrumFamily::TwoCluster {
                beta1,
                c1,
                beta2,
                c2,
            } => {
                finite(*beta1, "beta1")?;
                finite(*c1, "c1")?;
                finite(*beta2, "beta2")?;
                finite(*c2, "c2")?;
                if !(*beta1 < *beta2) {
                    return Err(Error::Model("TwoCluster requires beta1 < beta2".into()));
                }
                if !(*c1 > T::zero() && *c2 > T::zero()) {
                    return Err(Error::Model(
                        "TwoCluster rates c1, c2 must be positive".into(),
                    ));
                }
            }
            SpectrumFamily::CompactDecay { c, r, shift } => {
                finite(*c, "c")?;
                finite(*r, "r")?;
                finite(*shift, "shift")?;
                if !(*r > T::zero() && *r < T::one()) {
                    return Err(Error::Model("CompactDecay requires 0 < r < 1".into()));
                }
                if *c == T::zero() {
                    return Err(Error::Model(
                        "c must be nonzero; a constant sequence is an ExplicitTail".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The model of `E + delta`: every term and every limit point shifted.
    pub fn translate(&self, delta: T) -> SpectrumModel<T> {
        let family = match self.family.clone() {
            SpectrumFamily::ExplicitTail { head, tail } => SpectrumFamily::ExplicitTail {
                head: head.into_iter().map(|v| v + delta).collect(),
                tail: tail + delta,
            },
            SpectrumFamily::HarmonicShift { beta, c, p } => SpectrumFamily::HarmonicShift {
                beta: beta + delta,
                c,
                p,
            },
            SpectrumFamily::Alternating { beta, c, p } => SpectrumFamily::Alternating {
                beta: beta + delta,
                c,
                p,
            },
            SpectrumFamily::TwoCluster {
                beta1,
                c1,
                beta2,
                c2,
            } => SpectrumFamily::TwoCluster {
                beta1: beta1 + delta,
                c1,
                beta2: beta2 + delta,
                c2,
            },
            SpectrumFamily::CompactDecay { c, r, shift } => SpectrumFamily::CompactDecay {
                c,
                r,
                shift: shift + delta,
            },
        };
        SpectrumModel {
            family,
            limit_points: self
                .limit_points
                .iter()
                .map(|lp| LimitPointDecl {
                    value: lp.value + delta,
                    below: lp.below,
                    at_or_above: lp.at_or_above,
                })
                .collect(),
        }
    }

    /// The model of `c E` for `c > 0`: every term and limit point scaled.
    pub fn scale(&self, factor: T) -> Result<SpectrumModel<T>> {
        if !(factor > T::zero()) {
            return Err(Error::InvalidInput(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        let family = match self.family.clone() {
            SpectrumFamily::ExplicitTail { head, tail } => SpectrumFamily::ExplicitTail {
                head: head.into_iter().map(|v| v * factor).collect(),
                tail: tail * factor,
            },
            SpectrumFamily::HarmonicShift { beta, c, p } => SpectrumFamily::HarmonicShift {
                beta: beta * factor,
                c: c * factor,
                p,
            },
            SpectrumFamily::Alternating { beta, c, p } => SpectrumFamily::Alternating {
                beta: beta * factor,
                c: c * factor,
                p,
            },
            SpectrumFamily::TwoCluster {
                beta1,
                c1,
                beta2,
                c2,
            } => SpectrumFamily::TwoCluster {
                beta1: beta1 * factor,
                c1: c1 * factor,
                beta2: beta2 * factor,
                c2: c2 * factor,
            },
            SpectrumFamily::CompactDecay { c, r, shift } => SpectrumFamily::CompactDecay {
                c: c * factor,
                r,
                shift: shift * factor,
            },
        };
        Ok(SpectrumModel {
            family,
            limit_points: self
                .limit_points
                .iter()
                .map(|lp| LimitPointDecl {
                    value: lp.value * factor,
                    below: lp.below,
                    at_or_above: lp.at_or_above,
                })
                .collect(),
        })
    }

    /// True when the modeled sequence takes the value `level` infinitely
    /// often (only the constant tail can).
    fn infinite_multiplicity_at(&self, level: T) -> bool {
        match &self.family {
            SpectrumFamily::ExplicitTail { tail, .. } => {
                (*tail - level).abs() <= scalar::<T>(LEVEL_TOL) * (T::one() + level.abs())
            }
            _ => false,
        }
    }
}

/// Analytically known limit points and side counts for a family.
fn canonical_limit_points<T: Scalar>(family: &SpectrumFamily<T>) -> Vec<LimitPointDecl<T>> {
    let one_sided = |value: T, from_below: bool| LimitPointDecl {
        value,
        below: if from_below {
            CountDecl::Infinite
        } else {
            CountDecl::Finite
        },
        at_or_above: if from_below {
            CountDecl::Finite
        } else {
            CountDecl::Infinite
        },
    };
    match family {
        SpectrumFamily::ExplicitTail { tail, .. } => vec![LimitPointDecl {
            value: *tail,
            below: CountDecl::Finite,
            at_or_above: CountDecl::Infinite,
        }],
        SpectrumFamily::HarmonicShift { beta, c, .. } => vec![one_sided(*beta, *c > T::zero())],
        SpectrumFamily::Alternating { beta, .. } => vec![LimitPointDecl {
            value: *beta,
            below: CountDecl::Infinite,
            at_or_above: CountDecl::Infinite,
        }],
        SpectrumFamily::TwoCluster { beta1, beta2, .. } => vec![
            LimitPointDecl {
                value: *beta1,
                below: CountDecl::Finite,
                at_or_above: CountDecl::Infinite,
            },
            LimitPointDecl {
                value: *beta2,
                below: CountDecl::Infinite,
                at_or_above: CountDecl::Finite,
            },
        ],
        SpectrumFamily::CompactDecay { c, shift, .. } => {
            vec![one_sided(*shift, *c < T::zero())]
        }
    }
}

/// Classification verdicts. The serialized names are part of the JSON
/// interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Some level has infinite multiplicity; project onto its eigenspace.
    ProjectableEigenspace,
    /// Two limit points; any level strictly between them works.
    ProjectableTwoLimitPoints,
    /// One limit point, approached from both sides; the point itself works.
    ProjectableOneLimitPoint,
    /// Translate of a compact operator with one-sided spectrum near the
    /// translate level: no infinite-dimensional tight projection exists.
    #[serde(rename = "NotProjectable_FK")]
    NotProjectableFk,
    /// The operator itself is compact, outside the dichotomy's hypotheses.
    #[serde(rename = "NotApplicable_Compact")]
    NotApplicableCompact,
}

impl Verdict {
    pub fn is_projectable(self) -> bool {
        matches!(
            self,
            Verdict::ProjectableEigenspace
                | Verdict::ProjectableTwoLimitPoints
                | Verdict::ProjectableOneLimitPoint
        )
    }
}

/// Human-readable justification attached to a verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness<T> {
    pub limit_points: Vec<LimitPointDecl<T>>,
    /// The `beta` of `E = beta + K` for the obstructed case.
    pub translate_beta: Option<T>,
    pub detail: String,
}

/// Verdict plus level plus justification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Classification<T> {
    pub verdict: Verdict,
    /// Present exactly for projectable verdicts; always positive.
    pub alpha: Option<T>,
    pub witness: Witness<T>,
}

/// Decides projectability for a validated model.
pub fn classify<T: Scalar>(model: &SpectrumModel<T>) -> Result<Classification<T>> {
    model.validate()?;
    let witness_points = model.limit_points.clone();

    // Infinite multiplicity first: the eigenspace branch.
    if let SpectrumFamily::ExplicitTail { tail, .. } = &model.family {
        if *tail > T::zero() {
            return Ok(Classification {
                verdict: Verdict::ProjectableEigenspace,
                alpha: Some(*tail),
                witness: Witness {
                    limit_points: witness_points,
                    translate_beta: None,
                    detail: format!(
                        "level {tail} has infinite multiplicity; project onto its eigenspace"
                    ),
                },
            });
        }
        return Ok(Classification {
            verdict: Verdict::NotApplicableCompact,
            alpha: None,
            witness: Witness {
                limit_points: witness_points,
                translate_beta: None,
                detail: "constant tail 0: the operator has finite rank and is compact".into(),
            },
        });
    }

    let mut points = model.limit_points.clone();
    points.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());

    if points.len() >= 2 {
        let (x, y) = (points[0].value, points[1].value);
        let alpha = (x + y) / scalar(2.0);
        return Ok(Classification {
            verdict: Verdict::ProjectableTwoLimitPoints,
            alpha: Some(alpha),
            witness: Witness {
                limit_points: witness_points,
                translate_beta: None,
                detail: format!(
                    "limit points {x} < {y}: any level between them has infinitely many terms on each side; midpoint {alpha} chosen"
                ),
            },
        });
    }

    let point = &points[0];
    let x = point.value;
    if !(x > T::zero()) {
        return Ok(Classification {
            verdict: Verdict::NotApplicableCompact,
            alpha: None,
            witness: Witness {
                limit_points: witness_points,
                translate_beta: None,
                detail: "single limit point 0: the sequence vanishes, so the operator is compact"
                    .into(),
            },
        });
    }

    if point.below == CountDecl::Infinite && point.at_or_above == CountDecl::Infinite {
        return Ok(Classification {
            verdict: Verdict::ProjectableOneLimitPoint,
            alpha: Some(x),
            witness: Witness {
                limit_points: witness_points,
                translate_beta: None,
                detail: format!(
                    "single limit point {x} approached from both sides: K = E - {x} has infinitely many eigenvalues of each sign and escapes the obstruction class"
                ),
            },
        });
    }

    let finite_side = if point.at_or_above == CountDecl::Finite {
        "nonnegative"
    } else {
        "nonpositive"
    };
    Ok(Classification {
        verdict: Verdict::NotProjectableFk,
        alpha: None,
        witness: Witness {
            limit_points: witness_points,
            translate_beta: Some(x),
            detail: format!(
                "E = {x} + K with K = E - {x} compact and only finitely many {finite_side} eigenvalues: one signed part has a finite-dimensional kernel, so no infinite-dimensional tight projection exists"
            ),
        },
    })
}

/// The level recorded by a projectable classification.
pub fn find_alpha_infinite<T: Scalar>(model: &SpectrumModel<T>) -> Result<T> {
    let classification = classify(model)?;
    classification.alpha.ok_or_else(|| {
        Error::Contract(format!(
            "find_alpha_infinite called on a non-projectable model (verdict {:?})",
            classification.verdict
        ))
    })
}

/// Rank, surplus, and worst level deviation of a truncated plan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruncationReport<T> {
    pub rank: usize,
    pub surplus: usize,
    pub max_diagonal_residual: T,
}

/// Builds a constructive plan for the first `n` terms of a projectable model.
///
/// This follows the order-preserving subsequence pairing: terms `< alpha`
/// and `>= alpha` are collected in order and matched first-to-first, so plan
/// prefixes are stable as `n` grows (unlike the finite symmetric pairing).
/// Unpairable surplus terms are dropped and reported. Models whose level has
/// infinite multiplicity skip pairing entirely: every term at the level
/// becomes a singleton.
pub fn truncated_plan<T: Scalar>(
    model: &SpectrumModel<T>,
    n: usize,
) -> Result<(PairingPlan<T>, TruncationReport<T>)> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "truncation length must be at least 2, got {n}"
        )));
    }
    let classification = classify(model)?;
    let alpha = classification.alpha.ok_or_else(|| {
        Error::Contract(format!(
            "truncated_plan called on a non-projectable model (verdict {:?})",
            classification.verdict
        ))
    })?;

    let lambda = model.truncate(n);
    let entries: Vec<PairEntry<T>> = if classification.verdict == Verdict::ProjectableEigenspace {
        let tol = scalar::<T>(LEVEL_TOL) * (T::one() + alpha.abs());
        let singletons: Vec<PairEntry<T>> = (0..n)
            .filter(|&i| (lambda[i] - alpha).abs() <= tol)
            .map(|i| PairEntry::Singleton { index: i })
            .collect();
        if singletons.is_empty() {
            return Err(Error::InsufficientTruncation(format!(
                "no terms at the infinite-multiplicity level {alpha} within the first {n}"
            )));
        }
        singletons
    } else {
        let below: Vec<usize> = (0..n).filter(|&i| lambda[i] < alpha).collect();
        let above: Vec<usize> = (0..n).filter(|&i| lambda[i] >= alpha).collect();
        let pairs = below.len().min(above.len());
        if pairs == 0 {
            return Err(Error::InsufficientTruncation(format!(
                "only one side of alpha = {alpha} is populated in the first {n} terms ({} below, {} at or above)",
                below.len(),
                above.len()
            )));
        }
        (0..pairs)
            .map(|j| {
                let (low, high) = (below[j], above[j]);
                let (weight_low, weight_high) =
                    convex_pair_weights(lambda[low], lambda[high], alpha)
                        .expect("below < alpha <= above admits convex weights");
                PairEntry::Pair {
                    low,
                    high,
                    weight_low,
                    weight_high,
                }
            })
            .collect()
    };

    let plan = PairingPlan::new(alpha, entries, &lambda)?;
    let report = TruncationReport {
        rank: plan.rank(),
        surplus: n - plan.consumed_indices().len(),
        max_diagonal_residual: plan.max_level_residual(&lambda),
    };
    Ok((plan, report))
}

/// Membership in the obstruction class for the compact translate
/// `K = E - shift`: true exactly when finitely many eigenvalues of `K` are
/// nonnegative or finitely many are nonpositive. Requires `shift` to be the
/// model's single limit point (otherwise `K` is not compact).
pub fn fk_membership<T: Scalar>(shift: T, model: &SpectrumModel<T>) -> Result<bool> {
    model.validate()?;
    if model.limit_points.len() != 1 {
        return Err(Error::Contract(format!(
            "K = E - {shift} is compact only for a single limit point; model declares {}",
            model.limit_points.len()
        )));
    }
    let point = &model.limit_points[0];
    let tol = scalar::<T>(LEVEL_TOL) * (T::one() + shift.abs());
    if (point.value - shift).abs() > tol {
        return Err(Error::Contract(format!(
            "shift {shift} is not the model's limit point {}",
            point.value
        )));
    }
    // eigenvalues of K are lambda_n - shift
    let nonneg_finite = point.at_or_above == CountDecl::Finite;
    let ties_infinite = model.infinite_multiplicity_at(shift);
    let nonpos_finite = point.below == CountDecl::Finite && !ties_infinite;
    Ok(nonneg_finite || nonpos_finite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic_noproj() -> SpectrumModel<f64> {
        SpectrumModel::from_family(SpectrumFamily::HarmonicShift {
            beta: 2.0,
            c: 1.0,
            p: 1.0,
        })
        .unwrap()
    }

    fn two_cluster(beta1: f64, beta2: f64) -> SpectrumModel<f64> {
        SpectrumModel::from_family(SpectrumFamily::TwoCluster {
            beta1,
            c1: 0.25,
            beta2,
            c2: 0.25,
        })
        .unwrap()
    }

    fn alternating_around_one() -> SpectrumModel<f64> {
        SpectrumModel::from_family(SpectrumFamily::Alternating {
            beta: 1.0,
            c: 1.0,
            p: 1.0,
        })
        .unwrap()
    }

    #[test]
    fn harmonic_shift_is_obstructed_with_translate_witness() {
        let c = classify(&harmonic_noproj()).unwrap();
        assert_eq!(c.verdict, Verdict::NotProjectableFk);
        assert_eq!(c.alpha, None);
        assert_eq!(c.witness.translate_beta, Some(2.0));
    }

    #[test]
    fn two_cluster_projects_at_the_midpoint() {
        let c = classify(&two_cluster(1.0, 2.0)).unwrap();
        assert_eq!(c.verdict, Verdict::ProjectableTwoLimitPoints);
        assert_eq!(c.alpha, Some(1.5));
    }

    #[test]
    fn alternating_projects_at_its_limit_point() {
        let c = classify(&alternating_around_one()).unwrap();
        assert_eq!(c.verdict, Verdict::ProjectableOneLimitPoint);
        assert_eq!(c.alpha, Some(1.0));
    }

    #[test]
    fn compact_decay_is_outside_the_hypotheses() {
        let model = SpectrumModel::from_family(SpectrumFamily::CompactDecay {
            c: 1.0,
            r: 0.5,
            shift: 0.0,
        })
        .unwrap();
        let c = classify(&model).unwrap();
        assert_eq!(c.verdict, Verdict::NotApplicableCompact);
        assert_eq!(c.alpha, None);
    }

    #[test]
    fn constant_tail_gives_the_eigenspace_branch() {
        let model = SpectrumModel::from_family(SpectrumFamily::ExplicitTail {
            head: vec![1.0, 7.0],
            tail: 5.0,
        })
        .unwrap();
        let c = classify(&model).unwrap();
        assert_eq!(c.verdict, Verdict::ProjectableEigenspace);
        assert_eq!(c.alpha, Some(5.0));
        assert_eq!(find_alpha_infinite(&model).unwrap(), 5.0);
    }

    #[test]
    fn find_alpha_matches_the_classified_level() {
        assert_eq!(find_alpha_infinite(&two_cluster(1.0, 2.0)).unwrap(), 1.5);
        assert_eq!(find_alpha_infinite(&alternating_around_one()).unwrap(), 1.0);
    }

    #[test]
    fn find_alpha_rejects_obstructed_models() {
        assert!(matches!(
            find_alpha_infinite(&harmonic_noproj()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn tiny_truncations_are_rejected() {
        assert!(matches!(
            truncated_plan(&two_cluster(1.0, 2.0), 1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn negative_scale_factor_is_rejected() {
        assert!(matches!(
            alternating_around_one().scale(-2.0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn two_cluster_truncation_pairs_every_term() {
        let (plan, report) = truncated_plan(&two_cluster(1.0, 2.0), 8).unwrap();
        assert_eq!(report.rank, 4);
        assert_eq!(report.surplus, 0);
        assert!(report.max_diagonal_residual <= 1e-12 * 2.5);
        assert_eq!(plan.alpha(), 1.5);
    }

    #[test]
    fn alternating_truncation_has_parity_surplus() {
        // first 9 terms: 5 odd-index terms below 1, 4 even-index at or above
        let (_, report) = truncated_plan(&alternating_around_one(), 9).unwrap();
        assert_eq!(report.rank, 4);
        assert_eq!(report.surplus, 1);
    }

    #[test]
    fn truncated_plan_requires_projectability() {
        assert!(matches!(
            truncated_plan(&harmonic_noproj(), 16),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn tail_truncation_is_all_singletons() {
        let model = SpectrumModel::from_family(SpectrumFamily::ExplicitTail {
            head: vec![1.0, 7.0],
            tail: 5.0,
        })
        .unwrap();
        let (plan, report) = truncated_plan(&model, 10).unwrap();
        assert_eq!(report.rank, 8);
        assert_eq!(report.surplus, 2);
        assert_eq!(report.max_diagonal_residual, 0.0);
        assert!(plan
            .entries()
            .iter()
            .all(|e| matches!(e, PairEntry::Singleton { .. })));
    }

    #[test]
    fn fk_membership_of_the_harmonic_translate() {
        // K = E - 2 has eigenvalues -1/n: all negative, so the negative
        // part's kernel is trivial and K sits in the obstruction class.
        assert!(fk_membership(2.0, &harmonic_noproj()).unwrap());
    }

    #[test]
    fn fk_membership_false_for_two_sided_approach() {
        assert!(!fk_membership(1.0, &alternating_around_one()).unwrap());
    }

    #[test]
    fn fk_membership_true_for_single_signed_decay() {
        let model = SpectrumModel::from_family(SpectrumFamily::CompactDecay {
            c: 1.0,
            r: 0.5,
            shift: 0.0,
        })
        .unwrap();
        assert!(fk_membership(0.0, &model).unwrap());
    }

    #[test]
    fn fk_membership_requires_the_right_shift() {
        assert!(matches!(
            fk_membership(1.0, &harmonic_noproj()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn slow_approach_fails_declaration_validation() {
        // p = 0.3 leaves no truncated term within the validation radius of
        // the declared point: a hard model error, by design.
        let r = SpectrumModel::from_family(SpectrumFamily::HarmonicShift {
            beta: 2.0,
            c: 1.0,
            p: 0.3,
        });
        assert!(matches!(r, Err(Error::Model(_))));
    }

    #[test]
    fn undeclared_cluster_is_detected() {
        // declare only beta2: the cluster at beta1 = 1 must be flagged
        let model = SpectrumModel {
            family: SpectrumFamily::TwoCluster {
                beta1: 1.0,
                c1: 0.25,
                beta2: 2.0,
                c2: 0.25,
            },
            limit_points: vec![LimitPointDecl {
                value: 2.0,
                below: CountDecl::Infinite,
                at_or_above: CountDecl::Finite,
            }],
        };
        assert!(matches!(model.validate(), Err(Error::Model(_))));
    }

    #[test]
    fn negative_terms_fail_validation() {
        let r = SpectrumModel::from_family(SpectrumFamily::HarmonicShift {
            beta: 0.5,
            c: 1.0,
            p: 1.0,
        });
        assert!(matches!(r, Err(Error::Model(_))));
    }

    #[test]
    fn translate_shifts_verdict_level() {
        let c = classify(&two_cluster(1.0, 2.0).translate(0.7)).unwrap();
        assert_eq!(c.verdict, Verdict::ProjectableTwoLimitPoints);
        assert!((c.alpha.unwrap() - 2.2).abs() <= 1e-12);
    }

    #[test]
    fn scale_preserves_verdict_and_scales_level() {
        let c = classify(&alternating_around_one().scale(2.5).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::ProjectableOneLimitPoint);
        assert!((c.alpha.unwrap() - 2.5).abs() <= 1e-12);
    }

    #[test]
    fn translated_compact_decay_becomes_obstructed() {
        let base = SpectrumModel::from_family(SpectrumFamily::CompactDecay {
            c: 1.0,
            r: 0.5,
            shift: 0.0,
        })
        .unwrap();
        let shifted = base.translate(0.7);
        let c = classify(&shifted).unwrap();
        assert_eq!(c.verdict, Verdict::NotProjectableFk);
        assert_eq!(c.witness.translate_beta, Some(0.7));
        assert!(fk_membership(0.7, &shifted).unwrap());
    }
}
