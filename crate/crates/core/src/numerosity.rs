//! Partial-count profiles and pairing-map audits over integer sets.
//!
//! Two measurement styles are implemented side by side. A pairing audit
//! follows an explicit map element by element and reports exactly who got
//! paired with whom up to a cutoff. A count profile instead counts members
//! below every N up to the cutoff; comparing two profiles yields a verdict
//! about how the counts relate on the evidence window: a stabilized
//! difference, a converging ratio, or nothing. Verdicts never extrapolate:
//! each one carries the window it was computed on, and ratio verdicts state
//! whether the relation is exact on a tail, exact only on a residue class of
//! N, or approximate within a stated bound.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest evidence window [`compare_profiles`] accepts.
pub const MIN_COMPARISON_WINDOW: u64 = 16;

/// A set of positive integers given by a closed-form membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SetExpr {
    /// All positive integers.
    Naturals,
    /// Positive integers congruent to `residue` modulo `modulus`.
    Residue { modulus: u64, residue: u64 },
    /// Perfect squares.
    Squares,
    /// An inner set with finitely many elements removed.
    Remove {
        inner: Box<SetExpr>,
        elements: BTreeSet<u64>,
    },
    /// An inner set with finitely many elements added.
    Add {
        inner: Box<SetExpr>,
        elements: BTreeSet<u64>,
    },
}

impl SetExpr {
    fn validate(&self) -> Result<()> {
        match self {
            SetExpr::Naturals | SetExpr::Squares => Ok(()),
            SetExpr::Residue { modulus, .. } => {
                if *modulus == 0 {
                    Err(Error::ZeroModulus)
                } else {
                    Ok(())
                }
            }
            SetExpr::Remove { inner, .. } | SetExpr::Add { inner, .. } => inner.validate(),
        }
    }

    fn member(&self, k: u64) -> bool {
        debug_assert!(k >= 1, "sets range over positive integers");
        match self {
            SetExpr::Naturals => true,
            SetExpr::Residue { modulus, residue } => k % modulus == residue % modulus,
            SetExpr::Squares => {
                let root = k.isqrt();
                root * root == k
            }
            SetExpr::Remove { inner, elements } => !elements.contains(&k) && inner.member(k),
            SetExpr::Add { inner, elements } => elements.contains(&k) || inner.member(k),
        }
    }
}

/// A named set with a total, pure membership test.
#[derive(Debug, Clone, Serialize)]
pub struct LabelledSet {
    name: String,
    expr: SetExpr,
}

impl LabelledSet {
    pub fn new(name: &str, expr: SetExpr) -> Result<Self> {
        expr.validate()?;
        Ok(LabelledSet {
            name: name.to_string(),
            expr,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn member(&self, k: u64) -> bool {
        self.expr.member(k)
    }
}

/// A closed-form arithmetic expression in one variable, evaluated exactly
/// over the positive integers. Evaluation is partial: subtraction below 1,
/// inexact division, and overflow all yield no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapExpr {
    /// The input element itself.
    Value,
    Constant(u64),
    Add(Box<MapExpr>, Box<MapExpr>),
    Sub(Box<MapExpr>, Box<MapExpr>),
    Mul(Box<MapExpr>, Box<MapExpr>),
    Div(Box<MapExpr>, Box<MapExpr>),
}

impl MapExpr {
    pub fn eval(&self, n: u64) -> Option<u64> {
        let value = match self {
            MapExpr::Value => n,
            MapExpr::Constant(c) => *c,
            MapExpr::Add(a, b) => a.eval(n)?.checked_add(b.eval(n)?)?,
            MapExpr::Sub(a, b) => a.eval(n)?.checked_sub(b.eval(n)?)?,
            MapExpr::Mul(a, b) => a.eval(n)?.checked_mul(b.eval(n)?)?,
            MapExpr::Div(a, b) => {
                let (num, den) = (a.eval(n)?, b.eval(n)?);
                if den == 0 || num % den != 0 {
                    return None;
                }
                num / den
            }
        };
        (value >= 1).then_some(value)
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Value => write!(f, "n"),
            MapExpr::Constant(c) => write!(f, "{c}"),
            MapExpr::Add(a, b) => write!(f, "({a} + {b})"),
            MapExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            MapExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            MapExpr::Div(a, b) => write!(f, "({a} / {b})"),
        }
    }
}

impl Serialize for MapExpr {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// A named element-to-element map given in closed form.
#[derive(Debug, Clone, Serialize)]
pub struct PairingMap {
    pub name: String,
    pub forward: MapExpr,
}

/// Exact member counts c(N) for N = 1 ..= n_max.
#[derive(Debug, Clone, Serialize)]
pub struct PartialCountProfile {
    pub set_name: String,
    pub n_max: u64,
    /// counts[N - 1] = number of members at or below N.
    pub counts: Vec<u64>,
}

impl PartialCountProfile {
    pub fn count_at(&self, n: u64) -> u64 {
        debug_assert!(n >= 1 && n <= self.n_max);
        self.counts[(n - 1) as usize]
    }
}

/// Counts `set`'s members at or below every N up to `n_max`.
pub fn partial_counts(set: &LabelledSet, n_max: u64) -> Result<PartialCountProfile> {
    if n_max == 0 {
        return Err(Error::EmptyCountWindow);
    }
    let mut counts = Vec::with_capacity(n_max as usize);
    let mut running = 0u64;
    for k in 1..=n_max {
        running += u64::from(set.member(k));
        counts.push(running);
    }
    Ok(PartialCountProfile {
        set_name: set.name().to_string(),
        n_max,
        counts,
    })
}

/// Exactness regime of a ratio verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RatioExactness {
    /// `c_left(N) * denominator == c_right(N) * numerator` for every N from
    /// `since` through the window end.
    ExactFrom { since: u64 },
    /// The relation holds within `max_abs_residual` on the window's second
    /// half, and exactly on the stated residue class of N when one exists.
    Asymptotic {
        max_abs_residual: u64,
        exact_on: Option<ResidueClass>,
    },
}

/// The class of N with `n % modulus == residue`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueClass {
    pub modulus: u64,
    pub residue: u64,
}

/// How two count profiles relate over their shared window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ComparisonVerdict {
    /// `c_left(N) - c_right(N) == difference` for every N from `since`
    /// through the window end.
    DifferenceStabilizes { difference: i64, since: u64 },
    /// `c_left(N) : c_right(N)` settles at numerator : denominator, in the
    /// stated exactness regime.
    RatioConverges {
        numerator: u64,
        denominator: u64,
        exactness: RatioExactness,
    },
    /// An audited pairing matches the sets perfectly even though their
    /// count profiles disagree; the equality claim rests on the pairing
    /// alone. Produced by [`overall_verdict`], never by profile comparison.
    BijectionEquinumerousOnly,
    /// Neither shape fit the window.
    Inconclusive,
}

/// A verdict together with the evidence window it quantifies over.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileComparison {
    pub left: String,
    pub right: String,
    pub n_max: u64,
    pub verdict: ComparisonVerdict,
}

/// Compares two profiles over the same window. A stabilized difference is
/// preferred; a ratio is reported only when a small fraction fits; both
/// require their tail to begin in the first half of the window, so half the
/// evidence always backs the verdict.
pub fn compare_profiles(
    left: &PartialCountProfile,
    right: &PartialCountProfile,
) -> Result<ProfileComparison> {
    if left.n_max != right.n_max {
        return Err(Error::WindowMismatch {
            left: left.n_max,
            right: right.n_max,
        });
    }
    let n_max = left.n_max;
    if n_max < MIN_COMPARISON_WINDOW {
        return Err(Error::EvidenceWindowTooSmall {
            given: n_max,
            required: MIN_COMPARISON_WINDOW,
        });
    }
    let verdict = fit_difference(left, right)
        .or_else(|| fit_ratio(left, right))
        .unwrap_or(ComparisonVerdict::Inconclusive);
    Ok(ProfileComparison {
        left: left.set_name.clone(),
        right: right.set_name.clone(),
        n_max,
        verdict,
    })
}

fn fit_difference(
    left: &PartialCountProfile,
    right: &PartialCountProfile,
) -> Option<ComparisonVerdict> {
    let n_max = left.n_max;
    let difference_at = |n: u64| left.count_at(n) as i64 - right.count_at(n) as i64;
    let difference = difference_at(n_max);
    let mut since = n_max;
    while since > 1 && difference_at(since - 1) == difference {
        since -= 1;
    }
    (since <= n_max / 2).then_some(ComparisonVerdict::DifferenceStabilizes { difference, since })
}

fn fit_ratio(
    left: &PartialCountProfile,
    right: &PartialCountProfile,
) -> Option<ComparisonVerdict> {
    let n_max = left.n_max;
    let (ca, cb) = (left.count_at(n_max), right.count_at(n_max));
    if ca == 0 || cb == 0 {
        return None;
    }

    // Small candidate fractions near the final count ratio, best (exact on a
    // tail) first.
    let mut candidates: Vec<(u64, u64)> = Vec::new();
    for denominator in 1..=8u64 {
        let numerator =
            ((u128::from(ca) * u128::from(denominator) + u128::from(cb) / 2) / u128::from(cb))
                .try_into()
                .ok()?;
        if numerator == 0 {
            continue;
        }
        let gcd = Integer::gcd(&numerator, &denominator);
        let reduced = (numerator / gcd, denominator / gcd);
        if !candidates.contains(&reduced) {
            candidates.push(reduced);
        }
    }

    let residual = |n: u64, p: u64, q: u64| -> i128 {
        i128::from(left.count_at(n)) * i128::from(q) - i128::from(right.count_at(n)) * i128::from(p)
    };

    for &(p, q) in &candidates {
        let mut since = n_max;
        while since > 1 && residual(since - 1, p, q) == 0 {
            since -= 1;
        }
        if residual(n_max, p, q) == 0 && since <= n_max / 2 {
            return Some(ComparisonVerdict::RatioConverges {
                numerator: p,
                denominator: q,
                exactness: RatioExactness::ExactFrom { since },
            });
        }
    }

    let tail_start = (n_max / 2).max(1);
    for &(p, q) in &candidates {
        let max_abs_residual = (tail_start..=n_max)
            .map(|n| residual(n, p, q).unsigned_abs())
            .max()
            .unwrap_or(0);
        let max_abs_residual = u64::try_from(max_abs_residual).ok()?;
        if max_abs_residual <= p + q {
            let exact_on = find_exact_residue_class(left, right, p, q, tail_start);
            return Some(ComparisonVerdict::RatioConverges {
                numerator: p,
                denominator: q,
                exactness: RatioExactness::Asymptotic {
                    max_abs_residual,
                    exact_on,
                },
            });
        }
    }
    None
}

/// Smallest residue class of N on which the ratio relation is exact over the
/// tail, if any class with modulus up to 4 works.
fn find_exact_residue_class(
    left: &PartialCountProfile,
    right: &PartialCountProfile,
    p: u64,
    q: u64,
    tail_start: u64,
) -> Option<ResidueClass> {
    let n_max = left.n_max;
    let exact = |n: u64| {
        i128::from(left.count_at(n)) * i128::from(q)
            == i128::from(right.count_at(n)) * i128::from(p)
    };
    for modulus in 2..=4u64 {
        for residue in 0..modulus {
            let mut any = false;
            let mut all = true;
            for n in tail_start..=n_max {
                if n % modulus == residue {
                    any = true;
                    if !exact(n) {
                        all = false;
                        break;
                    }
                }
            }
            if any && all {
                return Some(ResidueClass { modulus, residue });
            }
        }
    }
    None
}

/// Element-by-element record of how a map pairs `from` into `to` on `[1,
/// n_max]`.
#[derive(Debug, Clone, Serialize)]
pub struct PairingAudit {
    pub map_name: String,
    pub from_set: String,
    pub to_set: String,
    pub n_max: u64,
    /// Elements of `from` whose image is defined, lands in `to`, and is hit
    /// for the first time.
    pub paired: u64,
    /// Elements of `from` with no defined image.
    pub unpaired_in_from: u64,
    /// Elements of `to` up to the largest image that no element maps onto.
    pub unpaired_in_to: u64,
    /// Images outside `to`, plus images hitting an already-taken target.
    pub violations: u64,
    /// The largest image, bounding the range `unpaired_in_to` refers to.
    pub image_bound: Option<u64>,
}

/// Follows `map` over every element of `from` up to `n_max` and reports the
/// resulting pairing against `to`. Coverage of `to` is judged on `[1, largest
/// image]`: a map may pair all of `from` far into `to` without ever being
/// charged for targets beyond its own reach.
pub fn pairing_audit(
    map: &PairingMap,
    from: &LabelledSet,
    to: &LabelledSet,
    n_max: u64,
) -> Result<PairingAudit> {
    if n_max == 0 {
        return Err(Error::EmptyCountWindow);
    }
    let mut paired = 0u64;
    let mut unpaired_in_from = 0u64;
    let mut violations = 0u64;
    let mut image: BTreeSet<u64> = BTreeSet::new();
    for k in 1..=n_max {
        if !from.member(k) {
            continue;
        }
        match map.forward.eval(k) {
            None => unpaired_in_from += 1,
            Some(target) if !to.member(target) => violations += 1,
            Some(target) => {
                if image.insert(target) {
                    paired += 1;
                } else {
                    violations += 1;
                }
            }
        }
    }
    let image_bound = image.last().copied();
    let unpaired_in_to = match image_bound {
        None => 0,
        Some(bound) => (1..=bound)
            .filter(|&k| to.member(k) && !image.contains(&k))
            .count() as u64,
    };
    Ok(PairingAudit {
        map_name: map.name.clone(),
        from_set: from.name().to_string(),
        to_set: to.name().to_string(),
        n_max,
        paired,
        unpaired_in_from,
        unpaired_in_to,
        violations,
        image_bound,
    })
}

impl PairingAudit {
    /// True when every element on both sides got paired, injectively.
    pub fn is_perfect(&self) -> bool {
        self.unpaired_in_from == 0 && self.unpaired_in_to == 0 && self.violations == 0
    }
}

/// Combines a pairing audit with a count comparison of the same two sets.
/// When the pairing is perfect but the counts still disagree, the equality
/// claim survives only as [`ComparisonVerdict::BijectionEquinumerousOnly`];
/// otherwise the counting verdict stands on its own.
pub fn overall_verdict(audit: &PairingAudit, comparison: &ProfileComparison) -> ComparisonVerdict {
    let counts_agree = matches!(
        comparison.verdict,
        ComparisonVerdict::DifferenceStabilizes { difference: 0, .. }
            | ComparisonVerdict::RatioConverges {
                numerator: 1,
                denominator: 1,
                ..
            }
    );
    if audit.is_perfect() && !counts_agree {
        return ComparisonVerdict::BijectionEquinumerousOnly;
    }
    comparison.verdict.clone()
}
