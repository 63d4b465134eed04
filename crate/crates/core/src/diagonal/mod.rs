//! Diagonalization over transfinite lists.
//!
//! Reading row n at column n and rewriting each digit through a
//! fixed-point-free rule yields a digit string that differs from every
//! finitely-indexed row at least at its own index. This module computes that
//! string, identifies its exact value when possible, searches the list for
//! it, and traces how its finite truncations sit inside the list.
//!
//! Identification runs on two levels. When the generator has a closed form,
//! [`certify`] proves the eventual period of the diagonal outright and the
//! result is exact at every position. Otherwise the computed window is
//! scanned for a repeating suffix, and the report says so: an empirical
//! detection is a statement about the window, not about the whole string.

mod certify;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::digits::{Digit, PeriodicDigitString};
use crate::error::{Error, Result};
use crate::list::{OrdinalPosition, TransfiniteList};

/// A total, fixed-point-free digit substitution on a list's alphabet.
#[derive(Debug, Clone)]
pub struct DiagonalRule {
    map: BTreeMap<Digit, Digit>,
}

impl DiagonalRule {
    /// Builds a rule from explicit digit pairs and validates it against the
    /// alphabet it will run on: every alphabet digit must be mapped, no digit
    /// may map to itself, and no image may leave the alphabet.
    pub fn new(
        pairs: &[(Digit, Digit)],
        alphabet: &std::collections::BTreeSet<Digit>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(from, to) in pairs {
            if from == to {
                return Err(Error::RuleFixedPoint(from.value()));
            }
            if !alphabet.contains(&to) {
                return Err(Error::RuleEscapesAlphabet {
                    from: from.value(),
                    to: to.value(),
                });
            }
            map.insert(from, to);
        }
        for digit in alphabet {
            if !map.contains_key(digit) {
                return Err(Error::RuleIncomplete(digit.value()));
            }
        }
        Ok(DiagonalRule { map })
    }

    /// The rule used throughout the binary-alphabet constructions.
    pub fn swap_zero_one() -> Self {
        let mut map = BTreeMap::new();
        map.insert(Digit::ZERO, Digit::ONE);
        map.insert(Digit::ONE, Digit::ZERO);
        DiagonalRule { map }
    }

    /// Applies the rule to one digit.
    pub fn apply(&self, digit: Digit) -> Result<Digit> {
        self.map
            .get(&digit)
            .copied()
            .ok_or(Error::RuleIncomplete(digit.value()))
    }
}

impl fmt::Display for DiagonalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (from, to) in &self.map {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{from}->{to}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for DiagonalRule {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// How the reported diagonal value was established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certification {
    /// The generator's closed form proves the eventual period at every
    /// position, not just the computed ones.
    ProvedByFamily,
    /// A repeating suffix was found in the computed window and persisted for
    /// at least two full periods; positions beyond the window are unchecked.
    EmpiricalToHorizon { horizon: u64 },
    /// No repeating suffix short enough to repeat twice fit in the window.
    NotPeriodicWithinHorizon,
}

/// Outcome of one diagonalization run.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalReport {
    pub list: String,
    pub rule: DiagonalRule,
    pub horizon: u64,
    /// The first `horizon` diagonal digits, already rewritten by the rule.
    #[serde(serialize_with = "crate::serialize::digits_as_string")]
    pub stream_prefix: Vec<Digit>,
    /// Exact value of the diagonal, when certification or detection found
    /// one.
    pub detected: Option<PeriodicDigitString>,
    pub certification: Certification,
    /// Where the detected value occurs in the list. The rewrite makes the
    /// diagonal differ from row n at column n, so only limit positions can
    /// hold it; finite positions are not searched.
    pub membership: Option<OrdinalPosition>,
}

/// The n-th digit of the rewritten diagonal.
pub fn diagonal_digit(list: &TransfiniteList, rule: &DiagonalRule, n: u64) -> Result<Digit> {
    rule.apply(list.row_digit(n, n)?)
}

/// Smallest horizon [`diagonal_stream`] accepts for `list`: enough room for
/// the prefix region to pass and for a period to repeat twice after it.
pub fn required_horizon(list: &TransfiniteList) -> u64 {
    let tail_preperiod = list
        .tail()
        .iter()
        .map(|entry| entry.preperiod().len() as u64)
        .max()
        .unwrap_or(0);
    64.max(2 * (list.prefix_len() + tail_preperiod))
}

/// Computes the rewritten diagonal out to `horizon`, identifies its value,
/// and searches the list for that value.
pub fn diagonal_stream(
    list: &TransfiniteList,
    rule: &DiagonalRule,
    horizon: u64,
) -> Result<DiagonalReport> {
    let required = required_horizon(list);
    if horizon < required {
        return Err(Error::HorizonTooSmall {
            given: horizon,
            required,
        });
    }
    let mut stream = Vec::with_capacity(horizon as usize);
    for n in 1..=horizon {
        stream.push(diagonal_digit(list, rule, n)?);
    }

    let (detected, certification) = match certified_value(list, rule, horizon, &stream)? {
        Some(value) => (Some(value), Certification::ProvedByFamily),
        None => match detect_period(&stream) {
            Some((preperiod, period)) => {
                let value = PeriodicDigitString::new(preperiod, period, list.base())?;
                (Some(value), Certification::EmpiricalToHorizon { horizon })
            }
            None => (None, Certification::NotPeriodicWithinHorizon),
        },
    };

    let membership = detected.as_ref().and_then(|value| {
        list.tail()
            .iter()
            .position(|entry| entry == value)
            .map(|k| OrdinalPosition::Limit(k as u64))
    });

    Ok(DiagonalReport {
        list: list.name().to_string(),
        rule: rule.clone(),
        horizon,
        stream_prefix: stream,
        detected,
        certification,
        membership,
    })
}

/// Assembles the exact diagonal value from a symbolic tail certificate and
/// cross-checks it against the computed window. Returns None when no
/// certificate exists or the certificate's explicit region does not fit in
/// the window.
fn certified_value(
    list: &TransfiniteList,
    rule: &DiagonalRule,
    horizon: u64,
    stream: &[Digit],
) -> Result<Option<PeriodicDigitString>> {
    let Some(tail) = certify::certified_tail(list) else {
        return Ok(None);
    };
    if tail.from > horizon as i128 + 1 {
        return Ok(None);
    }
    let from = tail.from as u64;
    let preperiod = stream[..(from - 1) as usize].to_vec();
    let period = tail
        .digits
        .iter()
        .map(|&raw| rule.apply(Digit::new(raw, list.base())?))
        .collect::<Result<Vec<_>>>()?;
    let value = PeriodicDigitString::new(preperiod, period, list.base())?;
    for n in 1..=horizon {
        if value.digit_at(n)? != stream[(n - 1) as usize] {
            debug_assert!(false, "certificate disagrees with computed digit {n}");
            return Ok(None);
        }
    }
    Ok(Some(value))
}

/// Looks for the shortest repeating suffix of the window that repeats at
/// least twice. Returns the split into explicit digits and period word.
fn detect_period(stream: &[Digit]) -> Option<(Vec<Digit>, Vec<Digit>)> {
    let horizon = stream.len();
    for len in 1..=horizon / 4 {
        let mut mismatch = 0;
        for i in (1..=horizon - len).rev() {
            if stream[i - 1] != stream[i - 1 + len] {
                mismatch = i;
                break;
            }
        }
        if mismatch + 2 * len <= horizon {
            let preperiod = stream[..mismatch].to_vec();
            let period = stream[mismatch..mismatch + len].to_vec();
            return Some((preperiod, period));
        }
    }
    None
}

/// The value carried by the first n rewritten diagonal digits, with zeros
/// beyond them.
pub fn partial_diagonal(
    list: &TransfiniteList,
    rule: &DiagonalRule,
    n: u64,
) -> Result<PeriodicDigitString> {
    if n == 0 {
        return Err(Error::PositionZero);
    }
    let digits = (1..=n)
        .map(|i| diagonal_digit(list, rule, i))
        .collect::<Result<Vec<_>>>()?;
    PeriodicDigitString::new(digits, vec![Digit::ZERO], list.base())
}

/// Least finite position at or below `search_bound` holding `value`, scanning
/// the explicit prefix and solving the generator's closed form.
pub fn locate_partial(
    list: &TransfiniteList,
    value: &PeriodicDigitString,
    search_bound: u64,
) -> Option<u64> {
    let prefix_end = list.prefix_len().min(search_bound);
    for position in 1..=prefix_end {
        let entry = list
            .entry_at(OrdinalPosition::Finite(position))
            .expect("prefix positions are always materialized");
        if entry == *value {
            return Some(position);
        }
    }
    if let Some(index) = list.generator().solve_entry(value) {
        let position = list.prefix_len().saturating_add(index);
        if position <= search_bound {
            return Some(position);
        }
    }
    None
}

/// One step of an induction trace: the n-digit partial diagonal and where it
/// was found.
#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub n: u64,
    pub partial: PeriodicDigitString,
    pub found_at: Option<u64>,
}

/// Shape of the function n -> found_at(n) over the whole evidence range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SizeVerdict {
    /// found_at(n) == n + offset for every traced n.
    Offset { offset: u64 },
    /// found_at(n) * denominator == numerator * n for every traced n.
    Ratio { numerator: u64, denominator: u64 },
    /// No single affine shape fit. `first_missing` is the first n whose
    /// partial was not found at all, when that is why fitting stopped.
    NoPattern { first_missing: Option<u64> },
}

/// Record of how every partial diagonal up to n_max embeds into the list.
#[derive(Debug, Clone, Serialize)]
pub struct InductionTrace {
    pub entries: Vec<TraceEntry>,
    pub verdict: SizeVerdict,
    /// Closed range of n the verdict quantifies over.
    pub evidence: (u64, u64),
}

/// Search bound that comfortably covers offset and small-ratio embeddings.
pub fn default_search_bound(n_max: u64) -> u64 {
    n_max.saturating_mul(8) + 64
}

/// Locates every partial diagonal D(1) ..= D(n_max) in the list and fits a
/// shape to the positions found.
pub fn induction_trace(
    list: &TransfiniteList,
    rule: &DiagonalRule,
    n_max: u64,
    search_bound: u64,
) -> Result<InductionTrace> {
    if n_max == 0 {
        return Err(Error::PositionZero);
    }
    let mut digits: Vec<Digit> = Vec::with_capacity(n_max as usize);
    let mut entries = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        digits.push(diagonal_digit(list, rule, n)?);
        let partial = PeriodicDigitString::new(digits.clone(), vec![Digit::ZERO], list.base())?;
        let found_at = locate_partial(list, &partial, search_bound);
        entries.push(TraceEntry {
            n,
            partial,
            found_at,
        });
    }
    let verdict = fit_verdict(&entries);
    Ok(InductionTrace {
        entries,
        verdict,
        evidence: (1, n_max),
    })
}

fn fit_verdict(entries: &[TraceEntry]) -> SizeVerdict {
    if let Some(missing) = entries.iter().find(|e| e.found_at.is_none()) {
        return SizeVerdict::NoPattern {
            first_missing: Some(missing.n),
        };
    }
    let at = |e: &TraceEntry| e.found_at.expect("missing entries were ruled out");

    let first = &entries[0];
    if at(first) >= first.n {
        let offset = at(first) - first.n;
        if entries.iter().all(|e| at(e) == e.n + offset) {
            return SizeVerdict::Offset { offset };
        }
    }

    let numerator = at(first);
    let denominator = first.n;
    let gcd = num_integer::Integer::gcd(&numerator, &denominator);
    let (numerator, denominator) = (numerator / gcd, denominator / gcd);
    if entries
        .iter()
        .all(|e| at(e) * denominator == numerator * e.n)
    {
        return SizeVerdict::Ratio {
            numerator,
            denominator,
        };
    }

    SizeVerdict::NoPattern {
        first_missing: None,
    }
}
