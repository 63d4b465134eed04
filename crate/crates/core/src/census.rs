//! Brute-force censuses of diagonalization over finite string sets.
//!
//! A set of equal-length binary strings can be put in any order; reading the
//! first `n` rows of an ordering down the diagonal and rewriting each digit
//! through a fixed-point-free rule yields another length-`n` string. The
//! census counts, over orderings of the set, how often that string is itself
//! a member, and how often it hits each particular member.
//!
//! Three modes cover the feasible regimes: full enumeration of all
//! `set_size!` orderings, enumeration of ordered `n`-prefixes only (each
//! prefix stands for `(set_size - n)!` orderings, which is sound because the
//! diagonal depends on nothing else and is never one of the prefix rows), and
//! seeded uniform sampling. Counts are exact big integers throughout.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::diagonal::DiagonalRule;
use crate::digits::Digit;
use crate::error::{Error, Result};

/// Longest supported string, so whole sets stay enumerable.
pub const MAX_STRING_LEN: u8 = 24;

/// Most orderings (or ordered prefixes) an exhaustive census will walk.
pub const ORDERING_BUDGET: u64 = 50_000_000;

/// A fixed-length string over the digits `{0, 1}`, packed most significant
/// digit first so that numeric order on the bits is lexicographic order on
/// the string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteString {
    len: u8,
    bits: u32,
}

impl FiniteString {
    /// Builds a string from its packed bits; `bits` must fit in `len`
    /// digits and `len` must be between 1 and [`MAX_STRING_LEN`].
    pub fn from_bits(bits: u32, len: u8) -> Result<Self> {
        if len == 0 || len > MAX_STRING_LEN {
            return Err(Error::StringTooLong {
                got: u32::from(len),
                max: u32::from(MAX_STRING_LEN),
            });
        }
        debug_assert!(bits < 1 << len, "bits must fit in len digits");
        Ok(FiniteString { len, bits })
    }

    /// The digit count, at least 1 by construction.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u8 {
        self.len
    }

    /// The digit at one-based position `i`, counted from the left.
    pub fn digit(&self, i: u8) -> u8 {
        debug_assert!(i >= 1 && i <= self.len, "positions are one-based");
        ((self.bits >> (self.len - i)) & 1) as u8
    }
}

impl fmt::Display for FiniteString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            write!(f, "{}", self.digit(i))?;
        }
        Ok(())
    }
}

impl Serialize for FiniteString {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// A nonempty set of distinct strings of one common length, kept in
/// lexicographic order.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteStringSet {
    name: String,
    string_len: u8,
    elements: Vec<FiniteString>,
}

impl FiniteStringSet {
    pub fn new(name: &str, mut elements: Vec<FiniteString>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::EmptyStringSet);
        };
        let string_len = first.len();
        for element in &elements {
            if element.len() != string_len {
                return Err(Error::MixedStringLengths {
                    first: string_len,
                    second: element.len(),
                });
            }
        }
        elements.sort();
        for pair in elements.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateString(pair[0].to_string()));
            }
        }
        Ok(FiniteStringSet {
            name: name.to_string(),
            string_len,
            elements,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn string_len(&self) -> u8 {
        self.string_len
    }

    pub fn size(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[FiniteString] {
        &self.elements
    }

    pub fn contains(&self, string: FiniteString) -> bool {
        self.elements.binary_search(&string).is_ok()
    }
}

/// All strings of the given length satisfying `predicate`, in lexicographic
/// order. Errors when nothing matches.
pub fn enumerate_strings(
    length: u8,
    name: &str,
    predicate: impl Fn(FiniteString) -> bool,
) -> Result<FiniteStringSet> {
    if length == 0 || length > MAX_STRING_LEN {
        return Err(Error::StringTooLong {
            got: u32::from(length),
            max: u32::from(MAX_STRING_LEN),
        });
    }
    let mut elements = Vec::new();
    for bits in 0..(1u32 << length) {
        let string = FiniteString { len: length, bits };
        if predicate(string) {
            elements.push(string);
        }
    }
    FiniteStringSet::new(name, elements)
}

/// Whether the last three digits of the string are all equal. The selection
/// rule behind the bundled eight-element set of length five.
pub fn ends_in_three_equal(string: FiniteString) -> bool {
    let len = string.len();
    len >= 3
        && string.digit(len) == string.digit(len - 1)
        && string.digit(len) == string.digit(len - 2)
}

/// The diagonal of an ordered prefix: digit `i` is `rule` applied to row i's
/// digit at position i. Rows must form a square (n rows of length n) and be
/// pairwise distinct.
pub fn diagonal_of_prefix(rows: &[FiniteString], rule: &DiagonalRule) -> Result<FiniteString> {
    let n = rows.len();
    if n == 0 || n > MAX_STRING_LEN as usize {
        return Err(Error::BadPrefixShape {
            expected: n,
            message: format!("got {n} rows; between 1 and {MAX_STRING_LEN} are supported"),
        });
    }
    for row in rows {
        if row.len() as usize != n {
            return Err(Error::BadPrefixShape {
                expected: n,
                message: format!("row {row} has length {}", row.len()),
            });
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if rows[..i].contains(row) {
            return Err(Error::DuplicateString(row.to_string()));
        }
    }
    let mut bits = 0u32;
    for (i, row) in rows.iter().enumerate() {
        let own = row.digit(i as u8 + 1);
        let rewritten = rule.apply(Digit::new(own, 10)?)?;
        bits = (bits << 1) | u32::from(rewritten.value());
    }
    Ok(FiniteString {
        len: n as u8,
        bits,
    })
}

/// How a census walked the orderings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CensusMode {
    /// Every ordering of the whole set.
    Exhaustive,
    /// Every ordered prefix of `n_digits` elements, each standing for
    /// `(set_size - n_digits)!` orderings.
    PrefixExhaustive,
    /// `samples` uniform orderings from a seeded generator.
    Sampled { samples: u64, seed: u64 },
}

/// Exact counts from one census run.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub set_name: String,
    pub set_size: u64,
    pub n_digits: u8,
    pub mode: CensusMode,
    /// `set_size!`, the number of orderings the counts refer to.
    #[serde(serialize_with = "crate::serialize::biguint_as_string")]
    pub total_orderings: BigUint,
    /// Orderings (or samples, in sampled mode) whose diagonal is a member.
    #[serde(serialize_with = "crate::serialize::biguint_as_string")]
    pub orderings_with_member_diagonal: BigUint,
    /// Member orderings as a reduced fraction of the orderings (or samples)
    /// examined, e.g. `"1/7"`.
    pub member_fraction: String,
    /// Count per set element of orderings whose diagonal equals it. Keys
    /// cover the whole set, including elements never hit.
    #[serde(serialize_with = "crate::serialize::biguint_map_as_strings")]
    pub per_target: BTreeMap<String, BigUint>,
}

/// Exhaustive census: walks all orderings when `set_size!` fits the budget,
/// otherwise all ordered prefixes when those fit, and otherwise refuses,
/// pointing at sampled mode.
pub fn census_exhaustive(set: &FiniteStringSet, rule: &DiagonalRule) -> Result<CensusReport> {
    if bounded_factorial(set.size(), ORDERING_BUDGET).is_some() {
        return census_full_orderings(set, rule);
    }
    census_ordered_prefixes(set, rule)
}

/// Census over every ordering of the whole set.
pub fn census_full_orderings(set: &FiniteStringSet, rule: &DiagonalRule) -> Result<CensusReport> {
    let (size, n) = census_shape(set)?;
    let Some(_) = bounded_factorial(size, ORDERING_BUDGET) else {
        return Err(budget_error(factorial(size)));
    };
    let mut indices: Vec<u32> = (0..size as u32).collect();
    let mut per_target: BTreeMap<FiniteString, u64> = BTreeMap::new();
    loop {
        let rows: Vec<FiniteString> = indices[..n as usize]
            .iter()
            .map(|&i| set.elements()[i as usize])
            .collect();
        let diagonal = diagonal_of_prefix(&rows, rule)?;
        if set.contains(diagonal) {
            *per_target.entry(diagonal).or_insert(0) += 1;
        }
        if !next_permutation(&mut indices) {
            break;
        }
    }
    Ok(assemble_report(
        set,
        CensusMode::Exhaustive,
        per_target,
        BigUint::one(),
        factorial(size),
    ))
}

/// Census over every ordered `n_digits`-prefix, scaled by the number of ways
/// to arrange the remaining elements.
pub fn census_ordered_prefixes(set: &FiniteStringSet, rule: &DiagonalRule) -> Result<CensusReport> {
    let (size, n) = census_shape(set)?;
    if bounded_falling_factorial(size, u64::from(n), ORDERING_BUDGET).is_none() {
        return Err(budget_error(falling_factorial(size, u64::from(n))));
    }
    let mut per_target: BTreeMap<FiniteString, u64> = BTreeMap::new();
    let mut rows: Vec<FiniteString> = Vec::with_capacity(n as usize);
    let mut used = vec![false; size as usize];
    walk_prefixes(set, rule, &mut rows, &mut used, &mut per_target)?;
    let completions = factorial(size - u64::from(n));
    Ok(assemble_report(
        set,
        CensusMode::PrefixExhaustive,
        per_target,
        completions,
        factorial(size),
    ))
}

fn walk_prefixes(
    set: &FiniteStringSet,
    rule: &DiagonalRule,
    rows: &mut Vec<FiniteString>,
    used: &mut [bool],
    per_target: &mut BTreeMap<FiniteString, u64>,
) -> Result<()> {
    if rows.len() == set.string_len() as usize {
        let diagonal = diagonal_of_prefix(rows, rule)?;
        if set.contains(diagonal) {
            *per_target.entry(diagonal).or_insert(0) += 1;
        }
        return Ok(());
    }
    for i in 0..set.elements().len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        rows.push(set.elements()[i]);
        walk_prefixes(set, rule, rows, used, per_target)?;
        rows.pop();
        used[i] = false;
    }
    Ok(())
}

/// Census over `samples` orderings drawn uniformly from a generator seeded
/// with `seed`. Identical inputs reproduce identical counts.
///
/// The generator is ChaCha20 seeded via `seed_from_u64`. A uniform index
/// below `bound` is drawn by taking 64 bits, rejecting values below
/// `2^64 mod bound`, and reducing the rest modulo `bound`; an ordering prefix
/// is drawn by running the first `n_digits` steps of a Fisher-Yates shuffle
/// with those indices.
pub fn census_sampled(
    set: &FiniteStringSet,
    rule: &DiagonalRule,
    samples: u64,
    seed: u64,
) -> Result<CensusReport> {
    let (size, n) = census_shape(set)?;
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut indices: Vec<u32> = (0..size as u32).collect();
    let mut swaps: Vec<(usize, usize)> = Vec::with_capacity(n as usize);
    let mut per_target: BTreeMap<FiniteString, u64> = BTreeMap::new();
    let mut member = 0u64;
    let mut rows = Vec::with_capacity(n as usize);
    for _ in 0..samples {
        swaps.clear();
        for i in 0..u64::from(n) {
            let j = i + uniform_below(&mut rng, size - i);
            indices.swap(i as usize, j as usize);
            swaps.push((i as usize, j as usize));
        }
        rows.clear();
        rows.extend(
            indices[..n as usize]
                .iter()
                .map(|&i| set.elements()[i as usize]),
        );
        let diagonal = diagonal_of_prefix(&rows, rule)?;
        if set.contains(diagonal) {
            member += 1;
            *per_target.entry(diagonal).or_insert(0) += 1;
        }
        for &(i, j) in swaps.iter().rev() {
            indices.swap(i, j);
        }
    }
    let mut report = assemble_report(
        set,
        CensusMode::Sampled { samples, seed },
        per_target,
        BigUint::one(),
        factorial(size),
    );
    report.member_fraction = reduced_fraction(&BigUint::from(member), &BigUint::from(samples));
    Ok(report)
}

/// The two set sizes at which the member question needs no counting at all:
/// with exactly `n_digits` strings the diagonal is never a member, and with
/// all `2^n_digits` strings it always is. Every size in between depends on
/// the selection and the order.
pub fn minimum_guaranteed_cases(n_digits: u8) -> Result<(u64, u64)> {
    if n_digits == 0 || n_digits > MAX_STRING_LEN {
        return Err(Error::StringTooLong {
            got: u32::from(n_digits),
            max: u32::from(MAX_STRING_LEN),
        });
    }
    Ok((u64::from(n_digits), 1u64 << n_digits))
}

fn census_shape(set: &FiniteStringSet) -> Result<(u64, u8)> {
    let size = set.size();
    let n = set.string_len();
    if size < u64::from(n) {
        return Err(Error::SetSmallerThanDigits {
            got: size as usize,
            needed: n as usize,
        });
    }
    Ok((size, n))
}

fn budget_error(orderings: BigUint) -> Error {
    Error::CensusBudgetExceeded {
        orderings: orderings.to_string(),
        budget: ORDERING_BUDGET.to_string(),
    }
}

fn assemble_report(
    set: &FiniteStringSet,
    mode: CensusMode,
    per_target_counts: BTreeMap<FiniteString, u64>,
    scale: BigUint,
    total_orderings: BigUint,
) -> CensusReport {
    let mut per_target: BTreeMap<String, BigUint> = set
        .elements()
        .iter()
        .map(|e| (e.to_string(), BigUint::zero()))
        .collect();
    for (target, count) in per_target_counts {
        per_target.insert(target.to_string(), BigUint::from(count) * &scale);
    }
    let member: BigUint = per_target.values().sum();
    let member_fraction = reduced_fraction(&member, &total_orderings);
    CensusReport {
        set_name: set.name().to_string(),
        set_size: set.size(),
        n_digits: set.string_len(),
        mode,
        total_orderings,
        orderings_with_member_diagonal: member,
        member_fraction,
        per_target,
    }
}

fn reduced_fraction(numerator: &BigUint, denominator: &BigUint) -> String {
    debug_assert!(!denominator.is_zero());
    let gcd = numerator.gcd(denominator);
    if gcd.is_zero() {
        return format!("0/{denominator}");
    }
    let p = numerator / &gcd;
    let q = denominator / &gcd;
    if q.is_one() {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn falling_factorial(n: u64, k: u64) -> BigUint {
    ((n - k + 1)..=n).map(BigUint::from).product()
}

/// `n!` when it stays at or below `budget`, None otherwise.
fn bounded_factorial(n: u64, budget: u64) -> Option<u64> {
    let mut product = 1u64;
    for factor in 2..=n {
        product = product.checked_mul(factor).filter(|&p| p <= budget)?;
    }
    Some(product)
}

/// `n * (n-1) * ... * (n-k+1)` when it stays at or below `budget`.
fn bounded_falling_factorial(n: u64, k: u64, budget: u64) -> Option<u64> {
    let mut product = 1u64;
    for factor in (n - k + 1)..=n {
        product = product.checked_mul(factor).filter(|&p| p <= budget)?;
    }
    Some(product)
}

/// Advances `values` to its lexicographic successor; false at the last one.
fn next_permutation(values: &mut [u32]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Uniform draw from `0..bound` by rejection: take 64 bits, discard values
/// below `2^64 mod bound`, reduce the rest.
fn uniform_below(rng: &mut ChaCha20Rng, bound: u64) -> u64 {
    debug_assert!(bound >= 1);
    let remainder = (u64::MAX % bound + 1) % bound;
    loop {
        let draw = rng.next_u64();
        if draw >= remainder {
            return draw % bound;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> DiagonalRule {
        DiagonalRule::swap_zero_one()
    }

    fn string(text: &str) -> FiniteString {
        let bits = u32::from_str_radix(text, 2).unwrap();
        FiniteString::from_bits(bits, text.len() as u8).unwrap()
    }

    fn rat() -> FiniteStringSet {
        enumerate_strings(5, "rat", ends_in_three_equal).unwrap()
    }

    fn full_set(length: u8) -> FiniteStringSet {
        enumerate_strings(length, "full", |_| true).unwrap()
    }

    #[test]
    fn strings_read_left_to_right_and_sort_lexicographically() {
        let s = string("01011");
        assert_eq!(s.len(), 5);
        assert_eq!(
            (1..=5).map(|i| s.digit(i)).collect::<Vec<_>>(),
            vec![0, 1, 0, 1, 1]
        );
        assert_eq!(s.to_string(), "01011");
        assert!(string("00111") < string("01000"));
    }

    #[test]
    fn enumeration_matches_the_expected_counts() {
        assert_eq!(full_set(5).size(), 32);
        let rat = rat();
        assert_eq!(rat.size(), 8);
        let texts: Vec<String> = rat.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(
            texts,
            [
                "00000", "00111", "01000", "01111", "10000", "10111", "11000", "11111"
            ]
        );
        let tiny = full_set(1);
        assert_eq!(tiny.size(), 2);
        assert!(matches!(
            enumerate_strings(3, "none", |_| false),
            Err(Error::EmptyStringSet)
        ));
        assert!(matches!(
            enumerate_strings(25, "long", |_| true),
            Err(Error::StringTooLong { got: 25, max: 24 })
        ));
    }

    #[test]
    fn set_construction_rejects_mixed_lengths_and_duplicates() {
        let mixed = FiniteStringSet::new("mixed", vec![string("01"), string("011")]);
        assert!(matches!(
            mixed,
            Err(Error::MixedStringLengths {
                first: 2,
                second: 3
            })
        ));
        let duplicated = FiniteStringSet::new("dup", vec![string("01"), string("01")]);
        assert!(matches!(duplicated, Err(Error::DuplicateString(_))));
        assert!(matches!(
            FiniteStringSet::new("empty", Vec::new()),
            Err(Error::EmptyStringSet)
        ));
    }

    #[test]
    fn prefix_diagonals_flip_the_own_digit() {
        let diagonal = diagonal_of_prefix(&[string("10"), string("00")], &swap()).unwrap();
        assert_eq!(diagonal.to_string(), "01");

        let rows = [
            string("01000"),
            string("00111"),
            string("00000"),
            string("10000"),
            string("11000"),
        ];
        let diagonal = diagonal_of_prefix(&rows, &swap()).unwrap();
        assert_eq!(diagonal.to_string(), "11111");

        assert!(matches!(
            diagonal_of_prefix(&[string("00"), string("00")], &swap()),
            Err(Error::DuplicateString(_))
        ));
        assert!(matches!(
            diagonal_of_prefix(&[string("001"), string("010")], &swap()),
            Err(Error::BadPrefixShape { .. })
        ));
    }

    #[test]
    fn rat_census_reproduces_the_frozen_counts() {
        let report = census_full_orderings(&rat(), &swap()).unwrap();
        assert_eq!(report.total_orderings, BigUint::from(40_320u32));
        assert_eq!(
            report.orderings_with_member_diagonal,
            BigUint::from(5_760u32)
        );
        assert_eq!(report.member_fraction, "1/7");
        assert_eq!(report.per_target.len(), 8);
        for (target, count) in &report.per_target {
            assert_eq!(count, &BigUint::from(720u32), "target {target}");
        }
    }

    #[test]
    fn prefix_mode_agrees_with_full_mode_on_the_rat_set() {
        let full = census_full_orderings(&rat(), &swap()).unwrap();
        let prefixes = census_ordered_prefixes(&rat(), &swap()).unwrap();
        assert_eq!(prefixes.mode, CensusMode::PrefixExhaustive);
        assert_eq!(full.per_target, prefixes.per_target);
        assert_eq!(
            full.orderings_with_member_diagonal,
            prefixes.orderings_with_member_diagonal
        );
        assert_eq!(full.total_orderings, prefixes.total_orderings);
    }

    #[test]
    fn full_sets_always_contain_their_diagonal() {
        let two = census_full_orderings(&full_set(2), &swap()).unwrap();
        assert_eq!(two.total_orderings, BigUint::from(24u32));
        assert_eq!(two.orderings_with_member_diagonal, two.total_orderings);
        assert_eq!(two.member_fraction, "1");

        let three = census_ordered_prefixes(&full_set(3), &swap()).unwrap();
        assert_eq!(three.orderings_with_member_diagonal, three.total_orderings);
        assert_eq!(three.member_fraction, "1");
    }

    #[test]
    fn square_sets_never_contain_their_diagonal() {
        let set = FiniteStringSet::new(
            "square",
            vec![string("001"), string("010"), string("100")],
        )
        .unwrap();
        let report = census_full_orderings(&set, &swap()).unwrap();
        assert_eq!(report.orderings_with_member_diagonal, BigUint::zero());
        assert_eq!(report.member_fraction, "0");
    }

    #[test]
    fn exhaustive_census_picks_a_feasible_mode() {
        let report = census_exhaustive(&rat(), &swap()).unwrap();
        assert_eq!(report.mode, CensusMode::Exhaustive);
        let report = census_exhaustive(&full_set(4), &swap()).unwrap();
        assert_eq!(report.mode, CensusMode::PrefixExhaustive);
        assert_eq!(report.orderings_with_member_diagonal, report.total_orderings);
    }

    #[test]
    fn full_mode_refuses_oversized_sets() {
        let result = census_full_orderings(&full_set(4), &swap());
        assert!(matches!(result, Err(Error::CensusBudgetExceeded { .. })));
    }

    #[test]
    fn sampling_is_reproducible_and_respects_known_laws() {
        let first = census_sampled(&rat(), &swap(), 2_000, 7).unwrap();
        let second = census_sampled(&rat(), &swap(), 2_000, 7).unwrap();
        assert_eq!(first.per_target, second.per_target);
        assert_eq!(
            first.orderings_with_member_diagonal,
            second.orderings_with_member_diagonal
        );
        assert_eq!(first.mode, CensusMode::Sampled { samples: 2_000, seed: 7 });

        let full = census_sampled(&full_set(4), &swap(), 1_000, 11).unwrap();
        assert_eq!(full.member_fraction, "1");

        let square = FiniteStringSet::new(
            "square",
            vec![string("001"), string("010"), string("100")],
        )
        .unwrap();
        let none = census_sampled(&square, &swap(), 500, 3).unwrap();
        assert_eq!(none.member_fraction, "0");

        assert!(matches!(
            census_sampled(&rat(), &swap(), 0, 1),
            Err(Error::NoSamples)
        ));
    }

    #[test]
    fn definitive_sizes_are_n_and_two_to_the_n() {
        assert_eq!(minimum_guaranteed_cases(5).unwrap(), (5, 32));
        assert_eq!(minimum_guaranteed_cases(1).unwrap(), (1, 2));
        assert_eq!(minimum_guaranteed_cases(3).unwrap(), (3, 8));
        assert!(minimum_guaranteed_cases(0).is_err());
    }

    #[test]
    fn permutation_successor_is_lexicographic() {
        let mut values = vec![0u32, 1, 2];
        let mut seen = vec![values.clone()];
        while next_permutation(&mut values) {
            seen.push(values.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(seen.last().unwrap(), &vec![2u32, 1, 0]);
    }
}
