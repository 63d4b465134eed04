//! The closed set of generator families behind the omega part of a list.
//!
//! Every family answers three questions about its entries without ever
//! materializing more than one of them: the entry at index `n`, the digit
//! of entry `n` at position `m` in constant time, and whether a given
//! canonical expansion equals some entry (and if so at which index). On
//! top of those, each family reports an injectivity certificate and exact
//! bounds on the digits it can emit, which list construction uses to
//! decide whether distinctness was proved symbolically or only checked to
//! a horizon.

use crate::digits::{Digit, PeriodicDigitString};
use crate::error::{Error, Result};
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A rule producing the entry at every finite index `n >= 1`.
///
/// The built-in families all emit digits from `{0, 1}`:
///
/// * `GeometricOnes`: entry `n` has ones at positions `1..=n`, the partial
///   sums of `base^-i`.
/// * `SpacedPair`: entry `n` has ones at positions `n+1, n+3, n+5, ...`.
/// * `Spike { gap }`: entry `n` has a single one at position `gap + n`.
///
/// `Constant` repeats one expansion at every index and therefore never
/// builds a valid list on its own; it exists so that degenerate inputs
/// fail with a precise duplicate report. `Interleave` alternates two
/// families (odd indices from the first, even from the second), `Shifted`
/// and `Strided` re-index an inner family, and `Table` is the escape
/// hatch: explicit entries with no symbolic certificate at all.
#[derive(Clone, PartialEq, Eq)]
pub enum GeneratorFamily {
    GeometricOnes,
    SpacedPair,
    Spike { gap: u64 },
    Constant(PeriodicDigitString),
    Interleave(Box<GeneratorFamily>, Box<GeneratorFamily>),
    Shifted { inner: Box<GeneratorFamily>, offset: u64 },
    Strided { inner: Box<GeneratorFamily>, start: u64, step: u64 },
    Table(Vec<PeriodicDigitString>),
}

/// What a family can promise about pairwise distinctness of its entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Injectivity {
    /// Distinct indices provably yield distinct entries.
    Certified,
    /// The named indices provably yield equal entries.
    NotInjective(u64, u64),
    /// No symbolic argument; callers must scan to a horizon.
    HorizonOnly,
}

impl GeneratorFamily {
    /// The entry at one-based index `n`, canonicalized in `base`.
    pub fn entry(&self, n: u64, base: u32) -> Result<PeriodicDigitString> {
        debug_assert!(n >= 1, "family indices are one-based");
        match self {
            GeneratorFamily::GeometricOnes => {
                let pre = vec![1u8; n as usize];
                PeriodicDigitString::from_digit_values(&pre, &[0], base)
            }
            GeneratorFamily::SpacedPair => {
                let pre = vec![0u8; (n - 1) as usize];
                PeriodicDigitString::from_digit_values(&pre, &[0, 1], base)
            }
            GeneratorFamily::Spike { gap } => {
                let mut pre = vec![0u8; (gap + n - 1) as usize];
                pre.push(1);
                PeriodicDigitString::from_digit_values(&pre, &[0], base)
            }
            GeneratorFamily::Constant(s) => Ok(s.clone()),
            GeneratorFamily::Interleave(a, b) => {
                if n % 2 == 1 {
                    a.entry(n / 2 + 1, base)
                } else {
                    b.entry(n / 2, base)
                }
            }
            GeneratorFamily::Shifted { inner, offset } => inner.entry(n + offset, base),
            GeneratorFamily::Strided { inner, start, step } => {
                inner.entry(start + (n - 1) * step, base)
            }
            GeneratorFamily::Table(entries) => entries
                .get((n - 1) as usize)
                .cloned()
                .ok_or(Error::TableExhausted {
                    index: n,
                    len: entries.len(),
                }),
        }
    }

    /// The digit of entry `n` at one-based position `m`, without
    /// materializing the entry.
    pub fn digit(&self, n: u64, m: u64, base: u32) -> Result<Digit> {
        debug_assert!(n >= 1 && m >= 1, "indices and positions are one-based");
        let bit = |one: bool| if one { Digit::ONE } else { Digit::ZERO };
        match self {
            GeneratorFamily::GeometricOnes => Ok(bit(m <= n)),
            GeneratorFamily::SpacedPair => Ok(bit(m > n && (m - n - 1) % 2 == 0)),
            GeneratorFamily::Spike { gap } => Ok(bit(gap.checked_add(n) == Some(m))),
            GeneratorFamily::Constant(s) => s.digit_at(m),
            GeneratorFamily::Interleave(a, b) => {
                if n % 2 == 1 {
                    a.digit(n / 2 + 1, m, base)
                } else {
                    b.digit(n / 2, m, base)
                }
            }
            GeneratorFamily::Shifted { inner, offset } => inner.digit(n + offset, m, base),
            GeneratorFamily::Strided { inner, start, step } => {
                inner.digit(start + (n - 1) * step, m, base)
            }
            GeneratorFamily::Table(entries) => entries
                .get((n - 1) as usize)
                .ok_or(Error::TableExhausted {
                    index: n,
                    len: entries.len(),
                })?
                .digit_at(m),
        }
    }

    /// Solve `entry(n) = value` for `n`, returning the least solution.
    ///
    /// For the built-in families this matches the canonical shape of
    /// `value` against the family pattern instead of scanning. Indices
    /// that exist only formally (beyond the end of a table) are never
    /// returned.
    pub fn solve_entry(&self, value: &PeriodicDigitString) -> Option<u64> {
        let pre = value.preperiod();
        let per = value.period();
        let all = |ds: &[Digit], d: Digit| ds.iter().all(|&x| x == d);
        match self {
            GeneratorFamily::GeometricOnes => {
                (per == [Digit::ZERO] && !pre.is_empty() && all(pre, Digit::ONE))
                    .then(|| pre.len() as u64)
            }
            GeneratorFamily::SpacedPair => {
                (per == [Digit::ZERO, Digit::ONE] && all(pre, Digit::ZERO))
                    .then(|| pre.len() as u64 + 1)
            }
            GeneratorFamily::Spike { gap } => {
                if per != [Digit::ZERO] || pre.is_empty() {
                    return None;
                }
                let (last, zeros) = pre.split_last()?;
                if *last != Digit::ONE || !all(zeros, Digit::ZERO) {
                    return None;
                }
                let position = pre.len() as u64;
                (position > *gap).then(|| position - gap)
            }
            GeneratorFamily::Constant(s) => (s == value).then_some(1),
            GeneratorFamily::Interleave(a, b) => {
                let odd = a.solve_entry(value).map(|j| 2 * j - 1);
                let even = b.solve_entry(value).map(|j| 2 * j);
                match (odd, even) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                }
            }
            GeneratorFamily::Shifted { inner, offset } => {
                let i = inner.solve_entry(value)?;
                (i > *offset).then(|| i - offset)
            }
            GeneratorFamily::Strided { inner, start, step } => {
                let i = inner.solve_entry(value)?;
                (i >= *start && (i - start) % step == 0).then(|| (i - start) / step + 1)
            }
            GeneratorFamily::Table(entries) => entries
                .iter()
                .position(|e| e == value)
                .map(|i| i as u64 + 1),
        }
    }

    /// The distinctness certificate for this family.
    pub fn injectivity(&self) -> Injectivity {
        match self {
            GeneratorFamily::GeometricOnes
            | GeneratorFamily::SpacedPair
            | GeneratorFamily::Spike { .. } => Injectivity::Certified,
            GeneratorFamily::Constant(_) => Injectivity::NotInjective(1, 2),
            GeneratorFamily::Interleave(a, b) => match (a.injectivity(), b.injectivity()) {
                // Only constant-like families report witnesses, and their
                // entries collide at every pair of indices, so the image
                // under the interleave keeps (1, 2) style witnesses valid.
                (Injectivity::NotInjective(x, y), _) => {
                    Injectivity::NotInjective(2 * x - 1, 2 * y - 1)
                }
                (_, Injectivity::NotInjective(x, y)) => Injectivity::NotInjective(2 * x, 2 * y),
                (Injectivity::Certified, Injectivity::Certified) => {
                    if certified_disjoint(a, b) {
                        Injectivity::Certified
                    } else {
                        Injectivity::HorizonOnly
                    }
                }
                _ => Injectivity::HorizonOnly,
            },
            GeneratorFamily::Shifted { inner, .. }
            | GeneratorFamily::Strided { inner, .. } => match inner.injectivity() {
                Injectivity::NotInjective(_, _) => Injectivity::NotInjective(1, 2),
                other => other,
            },
            GeneratorFamily::Table(_) => Injectivity::HorizonOnly,
        }
    }

    /// Every digit value any entry of the family can contain. Exact, not
    /// an approximation: built-ins emit zeros and ones only, and embedded
    /// expansions contribute exactly their own digits.
    pub fn digit_alphabet(&self) -> BTreeSet<Digit> {
        match self {
            GeneratorFamily::GeometricOnes
            | GeneratorFamily::SpacedPair
            | GeneratorFamily::Spike { .. } => [Digit::ZERO, Digit::ONE].into_iter().collect(),
            GeneratorFamily::Constant(s) => s.digits_used(),
            GeneratorFamily::Interleave(a, b) => {
                let mut set = a.digit_alphabet();
                set.extend(b.digit_alphabet());
                set
            }
            GeneratorFamily::Shifted { inner, .. }
            | GeneratorFamily::Strided { inner, .. } => inner.digit_alphabet(),
            GeneratorFamily::Table(entries) => entries
                .iter()
                .flat_map(|e| e.digits_used())
                .collect(),
        }
    }

    /// The canonical period words entries of this family can end in.
    pub fn period_words(&self) -> BTreeSet<Vec<u8>> {
        let word = |w: &[u8]| w.to_vec();
        match self {
            GeneratorFamily::GeometricOnes | GeneratorFamily::Spike { .. } => {
                [word(&[0])].into_iter().collect()
            }
            GeneratorFamily::SpacedPair => [word(&[0, 1])].into_iter().collect(),
            GeneratorFamily::Constant(s) => {
                [s.period().iter().map(|d| d.value()).collect::<Vec<_>>()]
                    .into_iter()
                    .collect()
            }
            GeneratorFamily::Interleave(a, b) => {
                let mut set = a.period_words();
                set.extend(b.period_words());
                set
            }
            GeneratorFamily::Shifted { inner, .. }
            | GeneratorFamily::Strided { inner, .. } => inner.period_words(),
            GeneratorFamily::Table(entries) => entries
                .iter()
                .map(|e| e.period().iter().map(|d| d.value()).collect())
                .collect(),
        }
    }

    /// The largest index with an entry, or `None` when entries never run
    /// out. Only tables (possibly re-indexed or interleaved) are bounded.
    pub fn max_index(&self) -> Option<u64> {
        match self {
            GeneratorFamily::GeometricOnes
            | GeneratorFamily::SpacedPair
            | GeneratorFamily::Spike { .. }
            | GeneratorFamily::Constant(_) => None,
            GeneratorFamily::Table(entries) => Some(entries.len() as u64),
            GeneratorFamily::Shifted { inner, offset } => inner
                .max_index()
                .map(|m| m.saturating_sub(*offset)),
            GeneratorFamily::Strided { inner, start, step } => inner.max_index().map(|m| {
                if m < *start {
                    0
                } else {
                    (m - start) / step + 1
                }
            }),
            GeneratorFamily::Interleave(a, b) => match (a.max_index(), b.max_index()) {
                (None, None) => None,
                // The run of consecutive indices ends where the shorter
                // side runs out of sub-entries.
                (Some(x), None) => Some(2 * x),
                (None, Some(y)) => Some(2 * y + 1),
                (Some(x), Some(y)) => Some(if x <= y { 2 * x } else { 2 * y + 1 }),
            },
        }
    }

    /// Structural checks that cannot be expressed in the type: strides
    /// and starts must be positive, and tables must be nonempty.
    pub fn validate_structure(&self) -> Result<()> {
        match self {
            GeneratorFamily::Strided { inner, start, step } => {
                if *step == 0 {
                    return Err(Error::InvalidGenerator {
                        message: "strided step must be at least 1".into(),
                    });
                }
                if *start == 0 {
                    return Err(Error::InvalidGenerator {
                        message: "strided start index must be at least 1".into(),
                    });
                }
                inner.validate_structure()
            }
            GeneratorFamily::Shifted { inner, .. } => inner.validate_structure(),
            GeneratorFamily::Interleave(a, b) => {
                a.validate_structure()?;
                b.validate_structure()
            }
            GeneratorFamily::Table(entries) if entries.is_empty() => {
                Err(Error::InvalidGenerator {
                    message: "explicit tables need at least one entry".into(),
                })
            }
            _ => Ok(()),
        }
    }

    /// Visit every expansion embedded in the family definition.
    pub fn for_each_embedded(&self, f: &mut impl FnMut(&PeriodicDigitString)) {
        match self {
            GeneratorFamily::Constant(s) => f(s),
            GeneratorFamily::Table(entries) => entries.iter().for_each(|e| f(e)),
            GeneratorFamily::Interleave(a, b) => {
                a.for_each_embedded(f);
                b.for_each_embedded(f);
            }
            GeneratorFamily::Shifted { inner, .. }
            | GeneratorFamily::Strided { inner, .. } => inner.for_each_embedded(f),
            _ => {}
        }
    }
}

/// Whether the two families provably share no entry.
///
/// The strongest argument is by canonical period words: values with
/// different period words differ, so disjoint word sets mean disjoint
/// entries. Failing that, a family whose entries are all listed
/// (constants and tables) is checked by solving each listed value against
/// the other side, and one structural special case is known: geometric
/// runs of ones contain a lone one only at position one, which a spike
/// with a positive gap can never reach.
pub fn certified_disjoint(a: &GeneratorFamily, b: &GeneratorFamily) -> bool {
    fn strip(f: &GeneratorFamily) -> &GeneratorFamily {
        match f {
            GeneratorFamily::Shifted { inner, .. }
            | GeneratorFamily::Strided { inner, .. } => strip(inner),
            other => other,
        }
    }

    let words_a = a.period_words();
    let words_b = b.period_words();
    if words_a.intersection(&words_b).next().is_none() {
        return true;
    }

    fn listed_entries(f: &GeneratorFamily) -> Option<Vec<&PeriodicDigitString>> {
        match f {
            GeneratorFamily::Constant(s) => Some(vec![s]),
            GeneratorFamily::Table(entries) => Some(entries.iter().collect()),
            _ => None,
        }
    }
    for (listed, other) in [(strip(a), b), (strip(b), a)] {
        if let Some(values) = listed_entries(listed) {
            return values.iter().all(|v| other.solve_entry(v).is_none());
        }
    }

    matches!(
        (strip(a), strip(b)),
        (GeneratorFamily::GeometricOnes, GeneratorFamily::Spike { gap })
            | (GeneratorFamily::Spike { gap }, GeneratorFamily::GeometricOnes)
        if *gap >= 1
    )
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorFamily::GeometricOnes => write!(f, "geometric-ones"),
            GeneratorFamily::SpacedPair => write!(f, "spaced-pair"),
            GeneratorFamily::Spike { gap } => write!(f, "spike({gap})"),
            GeneratorFamily::Constant(s) => write!(f, "constant({s})"),
            GeneratorFamily::Interleave(a, b) => write!(f, "interleave({a}, {b})"),
            GeneratorFamily::Shifted { inner, offset } => write!(f, "shifted({inner}, {offset})"),
            GeneratorFamily::Strided { inner, start, step } => {
                write!(f, "strided({inner}, {start}, {step})")
            }
            GeneratorFamily::Table(entries) => write!(f, "table({} entries)", entries.len()),
        }
    }
}

impl fmt::Debug for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GeneratorFamily {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::DEFAULT_BASE;

    fn parse(text: &str) -> PeriodicDigitString {
        PeriodicDigitString::parse(text, DEFAULT_BASE).unwrap()
    }

    #[test]
    fn geometric_ones_entries_and_digits() {
        let g = GeneratorFamily::GeometricOnes;
        assert_eq!(g.entry(1, 10).unwrap(), parse("0.1[0]"));
        assert_eq!(g.entry(4, 10).unwrap(), parse("0.1111[0]"));
        for n in 1..40u64 {
            for m in 1..40u64 {
                let expected = g.entry(n, 10).unwrap().digit_at(m).unwrap();
                assert_eq!(g.digit(n, m, 10).unwrap(), expected);
            }
        }
        assert_eq!(g.solve_entry(&parse("0.111[0]")), Some(3));
        assert_eq!(g.solve_entry(&parse("0.[1]")), None);
        assert_eq!(g.solve_entry(&parse("0.[0]")), None);
    }

    #[test]
    fn spaced_pair_entries_and_digits() {
        let g = GeneratorFamily::SpacedPair;
        assert_eq!(g.entry(1, 10).unwrap(), parse("0.[01]"));
        assert_eq!(g.entry(3, 10).unwrap(), parse("0.00[01]"));
        for n in 1..40u64 {
            for m in 1..40u64 {
                let expected = g.entry(n, 10).unwrap().digit_at(m).unwrap();
                assert_eq!(g.digit(n, m, 10).unwrap(), expected);
            }
        }
        assert_eq!(g.solve_entry(&parse("0.0000[01]")), Some(5));
        assert_eq!(g.solve_entry(&parse("0.1[01]")), None);
    }

    #[test]
    fn spike_entries_and_digits() {
        let g = GeneratorFamily::Spike { gap: 1 };
        assert_eq!(g.entry(1, 10).unwrap(), parse("0.01[0]"));
        assert_eq!(g.entry(5, 10).unwrap(), parse("0.000001[0]"));
        for n in 1..30u64 {
            for m in 1..30u64 {
                let expected = g.entry(n, 10).unwrap().digit_at(m).unwrap();
                assert_eq!(g.digit(n, m, 10).unwrap(), expected);
            }
        }
        assert_eq!(g.solve_entry(&parse("0.001[0]")), Some(2));
        // the lone one at position one is out of reach with gap one
        assert_eq!(g.solve_entry(&parse("0.1[0]")), None);
        assert_eq!(GeneratorFamily::Spike { gap: 0 }.solve_entry(&parse("0.1[0]")), Some(1));
    }

    #[test]
    fn interleave_places_odd_then_even() {
        let g = GeneratorFamily::Interleave(
            Box::new(GeneratorFamily::SpacedPair),
            Box::new(GeneratorFamily::GeometricOnes),
        );
        assert_eq!(g.entry(1, 10).unwrap(), parse("0.[01]"));
        assert_eq!(g.entry(2, 10).unwrap(), parse("0.1[0]"));
        assert_eq!(g.entry(3, 10).unwrap(), parse("0.0[01]"));
        assert_eq!(g.entry(4, 10).unwrap(), parse("0.11[0]"));
        assert_eq!(g.solve_entry(&parse("0.11[0]")), Some(4));
        assert_eq!(g.solve_entry(&parse("0.0[01]")), Some(3));
        assert_eq!(g.injectivity(), Injectivity::Certified);
    }

    #[test]
    fn strided_reindexes_the_inner_family() {
        let g = GeneratorFamily::Strided {
            inner: Box::new(GeneratorFamily::SpacedPair),
            start: 1,
            step: 2,
        };
        assert_eq!(g.entry(1, 10).unwrap(), parse("0.[01]"));
        assert_eq!(g.entry(2, 10).unwrap(), parse("0.00[01]"));
        assert_eq!(g.solve_entry(&parse("0.00[01]")), Some(2));
        // even inner indices are skipped
        assert_eq!(g.solve_entry(&parse("0.0[01]")), None);
        assert_eq!(g.injectivity(), Injectivity::Certified);
    }

    #[test]
    fn shifted_drops_early_entries() {
        let g = GeneratorFamily::Shifted {
            inner: Box::new(GeneratorFamily::GeometricOnes),
            offset: 3,
        };
        assert_eq!(g.entry(1, 10).unwrap(), parse("0.1111[0]"));
        assert_eq!(g.solve_entry(&parse("0.1111[0]")), Some(1));
        assert_eq!(g.solve_entry(&parse("0.1[0]")), None);
    }

    #[test]
    fn constant_is_not_injective() {
        let g = GeneratorFamily::Constant(parse("0.[1]"));
        assert_eq!(g.injectivity(), Injectivity::NotInjective(1, 2));
        assert_eq!(g.entry(7, 10).unwrap(), parse("0.[1]"));
    }

    #[test]
    fn table_is_horizon_only_and_bounded() {
        let g = GeneratorFamily::Table(vec![parse("0.1[0]"), parse("0.01[0]")]);
        assert_eq!(g.injectivity(), Injectivity::HorizonOnly);
        assert_eq!(g.max_index(), Some(2));
        assert_eq!(g.solve_entry(&parse("0.01[0]")), Some(2));
        assert_eq!(
            g.entry(3, 10),
            Err(Error::TableExhausted { index: 3, len: 2 })
        );
    }

    #[test]
    fn disjointness_arguments() {
        let geom = GeneratorFamily::GeometricOnes;
        let spaced = GeneratorFamily::SpacedPair;
        let spike1 = GeneratorFamily::Spike { gap: 1 };
        let spike0 = GeneratorFamily::Spike { gap: 0 };
        // different period words
        assert!(certified_disjoint(&geom, &spaced));
        // structural argument with a positive gap
        assert!(certified_disjoint(&geom, &spike1));
        // spike with gap zero reaches 0.1[0], which is geometric entry one
        assert!(!certified_disjoint(&geom, &spike0));
        // two spikes share positions
        assert!(!certified_disjoint(&spike1, &GeneratorFamily::Spike { gap: 3 }));
        // a constant can be solved against the other side
        let c = GeneratorFamily::Constant(parse("0.011[0]"));
        assert!(certified_disjoint(&c, &geom));
        let c2 = GeneratorFamily::Constant(parse("0.11[0]"));
        assert!(!certified_disjoint(&c2, &geom));
    }

    #[test]
    fn structure_validation() {
        let bad = GeneratorFamily::Strided {
            inner: Box::new(GeneratorFamily::GeometricOnes),
            start: 1,
            step: 0,
        };
        assert!(matches!(
            bad.validate_structure(),
            Err(Error::InvalidGenerator { .. })
        ));
        assert!(matches!(
            GeneratorFamily::Table(vec![]).validate_structure(),
            Err(Error::InvalidGenerator { .. })
        ));
    }

    #[test]
    fn interleave_max_index_ends_at_the_shorter_side() {
        let table2 = GeneratorFamily::Table(vec![parse("0.1[0]"), parse("0.01[0]")]);
        let g = GeneratorFamily::Interleave(
            Box::new(table2.clone()),
            Box::new(GeneratorFamily::GeometricOnes),
        );
        // odd slots run out after table entry two, i.e. list index three
        assert_eq!(g.max_index(), Some(4));
        let h = GeneratorFamily::Interleave(
            Box::new(GeneratorFamily::GeometricOnes),
            Box::new(table2),
        );
        assert_eq!(h.max_index(), Some(5));
    }
}
