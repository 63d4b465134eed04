//! Ordinal-indexed lists of canonical digit expansions.
//!
//! A [`TransfiniteList`] lists pairwise distinct expansions at the
//! positions `1, 2, 3, ...` followed by a finite tail at the limit
//! positions `omega, omega+1, ..., omega+k-1`; its order type is omega
//! plus the tail length. The finite positions are a finite explicit
//! prefix followed by the entries of a [`GeneratorFamily`], so the list
//! as a whole needs only finitely many stored values while still
//! answering digit queries at any finite position in constant time.
//!
//! Construction validates the declared digit alphabet and pairwise
//! distinctness. Wherever the generator carries symbolic certificates the
//! checks are proofs about all infinitely many entries; otherwise they
//! scan entries up to the declared horizon and the list records that
//! weaker evidence in its [`DistinctnessEvidence`].

mod family;

pub use family::{certified_disjoint, GeneratorFamily, Injectivity};

use crate::digits::{Digit, PeriodicDigitString};
use crate::error::{Error, Result};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A position in a list of order type omega plus a finite tail.
///
/// `Finite(n)` is the one-based position `n`; `Limit(k)` is the position
/// `omega + k` with `k` zero-based. Every finite position precedes every
/// limit position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrdinalPosition {
    Finite(u64),
    Limit(u64),
}

impl OrdinalPosition {
    fn rank(self) -> (u8, u64) {
        match self {
            OrdinalPosition::Finite(n) => (0, n),
            OrdinalPosition::Limit(k) => (1, k),
        }
    }
}

impl PartialOrd for OrdinalPosition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalPosition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for OrdinalPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalPosition::Finite(n) => write!(f, "{n}"),
            OrdinalPosition::Limit(0) => write!(f, "omega"),
            OrdinalPosition::Limit(k) => write!(f, "omega+{k}"),
        }
    }
}

impl Serialize for OrdinalPosition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("OrdinalPosition", 2)?;
        match self {
            OrdinalPosition::Finite(n) => {
                st.serialize_field("kind", "finite")?;
                st.serialize_field("index", n)?;
            }
            OrdinalPosition::Limit(k) => {
                st.serialize_field("kind", "limit")?;
                st.serialize_field("index", k)?;
            }
        }
        st.end()
    }
}

/// How list distinctness was established at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DistinctnessEvidence {
    /// Proved for all entries by family certificates.
    Symbolic,
    /// Checked by scanning entries up to the recorded horizon only.
    HorizonChecked { horizon: u64 },
}

/// Everything needed to build a list.
#[derive(Clone)]
pub struct ListSpec {
    pub name: String,
    pub base: u32,
    pub alphabet: BTreeSet<Digit>,
    pub prefix: Vec<PeriodicDigitString>,
    pub generator: GeneratorFamily,
    pub tail: Vec<PeriodicDigitString>,
    /// How far entry scans go when a certificate is missing.
    pub horizon: u64,
}

/// A validated list; see the module documentation.
#[derive(Clone, Serialize)]
pub struct TransfiniteList {
    name: String,
    base: u32,
    alphabet: BTreeSet<Digit>,
    prefix: Vec<PeriodicDigitString>,
    generator: GeneratorFamily,
    tail: Vec<PeriodicDigitString>,
    distinctness: DistinctnessEvidence,
}

impl TransfiniteList {
    /// Validate `spec` and build the list.
    ///
    /// Checks, in order: the base and alphabet are coherent, the generator
    /// is structurally sound, every explicit entry uses the list base and
    /// stays inside the alphabet, generator entries stay inside the
    /// alphabet, and all entries are pairwise distinct. Distinctness of
    /// generator entries uses the family certificates where they exist and
    /// a scan up to `spec.horizon` where they do not; the outcome is
    /// recorded on the list.
    pub fn build(spec: ListSpec) -> Result<Self> {
        let ListSpec {
            name,
            base,
            alphabet,
            prefix,
            generator,
            tail,
            horizon,
        } = spec;

        if alphabet.len() < 2 {
            return Err(Error::AlphabetTooSmall);
        }
        for d in &alphabet {
            Digit::new(d.value(), base)?;
        }
        generator.validate_structure()?;

        let prefix_len = prefix.len() as u64;
        let required = prefix_len + 1;
        if horizon < required {
            return Err(Error::ValidationHorizonTooSmall {
                given: horizon,
                required,
            });
        }

        let explicit = || {
            prefix
                .iter()
                .enumerate()
                .map(|(i, s)| (OrdinalPosition::Finite(i as u64 + 1), s))
                .chain(
                    tail.iter()
                        .enumerate()
                        .map(|(k, s)| (OrdinalPosition::Limit(k as u64), s)),
                )
        };

        for (position, entry) in explicit() {
            if entry.base() != base {
                return Err(Error::BaseMismatch {
                    position,
                    expected: base,
                    found: entry.base(),
                });
            }
            check_alphabet(entry, &alphabet, position)?;
        }

        // Pairwise distinctness of the explicit entries.
        let mut seen: HashMap<&PeriodicDigitString, OrdinalPosition> = HashMap::new();
        for (position, entry) in explicit() {
            if let Some(&first) = seen.get(entry) {
                return Err(Error::DuplicateEntry {
                    first,
                    second: position,
                    value: entry.to_string(),
                });
            }
            seen.insert(entry, position);
        }

        // Explicit entries against the generator, by solving rather than
        // scanning.
        for (position, entry) in explicit() {
            if let Some(n) = generator.solve_entry(entry) {
                if generator.max_index().is_none_or(|max| n <= max) {
                    return Err(Error::DuplicateEntry {
                        first: position.min(OrdinalPosition::Finite(prefix_len + n)),
                        second: position.max(OrdinalPosition::Finite(prefix_len + n)),
                        value: entry.to_string(),
                    });
                }
            }
        }

        // Generator self-distinctness.
        let generator_count = {
            let window = horizon - prefix_len;
            match generator.max_index() {
                Some(0) => {
                    return Err(Error::InvalidGenerator {
                        message: "the generator has no entries at all".into(),
                    })
                }
                Some(max) => window.min(max),
                None => window,
            }
        };
        let distinctness = match generator.injectivity() {
            Injectivity::Certified => DistinctnessEvidence::Symbolic,
            Injectivity::NotInjective(a, b) => {
                let value = generator.entry(a, base)?;
                return Err(Error::DuplicateEntry {
                    first: OrdinalPosition::Finite(prefix_len + a),
                    second: OrdinalPosition::Finite(prefix_len + b),
                    value: value.to_string(),
                });
            }
            Injectivity::HorizonOnly => {
                let mut gen_seen: HashMap<PeriodicDigitString, u64> = HashMap::new();
                for n in 1..=generator_count {
                    let entry = generator.entry(n, base)?;
                    if let Some(&first) = gen_seen.get(&entry) {
                        return Err(Error::DuplicateEntry {
                            first: OrdinalPosition::Finite(prefix_len + first),
                            second: OrdinalPosition::Finite(prefix_len + n),
                            value: entry.to_string(),
                        });
                    }
                    gen_seen.insert(entry, n);
                }
                DistinctnessEvidence::HorizonChecked { horizon }
            }
        };

        // Generator alphabet and base. The scan reports exact positions;
        // the symbolic summaries catch anything a bounded scan could miss.
        for n in 1..=generator_count {
            let entry = generator.entry(n, base)?;
            let position = OrdinalPosition::Finite(prefix_len + n);
            if entry.base() != base {
                return Err(Error::BaseMismatch {
                    position,
                    expected: base,
                    found: entry.base(),
                });
            }
            check_alphabet(&entry, &alphabet, position)?;
        }
        if let Some(bad) = generator
            .digit_alphabet()
            .iter()
            .find(|d| !alphabet.contains(d))
        {
            return Err(Error::GeneratorAlphabet { digit: bad.value() });
        }
        let mut embedded_base_clash = None;
        generator.for_each_embedded(&mut |s| {
            if s.base() != base && embedded_base_clash.is_none() {
                embedded_base_clash = Some(s.base());
            }
        });
        if let Some(found) = embedded_base_clash {
            return Err(Error::GeneratorBase {
                expected: base,
                found,
            });
        }

        Ok(TransfiniteList {
            name,
            base,
            alphabet,
            prefix,
            generator,
            tail,
            distinctness,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn alphabet(&self) -> &BTreeSet<Digit> {
        &self.alphabet
    }

    pub fn prefix_len(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn generator(&self) -> &GeneratorFamily {
        &self.generator
    }

    pub fn tail(&self) -> &[PeriodicDigitString] {
        &self.tail
    }

    pub fn distinctness(&self) -> DistinctnessEvidence {
        self.distinctness
    }

    /// Render the order type, `omega` or `omega+k`.
    pub fn order_type(&self) -> String {
        match self.tail.len() {
            0 => "omega".to_string(),
            k => format!("omega+{k}"),
        }
    }

    /// The entry at `position`.
    pub fn entry_at(&self, position: OrdinalPosition) -> Result<PeriodicDigitString> {
        match position {
            OrdinalPosition::Finite(0) => Err(Error::PositionZero),
            OrdinalPosition::Finite(n) => {
                let p = self.prefix_len();
                if n <= p {
                    Ok(self.prefix[(n - 1) as usize].clone())
                } else {
                    self.generator.entry(n - p, self.base)
                }
            }
            OrdinalPosition::Limit(k) => self
                .tail
                .get(k as usize)
                .cloned()
                .ok_or(Error::LimitOutOfRange {
                    index: k,
                    len: self.tail.len(),
                }),
        }
    }

    /// The digit of the entry at finite position `n`, at digit position
    /// `m`, in constant time.
    pub fn row_digit(&self, n: u64, m: u64) -> Result<Digit> {
        if n == 0 || m == 0 {
            return Err(Error::PositionZero);
        }
        let p = self.prefix_len();
        if n <= p {
            self.prefix[(n - 1) as usize].digit_at(m)
        } else {
            self.generator.digit(n - p, m, self.base)
        }
    }

    /// Move the tail to the front, turning `omega + k` into a plain
    /// omega listing: the new list starts with the old tail, continues
    /// with the old prefix, and then runs the same generator. On a list
    /// with an empty tail this is the identity.
    pub fn flatten_to_omega(&self) -> TransfiniteList {
        if self.tail.is_empty() {
            return self.clone();
        }
        let mut prefix = self.tail.clone();
        prefix.extend(self.prefix.iter().cloned());
        TransfiniteList {
            name: self.name.clone(),
            base: self.base,
            alphabet: self.alphabet.clone(),
            prefix,
            generator: self.generator.clone(),
            tail: Vec::new(),
            distinctness: self.distinctness,
        }
    }
}

impl fmt::Debug for TransfiniteList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TransfiniteList({}, base {}, prefix {}, generator {}, tail {}, order type {})",
            self.name,
            self.base,
            self.prefix.len(),
            self.generator,
            self.tail.len(),
            self.order_type()
        )
    }
}

fn check_alphabet(
    entry: &PeriodicDigitString,
    alphabet: &BTreeSet<Digit>,
    position: OrdinalPosition,
) -> Result<()> {
    let k = entry.preperiod().len() as u64;
    let offending = entry
        .preperiod()
        .iter()
        .enumerate()
        .map(|(i, d)| (i as u64 + 1, d))
        .chain(
            entry
                .period()
                .iter()
                .enumerate()
                .map(|(i, d)| (k + i as u64 + 1, d)),
        )
        .find(|(_, d)| !alphabet.contains(d));
    match offending {
        Some((column, d)) => Err(Error::AlphabetViolation {
            position,
            column,
            digit: d.value(),
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::DEFAULT_BASE;

    fn parse(text: &str) -> PeriodicDigitString {
        PeriodicDigitString::parse(text, DEFAULT_BASE).unwrap()
    }

    fn binary_alphabet() -> BTreeSet<Digit> {
        [Digit::ZERO, Digit::ONE].into_iter().collect()
    }

    fn spec(name: &str) -> ListSpec {
        ListSpec {
            name: name.to_string(),
            base: DEFAULT_BASE,
            alphabet: binary_alphabet(),
            prefix: Vec::new(),
            generator: GeneratorFamily::GeometricOnes,
            tail: Vec::new(),
            horizon: 100,
        }
    }

    #[test]
    fn ordinal_positions_order_finite_before_limit() {
        use OrdinalPosition::*;
        assert!(Finite(1_000_000) < Limit(0));
        assert!(Limit(0) < Limit(1));
        assert!(Finite(3) < Finite(4));
        assert_eq!(Limit(0).to_string(), "omega");
        assert_eq!(Limit(2).to_string(), "omega+2");
        assert_eq!(Finite(12).to_string(), "12");
    }

    #[test]
    fn builds_a_list_with_a_tail_and_reads_entries() {
        let mut s = spec("ladder");
        s.tail = vec![parse("0.[1]")];
        let list = TransfiniteList::build(s).unwrap();
        assert_eq!(list.order_type(), "omega+1");
        assert_eq!(list.distinctness(), DistinctnessEvidence::Symbolic);
        assert_eq!(
            list.entry_at(OrdinalPosition::Finite(3)).unwrap(),
            parse("0.111[0]")
        );
        assert_eq!(
            list.entry_at(OrdinalPosition::Limit(0)).unwrap(),
            parse("0.[1]")
        );
        assert_eq!(
            list.entry_at(OrdinalPosition::Limit(1)),
            Err(Error::LimitOutOfRange { index: 1, len: 1 })
        );
        assert_eq!(list.row_digit(4, 4).unwrap(), Digit::ONE);
        assert_eq!(list.row_digit(4, 5).unwrap(), Digit::ZERO);
    }

    #[test]
    fn duplicate_against_the_generator_names_both_positions() {
        let mut s = spec("dup");
        s.tail = vec![parse("0.1[0]")];
        let err = TransfiniteList::build(s).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEntry {
                first: OrdinalPosition::Finite(1),
                second: OrdinalPosition::Limit(0),
                value: "0.1[0]".to_string(),
            }
        );
    }

    #[test]
    fn constant_generator_is_rejected_as_duplicate() {
        let mut s = spec("const");
        s.generator = GeneratorFamily::Constant(parse("0.[1]"));
        let err = TransfiniteList::build(s).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEntry {
                first: OrdinalPosition::Finite(1),
                second: OrdinalPosition::Finite(2),
                value: "0.[1]".to_string(),
            }
        );
    }

    #[test]
    fn alphabet_violations_name_position_and_column() {
        let mut s = spec("alpha");
        s.prefix = vec![parse("0.02[0]")];
        let err = TransfiniteList::build(s).unwrap_err();
        assert_eq!(
            err,
            Error::AlphabetViolation {
                position: OrdinalPosition::Finite(1),
                column: 2,
                digit: 2,
            }
        );
    }

    #[test]
    fn generator_alphabet_violations_are_caught() {
        let mut s = spec("galpha");
        s.generator = GeneratorFamily::Table(vec![parse("0.1[0]"), parse("0.3[0]")]);
        let err = TransfiniteList::build(s).unwrap_err();
        assert_eq!(
            err,
            Error::AlphabetViolation {
                position: OrdinalPosition::Finite(2),
                column: 1,
                digit: 3,
            }
        );
    }

    #[test]
    fn horizon_must_cover_the_prefix() {
        let mut s = spec("short");
        s.prefix = vec![parse("0.01[0]")];
        s.horizon = 1;
        assert_eq!(
            TransfiniteList::build(s).unwrap_err(),
            Error::ValidationHorizonTooSmall {
                given: 1,
                required: 2
            }
        );
    }

    #[test]
    fn table_lists_are_horizon_checked() {
        let mut s = spec("table");
        s.generator = GeneratorFamily::Table(vec![parse("0.1[0]"), parse("0.11[0]")]);
        s.horizon = 2;
        let list = TransfiniteList::build(s).unwrap();
        assert_eq!(
            list.distinctness(),
            DistinctnessEvidence::HorizonChecked { horizon: 2 }
        );
    }

    #[test]
    fn table_duplicates_are_found_by_the_scan() {
        let mut s = spec("tabledup");
        s.generator = GeneratorFamily::Table(vec![
            parse("0.1[0]"),
            parse("0.01[0]"),
            parse("0.1[0]"),
        ]);
        let err = TransfiniteList::build(s).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEntry {
                first: OrdinalPosition::Finite(1),
                second: OrdinalPosition::Finite(3),
                value: "0.1[0]".to_string(),
            }
        );
    }

    #[test]
    fn flatten_moves_the_tail_to_the_front() {
        let mut s = spec("flat");
        s.tail = vec![parse("0.[1]")];
        let list = TransfiniteList::build(s).unwrap();
        let flat = list.flatten_to_omega();
        assert_eq!(flat.order_type(), "omega");
        assert_eq!(
            flat.entry_at(OrdinalPosition::Finite(1)).unwrap(),
            parse("0.[1]")
        );
        assert_eq!(
            flat.entry_at(OrdinalPosition::Finite(2)).unwrap(),
            parse("0.1[0]")
        );
        assert_eq!(flat.row_digit(1, 1).unwrap(), Digit::ONE);

        // identity on a list that is already plain omega
        let plain = TransfiniteList::build(spec("plain")).unwrap();
        let same = plain.flatten_to_omega();
        assert_eq!(
            same.entry_at(OrdinalPosition::Finite(1)).unwrap(),
            plain.entry_at(OrdinalPosition::Finite(1)).unwrap()
        );
        assert_eq!(same.order_type(), "omega");
    }

    #[test]
    fn base_mismatch_is_reported() {
        let mut s = spec("base");
        s.prefix = vec![PeriodicDigitString::parse("0.01[0]", 2).unwrap()];
        let err = TransfiniteList::build(s).unwrap_err();
        assert_eq!(
            err,
            Error::BaseMismatch {
                position: OrdinalPosition::Finite(1),
                expected: 10,
                found: 2,
            }
        );
    }
}
