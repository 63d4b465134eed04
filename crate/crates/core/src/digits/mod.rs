//! Canonical eventually periodic digit expansions in `[0, 1)`.
//!
//! A [`PeriodicDigitString`] is a preperiod followed by an infinitely
//! repeated period, both written in a fixed base. Construction always
//! canonicalizes, so two strings compare equal exactly when they denote the
//! same value in the same base. The canonical form has:
//!
//! * a primitive period (it is not a repetition of a shorter word),
//! * a minimal preperiod (its last digit differs from the last period
//!   digit, or it is empty),
//! * no all-`base-1` period; `0.0[9]` in base ten is restated as `0.1[0]`
//!   by carrying, and an expansion equal to one is rejected outright.
//!
//! Values are always exact. [`PeriodicDigitString::to_rational`] and
//! [`PeriodicDigitString::from_rational`] convert losslessly in both
//! directions, and [`PeriodicDigitString::digit_at`] reads any one-based
//! position in constant time.
//!
//! The textual notation puts the period in brackets: `0.01[0]` is one one
//! hundredth, `0.[1]` is one ninth, `0.[01]` is one ninety-ninth.

mod rational;

pub use rational::Rational;

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Base used when a context does not say otherwise.
pub const DEFAULT_BASE: u32 = 10;

/// Largest base the one-character-per-digit notation can express.
pub const MAX_BASE: u32 = 36;

/// A single digit. The containing structure fixes the base; the digit only
/// stores its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit(u8);

impl Digit {
    pub const ZERO: Digit = Digit(0);
    pub const ONE: Digit = Digit(1);

    /// Validate `value` against `base`.
    pub fn new(value: u8, base: u32) -> Result<Self> {
        check_base(base)?;
        if u32::from(value) >= base {
            return Err(Error::DigitOutOfBase {
                digit: value,
                base,
            });
        }
        Ok(Digit(value))
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    fn to_char(self) -> char {
        std::char::from_digit(u32::from(self.0), MAX_BASE).expect("digit below 36")
    }
}

impl fmt::Debug for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl Serialize for Digit {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_u8(self.0)
    }
}

fn check_base(base: u32) -> Result<()> {
    if (2..=MAX_BASE).contains(&base) {
        Ok(())
    } else {
        Err(Error::UnsupportedBase(base))
    }
}

/// An eventually periodic digit expansion of a value in `[0, 1)`, kept in
/// canonical form. See the module documentation for the canonical shape.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicDigitString {
    base: u32,
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

impl PeriodicDigitString {
    /// Canonicalize `preperiod` and `period` in `base`.
    ///
    /// Rejects an empty period, digits at or above the base, and
    /// expansions whose value reaches one (for example `0.[9]` in base
    /// ten).
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>, base: u32) -> Result<Self> {
        check_base(base)?;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        for d in preperiod.iter().chain(period.iter()) {
            if u32::from(d.value()) >= base {
                return Err(Error::DigitOutOfBase {
                    digit: d.value(),
                    base,
                });
            }
        }

        let mut pre: Vec<u8> = preperiod.iter().map(|d| d.value()).collect();
        let mut per: Vec<u8> = period.iter().map(|d| d.value()).collect();

        reduce_to_primitive(&mut per);

        // An all-(base-1) period denotes the same value as a terminating
        // expansion one step up; restate it by carrying. After primitive
        // reduction such a period is the single digit base-1.
        let top = (base - 1) as u8;
        if per == [top] {
            let mut carried = false;
            for d in pre.iter_mut().rev() {
                if *d == top {
                    *d = 0;
                } else {
                    *d += 1;
                    carried = true;
                    break;
                }
            }
            if !carried {
                return Err(Error::ValueReachesOne);
            }
            per = vec![0];
        }

        // Minimal preperiod: absorb trailing digits that merely restate the
        // end of the period by rotating the period under them.
        while let Some(&last) = pre.last() {
            if last == *per.last().expect("period nonempty") {
                pre.pop();
                per.rotate_right(1);
            } else {
                break;
            }
        }

        Ok(PeriodicDigitString {
            base,
            preperiod: pre.into_iter().map(Digit).collect(),
            period: per.into_iter().map(Digit).collect(),
        })
    }

    /// Canonicalize raw digit values. Convenience over [`Self::new`].
    pub fn from_digit_values(preperiod: &[u8], period: &[u8], base: u32) -> Result<Self> {
        check_base(base)?;
        let pre = preperiod
            .iter()
            .map(|&v| Digit::new(v, base))
            .collect::<Result<Vec<_>>>()?;
        let per = period
            .iter()
            .map(|&v| Digit::new(v, base))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pre, per, base)
    }

    /// The zero expansion `0.[0]`.
    pub fn zero(base: u32) -> Result<Self> {
        Self::from_digit_values(&[], &[0], base)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    pub fn is_zero(&self) -> bool {
        self.preperiod.is_empty() && self.period == [Digit::ZERO]
    }

    /// The digit at one-based position `n`, in constant time.
    pub fn digit_at(&self, n: u64) -> Result<Digit> {
        if n == 0 {
            return Err(Error::PositionZero);
        }
        let k = self.preperiod.len() as u64;
        if n <= k {
            return Ok(self.preperiod[(n - 1) as usize]);
        }
        let m = self.period.len() as u64;
        Ok(self.period[((n - k - 1) % m) as usize])
    }

    /// Every digit value that occurs anywhere in the expansion.
    pub fn digits_used(&self) -> BTreeSet<Digit> {
        self.preperiod
            .iter()
            .chain(self.period.iter())
            .copied()
            .collect()
    }

    /// The exact value as a rational in `[0, 1)`.
    ///
    /// With preperiod value `A` over `k` digits and period value `C` over
    /// `m` digits, the value is `(A * (b^m - 1) + C) / (b^k * (b^m - 1))`.
    pub fn to_rational(&self) -> Rational {
        let b = BigUint::from(self.base);
        let k = self.preperiod.len() as u32;
        let m = self.period.len() as u32;
        let a = digits_value(&self.preperiod, self.base);
        let c = digits_value(&self.period, self.base);
        let period_scale = b.pow(m) - BigUint::from(1u8);
        let num = a * &period_scale + c;
        let den = b.pow(k) * period_scale;
        Rational::new(num, den).expect("canonical expansions denote values below one")
    }

    /// The canonical expansion of `value` in `base`, by long division with
    /// remainder tracking.
    pub fn from_rational(value: &Rational, base: u32) -> Result<Self> {
        check_base(base)?;
        let den = value.denominator();
        let mut rem = value.numerator().clone();
        let mut digits: Vec<u8> = Vec::new();
        let mut seen: HashMap<BigUint, usize> = HashMap::new();
        loop {
            if rem.is_zero() {
                return Self::from_digit_values(&digits, &[0], base);
            }
            if let Some(&start) = seen.get(&rem) {
                let per = digits.split_off(start);
                return Self::from_digit_values(&digits, &per, base);
            }
            seen.insert(rem.clone(), digits.len());
            rem *= base;
            let (q, r) = rem.div_rem(den);
            digits.push(q.to_u8().expect("long division digit fits in a byte"));
            rem = r;
        }
    }

    /// Parse bracket notation such as `0.01[0]` in the given base.
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        check_base(base)?;
        let err = |at: usize, message: &str| Error::Notation {
            at,
            message: message.to_string(),
        };
        let rest = text
            .strip_prefix("0.")
            .ok_or_else(|| err(0, "expected the prefix '0.'"))?;
        let open = rest
            .find('[')
            .ok_or_else(|| err(text.len(), "expected '[' before the period digits"))?;
        let close = rest
            .find(']')
            .ok_or_else(|| err(text.len(), "expected ']' after the period digits"))?;
        if close != rest.len() - 1 || close < open {
            return Err(err(2 + close, "']' must end the notation"));
        }
        let digit_values = |s: &str, offset: usize| -> Result<Vec<u8>> {
            s.char_indices()
                .map(|(i, ch)| {
                    let v = ch
                        .to_digit(MAX_BASE)
                        .ok_or_else(|| err(offset + i, "not a digit"))?;
                    if v >= base {
                        return Err(Error::DigitOutOfBase {
                            digit: v as u8,
                            base,
                        });
                    }
                    Ok(v as u8)
                })
                .collect()
        };
        let pre = digit_values(&rest[..open], 2)?;
        let per = digit_values(&rest[open + 1..close], 2 + open + 1)?;
        Self::from_digit_values(&pre, &per, base)
    }
}

impl fmt::Display for PeriodicDigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        for d in &self.preperiod {
            write!(f, "{}", d.to_char())?;
        }
        write!(f, "[")?;
        for d in &self.period {
            write!(f, "{}", d.to_char())?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PeriodicDigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (base {})", self, self.base)
    }
}

impl Serialize for PeriodicDigitString {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// Interpret `digits` as an integer written in `base`.
fn digits_value(digits: &[Digit], base: u32) -> BigUint {
    let mut acc = BigUint::zero();
    for d in digits {
        acc = acc * base + BigUint::from(d.value());
    }
    acc
}

/// Replace `period` with its shortest word whose repetition spells it.
fn reduce_to_primitive(period: &mut Vec<u8>) {
    let len = period.len();
    for d in 1..=len / 2 {
        if len % d != 0 {
            continue;
        }
        if period.chunks(d).all(|chunk| chunk == &period[..d]) {
            period.truncate(d);
            return;
        }
    }
}
