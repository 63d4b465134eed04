//! Arbitrary precision rationals restricted to `[0, 1)`.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A nonnegative rational strictly below one, reduced to lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigUint,
    den: BigUint,
}

impl Rational {
    /// Reduce `num / den` and check it lies in `[0, 1)`.
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num >= den {
            return Err(Error::RationalNotBelowOne {
                value: format!("{num}/{den}"),
            });
        }
        let g = num.gcd(&den);
        Ok(Rational {
            num: &num / &g,
            den: &den / &g,
        })
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self> {
        Self::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn zero() -> Self {
        Rational {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact sum, or `None` when the sum leaves `[0, 1)`.
    pub fn checked_add(&self, other: &Rational) -> Option<Rational> {
        let num = &self.num * &other.den + &other.num * &self.den;
        let den = &self.den * &other.den;
        Rational::new(num, den).ok()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Rational", 2)?;
        st.serialize_field("numerator", &self.num.to_string())?;
        st.serialize_field("denominator", &self.den.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_reduces() {
        let r = Rational::from_u64(25, 100).unwrap();
        assert_eq!(r.to_string(), "1/4");
        assert!(Rational::from_u64(0, 7).unwrap().is_zero());
    }

    #[test]
    fn domain_is_enforced() {
        assert_eq!(Rational::from_u64(1, 0), Err(Error::ZeroDenominator));
        assert!(matches!(
            Rational::from_u64(5, 5),
            Err(Error::RationalNotBelowOne { .. })
        ));
        assert!(matches!(
            Rational::from_u64(7, 5),
            Err(Error::RationalNotBelowOne { .. })
        ));
    }

    #[test]
    fn ordering_is_by_value() {
        let a = Rational::from_u64(1, 3).unwrap();
        let b = Rational::from_u64(2, 5).unwrap();
        assert!(a < b);
        assert_eq!(a.cmp(&a), Ordering::Equal);
    }

    #[test]
    fn checked_add_respects_the_domain() {
        let a = Rational::from_u64(1, 4).unwrap();
        let b = Rational::from_u64(1, 2).unwrap();
        assert_eq!(a.checked_add(&b).unwrap(), Rational::from_u64(3, 4).unwrap());
        assert_eq!(b.checked_add(&b), None);
    }
}
