//! Addresses of vertices in ternary trees and their triadic intervals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// A word over `{0, 1, 2}` naming the path from the root of a ternary tree:
/// `0` goes left, `1` goes straight down, `2` goes right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(Vec<u8>);

impl Address {
    /// The empty word, i.e. the root.
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn from_digits(digits: &[u8]) -> Result<Self, Error> {
        if let Some(&d) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidAddress(format!("digit {d} is not in {{0,1,2}}")));
        }
        Ok(Address(digits.to_vec()))
    }

    /// `digit` repeated `n` times.
    pub fn repeat(digit: u8, n: usize) -> Self {
        assert!(digit <= 2);
        Address(vec![digit; n])
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u8) -> Self {
        assert!(i <= 2);
        let mut v = self.0.clone();
        v.push(i);
        Address(v)
    }

    pub fn concat(&self, other: &Address) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Address(v)
    }

    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(Address(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Prefix order: `self ⪯ other` iff `other = self·γ`.
    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The suffix γ with `other = self·γ`, if `self ⪯ other`.
    pub fn strip_prefix_of(&self, other: &Address) -> Option<Address> {
        other.0.strip_prefix(self.0.as_slice()).map(|s| Address(s.to_vec()))
    }

    pub fn comparable(&self, other: &Address) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The sub-interval of `[0,1]` this address names.
    pub fn interval(&self) -> TriadicInterval {
        let mut lo = BigInt::zero();
        for &d in &self.0 {
            lo = lo * 3 + BigInt::from(d);
        }
        let den = BigInt::from(3).pow(self.0.len() as u32);
        TriadicInterval { lo: BigRational::new(lo.clone(), den.clone()), hi: BigRational::new(lo + 1, den) }
    }
}

impl fmt::Display for Address {
    /// Digits, or `e` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "e" || s.is_empty() {
            return Ok(Address::root());
        }
        let digits = s
            .bytes()
            .map(|b| match b {
                b'0'..=b'2' => Ok(b - b'0'),
                _ => Err(Error::InvalidAddress(format!("unexpected character in {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Address(digits))
    }
}

impl serde::Serialize for Address {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Address {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A closed interval `[lo, hi] ⊆ [0,1]` with triadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriadicInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl TriadicInterval {
    pub fn unit() -> Self {
        TriadicInterval { lo: BigRational::zero(), hi: BigRational::one() }
    }

    pub fn length(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_interval(&self, other: &TriadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Whether `q` lies strictly inside the interval.
    pub fn contains_interior(&self, q: &BigRational) -> bool {
        &self.lo < q && q < &self.hi
    }
}

impl fmt::Display for TriadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn intervals() {
        assert_eq!(Address::root().interval(), TriadicInterval::unit());
        let i = "1".parse::<Address>().unwrap().interval();
        assert_eq!((i.lo, i.hi), (q(1, 3), q(2, 3)));
        // 0 → [0,1/3], 02 → [2/9,1/3], 021 → [2/9 + 1/27, 2/9 + 2/27]
        let i = "021".parse::<Address>().unwrap().interval();
        assert_eq!((i.lo, i.hi), (q(7, 27), q(8, 27)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("e".parse::<Address>().unwrap(), Address::root());
        assert_eq!(Address::root().to_string(), "e");
        assert_eq!("1120".parse::<Address>().unwrap().to_string(), "1120");
        assert!("13".parse::<Address>().is_err());
        assert!(Address::from_digits(&[0, 3]).is_err());
    }

    #[test]
    fn prefix_order() {
        let a: Address = "02".parse().unwrap();
        let b: Address = "0211".parse().unwrap();
        assert!(a.is_prefix_of(&b));
        assert!(!b.is_prefix_of(&a));
        assert!(a.is_prefix_of(&a));
        assert_eq!(a.strip_prefix_of(&b).unwrap().to_string(), "11");
        assert!(!a.comparable(&"1".parse().unwrap()));
    }
}
