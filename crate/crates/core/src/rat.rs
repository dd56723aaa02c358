//! Exact rational scalars and coordinate vectors.
//!
//! Every quantity in this crate is a [`Rat`] (arbitrary-precision rational);
//! no floating point is used anywhere. [`RatVec`] is the universal currency
//! for divisor, curve and surface classes: a coordinate vector in a fixed
//! lattice basis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d` (`d != 0`).
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the wire syntax for rationals: optional sign, integer, optional
/// `/` followed by a positive integer. No whitespace, no other forms.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Input(format!("malformed rational {s:?}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num_digits = num_str.strip_prefix(['+', '-']).unwrap_or(num_str);
    if num_digits.is_empty() || !num_digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigInt::from_str(num_str).map_err(|_| bad())?;
    let den = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den = BigInt::from_str(d).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            den
        }
    };
    Ok(Rat::new(num, den))
}

/// Formats a rational in the wire syntax (`-3`, `9/10`, ...).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An exact rational coordinate vector in a fixed lattice basis.
///
/// Dimensionless class coordinates; the basis is carried by the surrounding
/// context (a pairing, a polarized space, a case-study dataset).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVec {
    coords: Vec<Rat>,
}

impl RatVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        RatVec { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RatVec::new(coords.iter().copied().map(rat).collect())
    }

    pub fn zero(dim: usize) -> Self {
        RatVec::new(vec![Rat::zero(); dim])
    }

    /// Parses a vector of wire-syntax rationals.
    pub fn parse<S: AsRef<str>>(entries: &[S]) -> Result<Self> {
        entries
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(RatVec::new)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec::new(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec::new(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, c: &Rat) -> RatVec {
        RatVec::new(self.iter().map(|a| a * c).collect())
    }

    /// `self + c * other`, the workhorse of exact elimination.
    pub fn add_scaled(&self, c: &Rat, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    /// Scales by a positive rational so that all entries are integers with
    /// gcd 1. Ray direction is preserved; the zero vector is returned as is.
    pub fn primitive_ray(&self) -> RatVec {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n.abs()));
        RatVec::new(ints.into_iter().map(|n| Rat::from_integer(n / &gcd)).collect())
    }

    /// Canonical primitive form: integer entries with gcd 1 and the first
    /// nonzero entry positive. This may flip the ray direction, so it is
    /// only used where a sign-free representative is wanted.
    pub fn canonical_signed(&self) -> RatVec {
        let p = self.primitive_ray();
        match p.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => p.scaled(&(-Rat::one())),
            _ => p,
        }
    }

    /// Entries as wire-syntax strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rat).collect()
    }

    pub fn expect_dim(&self, dim: usize, what: &str) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{what}: expected {dim} coordinates, got {}",
                self.dim()
            )))
        }
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_wire_syntax() {
        assert_eq!(parse_rat("9/10").unwrap(), ratio(9, 10));
        assert_eq!(parse_rat("-3").unwrap(), rat(-3));
        assert_eq!(parse_rat("+7/2").unwrap(), ratio(7, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat(" 1").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("3/").is_err());
    }

    #[test]
    fn format_round_trips() {
        for s in ["0", "-3", "9/10", "-27/4"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        // non-canonical input normalizes
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
    }

    #[test]
    fn primitive_ray_keeps_direction() {
        let v = RatVec::parse(&["1/2", "0", "-3/2"]).unwrap();
        assert_eq!(v.primitive_ray(), RatVec::from_ints(&[1, 0, -3]));
        let w = RatVec::parse(&["-2", "4"]).unwrap();
        assert_eq!(w.primitive_ray(), RatVec::from_ints(&[-1, 2]));
        assert_eq!(w.canonical_signed(), RatVec::from_ints(&[1, -2]));
    }
}
