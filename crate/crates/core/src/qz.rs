//! The group `Q/Z`.
//!
//! A root of unity `exp(2πi·q)` is stored as its exponent `q`, reduced into
//! `[0, 1)`. Torsion points of tori and entries of monomial matrices are both
//! built from this type, so no complex floating point ever appears.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qz(BigRational);

impl Qz {
    pub fn new(r: BigRational) -> Self {
        let floor = r.floor();
        Qz(r - floor)
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Qz::new(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Qz(BigRational::zero())
    }

    /// `1/2`, the exponent of `-1`.
    pub fn half() -> Self {
        Qz::from_frac(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_half(&self) -> bool {
        self.0.numer().is_one() && *self.0.denom() == BigInt::from(2)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Order in `Q/Z`: the reduced denominator.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    /// Integer multiple, reduced.
    pub fn scale(&self, k: &BigInt) -> Qz {
        Qz::new(&self.0 * BigRational::from_integer(k.clone()))
    }

    pub fn scale_i64(&self, k: i64) -> Qz {
        self.scale(&BigInt::from(k))
    }

    /// Divides the representative in `[0,1)` by `d`; one of the `d` solutions
    /// of `d·y = self`.
    pub fn div_int(&self, d: &BigInt) -> Qz {
        assert!(!d.is_zero(), "division by zero in Q/Z");
        Qz::new(&self.0 / BigRational::from_integer(d.clone()))
    }
}

impl Default for Qz {
    fn default() -> Self {
        Qz::zero()
    }
}

impl From<BigRational> for Qz {
    fn from(r: BigRational) -> Self {
        Qz::new(r)
    }
}

impl Add for Qz {
    type Output = Qz;
    fn add(self, rhs: Qz) -> Qz {
        Qz::new(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Qz> for &'a Qz {
    type Output = Qz;
    fn add(self, rhs: &Qz) -> Qz {
        Qz::new(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Qz> for Qz {
    fn add_assign(&mut self, rhs: &Qz) {
        *self = Qz::new(&self.0 + &rhs.0);
    }
}

impl Sub for Qz {
    type Output = Qz;
    fn sub(self, rhs: Qz) -> Qz {
        Qz::new(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Qz> for &'a Qz {
    type Output = Qz;
    fn sub(self, rhs: &Qz) -> Qz {
        Qz::new(&self.0 - &rhs.0)
    }
}

impl Neg for Qz {
    type Output = Qz;
    fn neg(self) -> Qz {
        Qz::new(-self.0)
    }
}

impl Neg for &Qz {
    type Output = Qz;
    fn neg(self) -> Qz {
        Qz::new(-&self.0)
    }
}

impl Mul<&Qz> for &BigInt {
    type Output = Qz;
    fn mul(self, rhs: &Qz) -> Qz {
        rhs.scale(self)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Qz {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected rational \"p/q\", got {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Qz::new(BigRational::new(num, den)))
    }
}

impl Serialize for Qz {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Qz {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the orders of a collection of `Q/Z` elements.
pub fn lcm_of_orders<'a>(items: impl IntoIterator<Item = &'a Qz>) -> BigInt {
    items
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(&q.order()))
}
