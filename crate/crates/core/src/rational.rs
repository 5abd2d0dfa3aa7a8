//! Exact rational scalars and coordinate vectors.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`. Decimals are rejected.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let valid_int = |t: &str, allow_sign: bool| {
        let digits = if allow_sign { t.strip_prefix('-').unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return None;
    }
    let n = BigInt::from_str(num).ok()?;
    let d = match den {
        Some(d) if valid_int(d, false) => BigInt::from_str(d).ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Formats in lowest terms: `3`, `-1/2`.
pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

pub(crate) fn de_q<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
}

pub(crate) fn ser_qs<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(format_rational))
}

pub(crate) fn de_qs<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
    let v = Vec::<String>::deserialize(d)?;
    v.iter()
        .map(|s| parse_rational(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))))
        .collect()
}

/// Exact coordinate vector in `Q^d`.
///
/// Ordering is lexicographic on coordinates, which is what keys the
/// canonical monomial order of a [`VectorField`](crate::VectorField).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Q>);

impl RationalVector {
    pub fn new(coords: Vec<Q>) -> Self {
        RationalVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Q::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Q::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn dot(&self, other: &Self) -> Q {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, k: &Q) -> Self {
        RationalVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: &Q, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Sum of all coordinates (total stoichiometric molecularity for a complex).
    pub fn coordinate_sum(&self) -> Q {
        self.0.iter().fold(Q::zero(), |acc, c| acc + c)
    }

    /// Positive rescaling to a primitive integer vector; zero stays zero.
    /// Two vectors are positively parallel iff their primitive forms agree.
    pub fn primitive(&self) -> Self {
        let lcm_den = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Q::from_integer(lcm_den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        RationalVector(ints.into_iter().map(|c| Q::from_integer(c / &g)).collect())
    }

    /// Line representative: the primitive vector whose first nonzero
    /// coordinate is positive, plus the sign relating `self` to it.
    pub fn line_representative(&self) -> (Self, i8) {
        let p = self.primitive();
        match p.0.iter().find(|c| !c.is_zero()) {
            Some(first) if first.is_negative() => (-p, -1),
            Some(_) => (p, 1),
            None => (p, 0),
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Q> {
        self.0.iter()
    }
}

impl Index<usize> for RationalVector {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl<'a> Add for &'a RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub for &'a RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_qs(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        de_qs(d).map(RationalVector)
    }
}

/// Builds a vector from integer literals: `rv![1, 0, 2]`.
#[macro_export]
macro_rules! rv {
    ($($x:expr),* $(,)?) => {
        $crate::RationalVector::from_ints(&[$($x as i64),*])
    };
}
