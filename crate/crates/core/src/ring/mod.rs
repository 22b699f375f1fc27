//! Exact coefficient rings.
//!
//! Everything in the engine is generic over [`CoefficientRing`]. The tower
//! provided here is
//!
//! * [`Rational`]: arbitrary precision rationals, the ground field,
//! * [`Poly`]: polynomials in one formal variable over any ring (nestable),
//! * [`Laurent`]: truncated Laurent series over any ring (nestable).
//!
//! All instances are Q-algebras, so scaling by a rational (`1/n!`, `1/k`) is
//! always available through [`CoefficientRing::from_rational`].

mod laurent;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use laurent::Laurent;
pub use poly::Poly;

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// A commutative unital ring containing the rationals, with exact arithmetic.
pub trait CoefficientRing:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Tag used by the JSON encodings and in diagnostics.
    fn ring_name() -> String;

    /// The image of a rational under the structure map Q -> R.
    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    /// True when the value is zero to every order it is known to.
    ///
    /// Differs from `is_zero` only for truncated series, where a value with no
    /// known nonzero coefficient is not the exact zero.
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    /// The value as a plain rational, if the ring element is one.
    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// `a` and `b` agree on every coefficient both of them determine.
    fn agrees(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).vanishes()
    }
}

impl CoefficientRing for Rational {
    fn ring_name() -> String {
        "rational".to_string()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Shorthand for `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `1/n!` as a rational.
pub fn inverse_factorial(n: u32) -> Rational {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    Rational::new(BigInt::one(), f)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let q: Rational = s.parse().ok()?;
    Some(q)
}
