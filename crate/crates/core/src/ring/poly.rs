use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{CoefficientRing, Rational};

/// Dense polynomial in one formal variable, trailing zeros stripped.
///
/// Used for the renormalization-group time `t`; `Poly<Poly<Rational>>` gives two
/// independent variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<B> {
    coeffs: Vec<B>,
}

impl<B: CoefficientRing> Poly<B> {
    pub fn from_coeffs(coeffs: Vec<B>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: B) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![B::zero(), B::one()])
    }

    /// `c * x^k`
    pub fn monomial(c: B, k: usize) -> Self {
        let mut v = vec![B::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[B] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> B {
        self.coeffs.get(k).cloned().unwrap_or_else(B::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation at `x` in any ring that the coefficients embed into.
    pub fn eval_with<S, F>(&self, x: &S, embed: F) -> S
    where
        S: CoefficientRing,
        F: Fn(&B) -> S,
    {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * B::from_int(k as i64))
            .collect();
        Self::from_coeffs(v)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let needs_parens = cs.contains(' ');
            match k {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !c.is_one() {
                        if needs_parens {
                            write!(f, "({cs})*")?;
                        } else {
                            write!(f, "{cs}*")?;
                        }
                    }
                    if k == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<B: CoefficientRing> fmt::Display for Poly<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "t")
    }
}

impl<B: CoefficientRing> Zero for Poly<B> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<B: CoefficientRing> One for Poly<B> {
    fn one() -> Self {
        Poly::constant(B::one())
    }
}

impl<B: CoefficientRing> Add for Poly<B> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::from_coeffs(long)
    }
}

impl<B: CoefficientRing> Neg for Poly<B> {
    type Output = Self;

    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<B: CoefficientRing> Sub for Poly<B> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<B: CoefficientRing> Mul for Poly<B> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![B::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<B: CoefficientRing> CoefficientRing for Poly<B> {
    fn ring_name() -> String {
        format!("poly<{}>", B::ring_name())
    }

    fn from_rational(q: &Rational) -> Self {
        Poly::constant(B::from_rational(q))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_constant() {
            self.coeff(0).try_inverse().map(Poly::constant)
        } else {
            None
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            self.coeff(0).to_rational()
        } else {
            None
        }
    }
}
