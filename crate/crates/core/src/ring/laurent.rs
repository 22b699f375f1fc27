use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{CoefficientRing, Rational};
use crate::error::{HopfError, Result};

/// Laurent series in a formal variable (`eps` when printed) with an explicit
/// truncation order.
///
/// `truncation == None` marks an exact Laurent polynomial. With
/// `truncation == Some(n)` the coefficients at exponents `> n` are unknown and
/// every operation propagates the tightest order at which its result is still
/// exact. Zero coefficients are never stored and no stored exponent exceeds the
/// truncation, so derived equality is equality of canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<B> {
    coeffs: BTreeMap<i32, B>,
    truncation: Option<i32>,
}

fn min_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<B: CoefficientRing> Laurent<B> {
    pub fn exact(coeffs: impl IntoIterator<Item = (i32, B)>) -> Self {
        Self::build(coeffs, None)
    }

    pub fn truncated(coeffs: impl IntoIterator<Item = (i32, B)>, truncation: i32) -> Self {
        Self::build(coeffs, Some(truncation))
    }

    fn build(coeffs: impl IntoIterator<Item = (i32, B)>, truncation: Option<i32>) -> Self {
        let mut map: BTreeMap<i32, B> = BTreeMap::new();
        for (e, c) in coeffs {
            if truncation.is_some_and(|n| e > n) {
                continue;
            }
            let slot = map.entry(e).or_insert_with(B::zero);
            *slot = slot.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Laurent {
            coeffs: map,
            truncation,
        }
    }

    /// `c * eps^e`, exact.
    pub fn monomial(c: B, e: i32) -> Self {
        Self::exact([(e, c)])
    }

    pub fn constant(c: B) -> Self {
        Self::monomial(c, 0)
    }

    /// `O(eps^(n+1))`: nothing known beyond the fact that there is no pole.
    pub fn unknown_above(n: i32) -> Self {
        Laurent {
            coeffs: BTreeMap::new(),
            truncation: Some(n),
        }
    }

    pub fn truncation(&self) -> Option<i32> {
        self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &B)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// A lower bound for the true valuation; `None` only for the exact zero.
    pub fn valuation_bound(&self) -> Option<i32> {
        match (self.valuation(), self.truncation) {
            (Some(v), _) => Some(v),
            (None, Some(n)) => Some(n + 1),
            (None, None) => None,
        }
    }

    /// Order of the pole at zero (0 when there is none).
    pub fn pole_order(&self) -> u32 {
        self.valuation().map_or(0, |v| (-v).max(0) as u32)
    }

    /// Coefficient of `eps^e`; errors when `e` lies beyond the truncation.
    pub fn coeff(&self, e: i32) -> Result<B> {
        if let Some(n) = self.truncation {
            if e > n {
                return Err(HopfError::BeyondTruncation {
                    exponent: e,
                    truncation: n,
                });
            }
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(B::zero))
    }

    /// Minimal subtraction: keeps the strictly negative powers.
    pub fn pole_part(&self) -> Self {
        let truncation = match self.truncation {
            Some(n) if n < -1 => Some(n),
            _ => None,
        };
        Laurent {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| **e < 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            truncation,
        }
    }

    /// The complement of [`Laurent::pole_part`]: the powers `>= 0`.
    pub fn regular_part(&self) -> Self {
        Laurent {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| **e >= 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    /// Forgets every coefficient above `order`.
    pub fn truncate(&self, order: i32) -> Self {
        let truncation = Some(min_opt(self.truncation, Some(order)).unwrap_or(order));
        Self::build(self.coeffs.clone(), truncation)
    }

    pub fn map_coeffs<C: CoefficientRing>(&self, f: impl Fn(&B) -> C) -> Laurent<C> {
        Laurent::build(self.coeffs.iter().map(|(e, c)| (*e, f(c))), self.truncation)
    }

    /// Multiplicative inverse, computed to `order` (further limited by the
    /// input's own truncation). Needs an invertible leading coefficient.
    pub fn invert(&self, order: i32) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or_else(|| HopfError::Singular("series has no known nonzero coefficient".into()))?;
        let lead_inv = self.coeffs[&v]
            .try_inverse()
            .ok_or_else(|| HopfError::Singular(format!("leading coefficient {} is not invertible", self.coeffs[&v])))?;
        // the input determines the unit part to relative order n - v
        let out_trunc = match self.truncation {
            Some(n) => order.min(n - 2 * v),
            None => order,
        };
        let len = out_trunc + v;
        if len < 0 {
            return Ok(Laurent::unknown_above(out_trunc));
        }
        let unit: Vec<B> = (0..=len)
            .map(|k| self.coeffs.get(&(k + v)).cloned().unwrap_or_else(B::zero))
            .collect();
        let mut inv: Vec<B> = Vec::with_capacity(len as usize + 1);
        inv.push(lead_inv.clone());
        for k in 1..=len as usize {
            let mut acc = B::zero();
            for j in 1..=k {
                if !unit[j].is_zero() {
                    acc = acc + unit[j].clone() * inv[k - j].clone();
                }
            }
            inv.push(-(lead_inv.clone() * acc));
        }
        Ok(Laurent::truncated(
            inv.into_iter().enumerate().map(|(k, c)| (k as i32 - v, c)),
            out_trunc,
        ))
    }
}

impl<B: CoefficientRing> Zero for Laurent<B> {
    fn zero() -> Self {
        Laurent {
            coeffs: BTreeMap::new(),
            truncation: None,
        }
    }

    /// Only the exact zero; see [`CoefficientRing::vanishes`].
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.truncation.is_none()
    }
}

impl<B: CoefficientRing> One for Laurent<B> {
    fn one() -> Self {
        Laurent::constant(B::one())
    }
}

impl<B: CoefficientRing> Add for Laurent<B> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let truncation = min_opt(self.truncation, rhs.truncation);
        let mut coeffs = self.coeffs;
        for (e, c) in rhs.coeffs {
            let slot = coeffs.entry(e).or_insert_with(B::zero);
            *slot = slot.clone() + c;
        }
        if let Some(n) = truncation {
            coeffs.retain(|e, _| *e <= n);
        }
        coeffs.retain(|_, c| !c.is_zero());
        Laurent { coeffs, truncation }
    }
}

impl<B: CoefficientRing> Neg for Laurent<B> {
    type Output = Self;

    fn neg(self) -> Self {
        Laurent {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
            truncation: self.truncation,
        }
    }
}

impl<B: CoefficientRing> Sub for Laurent<B> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<B: CoefficientRing> Mul for Laurent<B> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (Some(vx), Some(vy)) = (self.valuation_bound(), rhs.valuation_bound()) else {
            return Self::zero();
        };
        // unknown terms of one factor meet the lowest term of the other
        let truncation = min_opt(self.truncation.map(|n| n + vy), rhs.truncation.map(|n| n + vx));
        let mut coeffs: BTreeMap<i32, B> = BTreeMap::new();
        for (ea, a) in &self.coeffs {
            for (eb, b) in &rhs.coeffs {
                let e = ea + eb;
                if truncation.is_some_and(|n| e > n) {
                    continue;
                }
                let slot = coeffs.entry(e).or_insert_with(B::zero);
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Laurent { coeffs, truncation }
    }
}

impl<B: CoefficientRing> CoefficientRing for Laurent<B> {
    fn ring_name() -> String {
        if B::ring_name() == "rational" {
            "laurent".to_string()
        } else {
            format!("laurent<{}>", B::ring_name())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        Laurent::constant(B::from_rational(q))
    }

    fn try_inverse(&self) -> Option<Self> {
        // only exact monomials have exact inverses
        if self.is_exact() && self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next()?;
            return Some(Laurent::monomial(c.try_inverse()?, -e));
        }
        None
    }

    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn to_rational(&self) -> Option<Rational> {
        if !self.is_exact() {
            return None;
        }
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).and_then(|c| c.to_rational()),
            _ => None,
        }
    }
}

impl<B: CoefficientRing> fmt::Display for Laurent<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &self.coeffs {
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            let var = match *e {
                0 => String::new(),
                1 => "eps".to_string(),
                e => format!("eps^{e}"),
            };
            parts.push(match (cs.as_str(), var.is_empty()) {
                (_, true) => cs,
                ("1", false) => var,
                ("-1", false) => format!("-{var}"),
                (_, false) => format!("{cs}*{var}"),
            });
        }
        if let Some(n) = self.truncation {
            parts.push(format!("O(eps^{})", n + 1));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    type L = Laurent<Rational>;

    fn eps(e: i32) -> L {
        L::monomial(int(1), e)
    }

    #[test]
    fn inverse_pole_times_eps_is_one() {
        assert_eq!(eps(-1) * eps(1), L::one());
    }

    #[test]
    fn geometric_inverse() {
        let x = L::exact([(0, int(1)), (1, int(1))]);
        let inv = x.invert(3).unwrap();
        assert_eq!(
            inv,
            L::truncated([(0, int(1)), (1, int(-1)), (2, int(1)), (3, int(-1))], 3)
        );
        assert!((inv * x).agrees(&L::one()));
    }

    #[test]
    fn inverse_respects_input_truncation() {
        // eps^-1 (2 + eps + O(eps^3)): unit part known to relative order 3
        let x = L::truncated([(-1, int(2)), (0, int(1))], 1);
        let inv = x.invert(10).unwrap();
        assert_eq!(inv.truncation(), Some(3));
        assert_eq!(inv.coeff(1).unwrap(), rat(1, 2));
        assert_eq!(inv.coeff(2).unwrap(), rat(-1, 4));
        assert!((inv * x).agrees(&L::one()));
    }

    #[test]
    fn singular_inverse() {
        assert!(matches!(L::zero().invert(3), Err(HopfError::Singular(_))));
        assert!(matches!(L::unknown_above(2).invert(3), Err(HopfError::Singular(_))));
    }

    #[test]
    fn pole_part_split() {
        let x = L::exact([(-1, int(1)), (0, int(2)), (1, int(1))]);
        assert_eq!(x.pole_part(), eps(-1));
        assert_eq!(x.regular_part(), L::exact([(0, int(2)), (1, int(1))]));
        assert_eq!(L::constant(int(3)).pole_part(), L::zero());
    }

    #[test]
    fn product_truncation_is_sound() {
        // (1/eps + O(eps^2)) * (1/eps^2 + O(eps)): exact up to eps^(2-2) and eps^(1-1)
        let a = L::truncated([(-1, int(1))], 2);
        let b = L::truncated([(-2, int(1))], 1);
        let p = a * b;
        assert_eq!(p.truncation(), Some(0));
        assert_eq!(p.coeff(-3).unwrap(), int(1));
        assert!(matches!(p.coeff(1), Err(HopfError::BeyondTruncation { .. })));
    }

    #[test]
    fn sum_takes_min_truncation() {
        let a = L::truncated([(0, int(1)), (3, int(1))], 5);
        let b = L::truncated([(1, int(1))], 2);
        let s = a + b;
        assert_eq!(s.truncation(), Some(2));
        assert_eq!(s, L::truncated([(0, int(1)), (1, int(1))], 2));
    }

    #[test]
    fn display() {
        let x = L::truncated([(-1, int(1)), (0, rat(-1, 2))], 3);
        assert_eq!(x.to_string(), "eps^-1 + -1/2 + O(eps^4)");
    }
}
