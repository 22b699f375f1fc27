use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Generator, Monomial};
use crate::ring::{CoefficientRing, Rational};

/// A polynomial in the generators: a sparse map from monomials to nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<R> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: CoefficientRing> Element<R> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: R) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, R::one())
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial::generator(g))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Accumulates `c * m`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every coefficient vanishes to the order it is known.
    pub fn vanishes(&self) -> bool {
        self.terms.values().all(|c| c.vanishes())
    }

    pub fn agrees(&self, other: &Self) -> bool {
        (self - other).vanishes()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// The counit: the coefficient of the unit monomial.
    pub fn counit(&self) -> R {
        self.coeff(&Monomial::one())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }

    pub fn map_coeffs<S: CoefficientRing>(&self, f: impl Fn(&R) -> S) -> Element<S> {
        Element::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Multiplies each monomial's coefficient by `f(y-degree)`.
    pub fn scale_by_degree(&self, f: impl Fn(u32) -> R) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * f(m.y_degree()))))
    }

    /// The y-degree if the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::y_degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn component(&self, degree: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y_degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::y_degree).max()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Element<Rational> {
    pub fn lift<S: CoefficientRing>(&self) -> Element<S> {
        self.map_coeffs(S::from_rational)
    }
}

impl<R: CoefficientRing> Default for Element<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: CoefficientRing> Add for &Element<R> {
    type Output = Element<R>;

    fn add(self, rhs: &Element<R>) -> Element<R> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<R: CoefficientRing> Sub for &Element<R> {
    type Output = Element<R>;

    fn sub(self, rhs: &Element<R>) -> Element<R> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<R: CoefficientRing> Neg for &Element<R> {
    type Output = Element<R>;

    fn neg(self) -> Element<R> {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<R: CoefficientRing> Mul for &Element<R> {
    type Output = Element<R>;

    fn mul(self, rhs: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<R: CoefficientRing> $tr for Element<R> {
            type Output = Element<R>;

            fn $f(self, rhs: Element<R>) -> Element<R> {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: CoefficientRing> Neg for Element<R> {
    type Output = Element<R>;

    fn neg(self) -> Element<R> {
        -&self
    }
}

impl<R: CoefficientRing> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (negative, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    type E = Element<Rational>;

    fn t(n: u32) -> E {
        E::generator(Generator::new(&format!("t{n}"), n))
    }

    #[test]
    fn symmetric_square() {
        let t1 = t(1);
        assert_eq!((&t1 * &t1).to_string(), "t1^2");
    }

    #[test]
    fn unit_law() {
        let h = &t(1) + &(&t(2) * &t(3));
        assert_eq!(&E::one() * &h, h);
    }

    #[test]
    fn distributivity() {
        let lhs = &(&t(1) + &t(2)) * &t(1);
        assert_eq!(lhs.to_string(), "t1^2 + t1*t2");
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = &t(1) - &t(1);
        assert!(x.is_zero());
    }

    #[test]
    fn counit_reads_unit_coefficient() {
        let h = &E::constant(int(5)) + &(&t(1) * &t(2)).scale(&int(2));
        assert_eq!(h.counit(), int(5));
        assert_eq!(t(3).counit(), int(0));
    }

    #[test]
    fn display_signs() {
        let h = &(-&t(2)) + &(&t(1) * &t(1));
        assert_eq!(h.to_string(), "-t2 + t1^2");
    }
}
