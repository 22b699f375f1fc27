use std::collections::BTreeMap;
use std::fmt;

use super::{Element, Monomial};
use crate::error::{HopfError, Result};
use crate::ring::{CoefficientRing, Rational};

/// An element of the `rank`-fold tensor power of the algebra, stored flat as a
/// sparse map from monomial tuples to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<R> {
    rank: usize,
    terms: BTreeMap<Vec<Monomial>, R>,
}

impl<R: CoefficientRing> Tensor<R> {
    pub fn zero(rank: usize) -> Self {
        Tensor {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ ... ⊗ 1`
    pub fn unit(rank: usize) -> Self {
        Self::pure(vec![Monomial::one(); rank], R::one())
    }

    pub fn pure(legs: Vec<Monomial>, c: R) -> Self {
        let mut t = Self::zero(legs.len());
        t.add_term(legs, c);
        t
    }

    /// A rank-1 tensor is just an element.
    pub fn from_element(h: &Element<R>) -> Self {
        let mut t = Self::zero(1);
        for (m, c) in h.terms() {
            t.add_term(vec![m.clone()], c.clone());
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, legs: Vec<Monomial>, c: R) {
        debug_assert_eq!(legs.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&legs) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&legs);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(legs, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &R)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
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

    pub fn vanishes(&self) -> bool {
        self.terms.values().all(|c| c.vanishes())
    }

    pub fn coeff(&self, legs: &[Monomial]) -> R {
        self.terms.get(legs).cloned().unwrap_or_else(R::zero)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(HopfError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Tensor {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn agrees(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.vanishes())
    }

    /// Componentwise product: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                let legs = ka.iter().zip(kb).map(|(x, y)| x.mul(y)).collect();
                out.add_term(legs, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// Reorders legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rank {
            return Err(HopfError::RankMismatch {
                left: self.rank,
                right: perm.len(),
            });
        }
        let mut out = Self::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_term(perm.iter().map(|&i| k[i].clone()).collect(), c.clone());
        }
        Ok(out)
    }

    /// The flip `a ⊗ b -> b ⊗ a` on rank-2 tensors.
    pub fn swap(&self) -> Result<Self> {
        if self.rank != 2 {
            return Err(HopfError::RankMismatch {
                left: self.rank,
                right: 2,
            });
        }
        self.permute(&[1, 0])
    }

    /// Replaces leg `leg` by the image of a linear map given on monomials.
    /// The map's output may itself be a tensor, so ranks can grow
    /// (`(Δ ⊗ id)` is `expand_leg(0, coproduct)`).
    pub fn expand_leg<F>(&self, leg: usize, f: F) -> Result<Self>
    where
        F: Fn(&Monomial) -> Result<Tensor<R>>,
    {
        let mut out: Option<Self> = None;
        for (k, c) in &self.terms {
            let image = f(&k[leg])?;
            let out = out.get_or_insert_with(|| Self::zero(self.rank - 1 + image.rank));
            for (ik, ic) in &image.terms {
                let mut legs = Vec::with_capacity(out.rank);
                legs.extend_from_slice(&k[..leg]);
                legs.extend(ik.iter().cloned());
                legs.extend_from_slice(&k[leg + 1..]);
                out.add_term(legs, c.clone() * ic.clone());
            }
        }
        Ok(out.unwrap_or_else(|| Self::zero(self.rank)))
    }

    /// Applies a linear endomorphism (given on monomials) to one leg.
    pub fn map_leg<F>(&self, leg: usize, f: F) -> Result<Self>
    where
        F: Fn(&Monomial) -> Result<Element<R>>,
    {
        let mut out = Self::zero(self.rank);
        for (k, c) in &self.terms {
            for (m, x) in f(&k[leg])?.terms() {
                let mut legs = k.clone();
                legs[leg] = m.clone();
                out.add_term(legs, c.clone() * x.clone());
            }
        }
        Ok(out)
    }

    /// Multiplies all legs together.
    pub fn contract(&self) -> Element<R> {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            let m = k.iter().fold(Monomial::one(), |acc, x| acc.mul(x));
            out.add_term(m, c.clone());
        }
        out
    }

    /// Multilinear contraction `Σ coeff · Π f_i(leg_i)` against one linear
    /// form per leg.
    pub fn pair<S, F>(&self, forms: &[F]) -> Result<S>
    where
        S: CoefficientRing,
        R: Into<S>,
        F: Fn(&Monomial) -> Result<S>,
    {
        self.pair_with(|c| c.clone().into(), forms)
    }

    /// As [`Tensor::pair`] with an explicit embedding of the coefficients.
    pub fn pair_with<S, F>(&self, embed: impl Fn(&R) -> S, forms: &[F]) -> Result<S>
    where
        S: CoefficientRing,
        F: Fn(&Monomial) -> Result<S>,
    {
        if forms.len() != self.rank {
            return Err(HopfError::RankMismatch {
                left: self.rank,
                right: forms.len(),
            });
        }
        let mut acc = S::zero();
        'terms: for (k, c) in &self.terms {
            let mut prod = embed(c);
            for (f, m) in forms.iter().zip(k) {
                let v = f(m)?;
                if v.is_zero() {
                    continue 'terms;
                }
                prod = prod * v;
            }
            acc = acc + prod;
        }
        Ok(acc)
    }

    pub fn map_coeffs<S: CoefficientRing>(&self, f: impl Fn(&R) -> S) -> Tensor<S> {
        let mut out = Tensor::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Drops every term with a unit leg (projection onto the augmentation
    /// ideal in each factor).
    pub fn augmentation_part(&self) -> Self {
        Tensor {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().all(|m| !m.is_one()))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Tensor<Rational> {
    pub fn lift<S: CoefficientRing>(&self) -> Tensor<S> {
        self.map_coeffs(S::from_rational)
    }
}

impl<R: CoefficientRing> fmt::Display for Tensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let legs: Vec<String> = k.iter().map(|m| m.to_string()).collect();
            let body = legs.join(" ⊗ ");
            let cs = c.to_string();
            let (negative, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs),
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag == "1" {
                write!(f, "{body}")?;
            } else if mag.contains(' ') {
                write!(f, "({mag})*{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

/// Convenience: `Tensor::unit(rank)` scaled.
pub fn scalar_tensor<R: CoefficientRing>(rank: usize, c: R) -> Tensor<R> {
    if c.is_one() {
        Tensor::unit(rank)
    } else {
        Tensor::unit(rank).scale(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::ring::int;

    type T = Tensor<Rational>;

    fn t(n: u32) -> Monomial {
        Monomial::generator(Generator::new(&format!("t{n}"), n))
    }

    fn one() -> Monomial {
        Monomial::one()
    }

    #[test]
    fn componentwise_product() {
        let a = T::pure(vec![t(1), one()], int(1));
        let b = T::pure(vec![one(), t(1)], int(1));
        assert_eq!(a.mul(&b).unwrap(), T::pure(vec![t(1), t(1)], int(1)));
        assert_eq!(T::unit(2).mul(&a).unwrap(), a);
    }

    #[test]
    fn binomial_square_of_primitive() {
        let prim = T::pure(vec![t(1), one()], int(1))
            .add(&T::pure(vec![one(), t(1)], int(1)))
            .unwrap();
        let sq = prim.mul(&prim).unwrap();
        let t1sq = t(1).mul(&t(1));
        let mut expected = T::pure(vec![t1sq.clone(), one()], int(1));
        expected.add_term(vec![t(1), t(1)], int(2));
        expected.add_term(vec![one(), t1sq], int(1));
        assert_eq!(sq, expected);
    }

    #[test]
    fn rank_mismatch_rejected() {
        assert!(matches!(
            T::unit(2).mul(&T::unit(3)),
            Err(HopfError::RankMismatch { .. })
        ));
    }

    #[test]
    fn swap_is_involution() {
        let mut u = T::pure(vec![t(1), t(2)], int(3));
        u.add_term(vec![t(2), t(2)], int(-1));
        assert_eq!(u.swap().unwrap().coeff(&[t(2), t(1)]), int(3));
        assert_eq!(u.swap().unwrap().swap().unwrap(), u);
        let sym = T::pure(vec![t(1), t(1)], int(1));
        assert_eq!(sym.swap().unwrap(), sym);
    }

    #[test]
    fn pairing_bilinear() {
        // <Z ⊗ Z, t1 ⊗ t1> with Z(t1) = c
        let c = int(7);
        let z = |m: &Monomial| -> Result<Rational> { Ok(if *m == t(1) { c.clone() } else { int(0) }) };
        let u = T::pure(vec![t(1), t(1)], int(1));
        assert_eq!(u.pair(&[z, z]).unwrap(), int(49));
        let counit = |m: &Monomial| -> Result<Rational> { Ok(if m.is_one() { int(1) } else { int(0) }) };
        assert_eq!(T::unit(2).pair(&[counit, counit]).unwrap(), int(1));
    }
}
