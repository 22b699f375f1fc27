use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use super::HopfSchema;
use crate::algebra::{Element, Monomial, Tensor};
use crate::error::{HopfError, Result};
use crate::ring::{int, Rational};

type QElement = Element<Rational>;
type QTensor = Tensor<Rational>;

fn cached<K: Eq + Hash + Clone, V>(
    cache: &RwLock<HashMap<K, Arc<V>>>,
    key: &K,
    compute: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>> {
    if let Some(v) = cache.read().expect("memo table poisoned").get(key) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute()?);
    // A concurrent fill computed the same value; keep whichever landed first.
    let mut w = cache.write().expect("memo table poisoned");
    Ok(w.entry(key.clone()).or_insert(v).clone())
}

impl HopfSchema {
    /// `Δm`, extended multiplicatively from the generators.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<Arc<QTensor>> {
        if let Some(v) = self.caches.coproduct.read().expect("memo table poisoned").get(m) {
            return Ok(v.clone());
        }
        self.check_degree(m.y_degree(), || format!("coproduct of {m}"))?;
        cached(&self.caches.coproduct, m, || {
            if m.is_one() {
                return Ok(QTensor::unit(2));
            }
            if let Some(g) = m.as_generator() {
                let mut t = self.generator_reduced_coproduct(g)?;
                t.add_term(vec![m.clone(), Monomial::one()], int(1));
                t.add_term(vec![Monomial::one(), m.clone()], int(1));
                return Ok(t);
            }
            let (g, e) = m.factors()[0].clone();
            let head = Monomial::generator(g.clone());
            let rest = Monomial::from_factors(std::iter::once((g, e - 1)).chain(m.factors()[1..].iter().cloned()));
            self.coproduct_monomial(&head)?.mul(&*self.coproduct_monomial(&rest)?)
        })
    }

    pub fn coproduct(&self, h: &QElement) -> Result<QTensor> {
        let mut out = QTensor::zero(2);
        for (m, c) in h.terms() {
            out = out.add(&self.coproduct_monomial(m)?.scale(c))?;
        }
        Ok(out)
    }

    /// `Δm - m⊗1 - 1⊗m` for a monomial of positive degree.
    pub fn reduced_coproduct_monomial(&self, m: &Monomial) -> Result<QTensor> {
        if m.is_one() {
            return Err(HopfError::Domain(
                "reduced coproduct needs an element of the augmentation ideal (counit 0)".into(),
            ));
        }
        let mut t = (*self.coproduct_monomial(m)?).clone();
        t.add_term(vec![m.clone(), Monomial::one()], -int(1));
        t.add_term(vec![Monomial::one(), m.clone()], -int(1));
        Ok(t)
    }

    /// `Δh - h⊗1 - 1⊗h`; `h` must have counit zero.
    pub fn reduced_coproduct(&self, h: &QElement) -> Result<QTensor> {
        if !h.counit().is_zero() {
            return Err(HopfError::Domain(format!(
                "reduced coproduct needs an element of the augmentation ideal, but counit({h}) = {}",
                h.counit()
            )));
        }
        let mut out = QTensor::zero(2);
        for (m, c) in h.terms() {
            out = out.add(&self.reduced_coproduct_monomial(m)?.scale(c))?;
        }
        Ok(out)
    }

    /// `Δ^(n) m` of rank `n + 1`, with `Δ^(0) = id`.
    pub fn iterated_coproduct_monomial(&self, m: &Monomial, n: usize) -> Result<Arc<QTensor>> {
        cached(&self.caches.iterated, &(m.clone(), n), || {
            if n == 0 {
                return Ok(QTensor::pure(vec![m.clone()], int(1)));
            }
            let prev = self.iterated_coproduct_monomial(m, n - 1)?;
            prev.expand_leg(n - 1, |x| Ok((*self.coproduct_monomial(x)?).clone()))
        })
    }

    pub fn iterated_coproduct(&self, h: &QElement, n: usize) -> Result<QTensor> {
        let mut out = QTensor::zero(n + 1);
        for (m, c) in h.terms() {
            out = out.add(&self.iterated_coproduct_monomial(m, n)?.scale(c))?;
        }
        Ok(out)
    }

    /// The part of `Δ^(n) m` with every leg of positive degree, obtained by
    /// iterating the reduced coproduct on the last leg. Zero for `m = 1`.
    pub fn reduced_iterated_coproduct_monomial(&self, m: &Monomial, n: usize) -> Result<Arc<QTensor>> {
        cached(&self.caches.reduced_iterated, &(m.clone(), n), || {
            if m.is_one() {
                return Ok(QTensor::zero(n + 1));
            }
            if n == 0 {
                return Ok(QTensor::pure(vec![m.clone()], int(1)));
            }
            // Legs have degree >= 1 each, so nothing survives once n + 1 > deg m.
            if n as u32 + 1 > m.y_degree() {
                return Ok(QTensor::zero(n + 1));
            }
            let prev = self.reduced_iterated_coproduct_monomial(m, n - 1)?;
            prev.expand_leg(n - 1, |x| self.reduced_coproduct_monomial(x))
        })
    }

    /// The antipode by the right recursion `S h = -h - h' S(h'')`.
    pub fn antipode_monomial(&self, m: &Monomial) -> Result<Arc<QElement>> {
        if let Some(v) = self.caches.antipode_right.read().expect("memo table poisoned").get(m) {
            return Ok(v.clone());
        }
        cached(&self.caches.antipode_right, m, || {
            if m.is_one() {
                return Ok(QElement::one());
            }
            let mut out = -QElement::monomial(m.clone());
            for (legs, c) in self.reduced_coproduct_monomial(m)?.terms() {
                let s = self.antipode_monomial(&legs[1])?;
                let left = QElement::term(legs[0].clone(), c.clone());
                out = &out - &(&left * &*s);
            }
            Ok(out)
        })
    }

    /// The antipode by the left recursion `S h = -h - S(h') h''`.
    pub fn antipode_left_monomial(&self, m: &Monomial) -> Result<Arc<QElement>> {
        if let Some(v) = self.caches.antipode_left.read().expect("memo table poisoned").get(m) {
            return Ok(v.clone());
        }
        cached(&self.caches.antipode_left, m, || {
            if m.is_one() {
                return Ok(QElement::one());
            }
            let mut out = -QElement::monomial(m.clone());
            for (legs, c) in self.reduced_coproduct_monomial(m)?.terms() {
                let s = self.antipode_left_monomial(&legs[0])?;
                let right = QElement::term(legs[1].clone(), c.clone());
                out = &out - &(&*s * &right);
            }
            Ok(out)
        })
    }

    pub fn antipode(&self, h: &QElement) -> Result<QElement> {
        let mut out = QElement::zero();
        for (m, c) in h.terms() {
            out = &out + &self.antipode_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    pub fn antipode_left(&self, h: &QElement) -> Result<QElement> {
        let mut out = QElement::zero();
        for (m, c) in h.terms() {
            out = &out + &self.antipode_left_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// Checks every generator of `h` against the schema.
    pub fn check_element<R>(&self, h: &Element<R>) -> Result<()>
    where
        R: crate::ring::CoefficientRing,
    {
        h.terms().try_for_each(|(m, _)| self.check_monomial(m))
    }
}

/// Applies the antipode to every leg of a tensor.
pub fn antipode_on_legs(schema: &HopfSchema, t: &QTensor) -> Result<QTensor> {
    let mut out = t.clone();
    for leg in 0..t.rank() {
        out = out.map_leg(leg, |m| Ok((*schema.antipode_monomial(m)?).clone()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;

    fn t(n: u32) -> Monomial {
        Monomial::generator(Generator::new(&format!("t{n}"), n))
    }

    #[test]
    fn ladder_coproduct_t2() {
        let s = HopfSchema::ladder();
        assert_eq!(
            s.coproduct_monomial(&t(2)).unwrap().to_string(),
            "1 ⊗ t2 + t1 ⊗ t1 + t2 ⊗ 1"
        );
        assert_eq!(s.coproduct_monomial(&Monomial::one()).unwrap().to_string(), "1 ⊗ 1");
    }

    #[test]
    fn coproduct_of_square() {
        let s = HopfSchema::ladder();
        let sq = t(1).mul(&t(1));
        let d = s.coproduct_monomial(&sq).unwrap();
        assert_eq!(d.coeff(&[t(1), t(1)]), int(2));
        assert_eq!(d.coeff(&[sq.clone(), Monomial::one()]), int(1));
        assert_eq!(d.coeff(&[Monomial::one(), sq]), int(1));
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn reduced_coproduct_of_product() {
        let s = HopfSchema::ladder();
        let m = t(1).mul(&t(2));
        let r = s.reduced_coproduct_monomial(&m).unwrap();
        let sq = t(1).mul(&t(1));
        let mut expected = QTensor::zero(2);
        expected.add_term(vec![t(1), t(2)], int(1));
        expected.add_term(vec![t(2), t(1)], int(1));
        expected.add_term(vec![sq.clone(), t(1)], int(1));
        expected.add_term(vec![t(1), sq], int(1));
        assert_eq!(r, expected);
    }

    #[test]
    fn reduced_coproduct_rejects_nonzero_counit() {
        let s = HopfSchema::ladder();
        assert!(matches!(
            s.reduced_coproduct(&QElement::one()),
            Err(HopfError::Domain(_))
        ));
    }

    #[test]
    fn iterated_coproduct_t1() {
        let s = HopfSchema::ladder();
        let d = s.iterated_coproduct_monomial(&t(1), 2).unwrap();
        assert_eq!(d.to_string(), "1 ⊗ 1 ⊗ t1 + 1 ⊗ t1 ⊗ 1 + t1 ⊗ 1 ⊗ 1");
        assert_eq!(
            *s.iterated_coproduct_monomial(&t(3), 0).unwrap(),
            QTensor::pure(vec![t(3)], int(1))
        );
    }

    #[test]
    fn antipode_examples() {
        let s = HopfSchema::ladder();
        assert_eq!(s.antipode_monomial(&Monomial::one()).unwrap().to_string(), "1");
        assert_eq!(s.antipode_monomial(&t(1)).unwrap().to_string(), "-t1");
        assert_eq!(s.antipode_monomial(&t(2)).unwrap().to_string(), "-t2 + t1^2");
        assert_eq!(s.antipode_left_monomial(&t(2)).unwrap().to_string(), "-t2 + t1^2");
    }

    #[test]
    fn left_and_right_antipodes_agree_to_degree_6() {
        let s = HopfSchema::ladder();
        for m in s.basis_up_to(6).unwrap() {
            assert_eq!(
                s.antipode_monomial(&m).unwrap(),
                s.antipode_left_monomial(&m).unwrap(),
                "{m}"
            );
        }
    }

    #[test]
    fn reduced_iterated_matches_projection() {
        let s = HopfSchema::ladder();
        for m in s.basis_up_to(5).unwrap().into_iter().skip(1) {
            for n in 0..4 {
                let full = s.iterated_coproduct_monomial(&m, n).unwrap().augmentation_part();
                assert_eq!(*s.reduced_iterated_coproduct_monomial(&m, n).unwrap(), full);
            }
        }
    }
}
