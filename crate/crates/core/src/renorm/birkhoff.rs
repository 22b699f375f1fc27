//! Algebraic Birkhoff decomposition of a Laurent-valued character with the
//! minimal-subtraction projector.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Monomial;
use crate::dual::{basis_pairs, Functional};
use crate::error::{HopfError, Result};
use crate::hopf::{AxiomReport, HopfSchema};
use crate::ring::{CoefficientRing, Laurent};

/// Minimal subtraction `T`: the strictly negative powers of `eps`. It is a
/// Rota–Baxter operator, `T(ab) + T(a)T(b) = T(T(a) b + a T(b))`.
pub fn rota_baxter_t<B: CoefficientRing>(x: &Laurent<B>) -> Laurent<B> {
    x.pole_part()
}

/// `φ = φ₋^{-1} ∗ φ₊` with `φ₋` in the pole parts and `φ₊` regular, both as
/// tables on the monomial basis up to `max_degree`.
#[derive(Clone, Debug)]
pub struct BirkhoffPair<B> {
    pub max_degree: u32,
    pub minus: Functional<Laurent<B>>,
    pub plus: Functional<Laurent<B>>,
    /// Lowest truncation order among the computed values; `None` when every
    /// value is exact.
    pub certified_order: Option<i32>,
}

/// Largest pole order and smallest truncation order among the generator
/// values of `phi` up to `max_degree`.
pub fn pole_budget<B: CoefficientRing>(
    schema: &HopfSchema,
    phi: &Functional<Laurent<B>>,
    max_degree: u32,
) -> Result<(u32, Option<i32>)> {
    let mut pole = 0;
    let mut trunc: Option<i32> = None;
    for g in schema.generators_up_to(max_degree)? {
        let v = phi.eval_monomial(&Monomial::generator(g))?;
        pole = pole.max(v.pole_order());
        if let Some(n) = v.truncation() {
            trunc = Some(trunc.map_or(n, |t: i32| t.min(n)));
        }
    }
    Ok((pole, trunc))
}

/// The truncation order the generator values must reach for the
/// decomposition to be exact through `eps^0` on every monomial of degree
/// `<= max_degree`, given generator poles of order at most `pole`.
pub fn required_truncation(max_degree: u32, pole: u32) -> i32 {
    (max_degree.saturating_sub(1) * pole) as i32
}

/// Computes `φ₋(h) = −T[φ(h) + Σ φ₋(h')φ(h'')]` and
/// `φ₊(h) = (id − T)[φ(h) + Σ φ₋(h')φ(h'')]` on every basis monomial up to
/// `max_degree`, degree by degree.
///
/// Under-resolved input is rejected with the order it would need.
pub fn birkhoff_decompose<B: CoefficientRing>(
    schema: &HopfSchema,
    phi: &Functional<Laurent<B>>,
    max_degree: u32,
) -> Result<BirkhoffPair<B>> {
    if !matches!(phi, Functional::Character { .. }) {
        return Err(HopfError::Domain(format!(
            "Birkhoff decomposition needs a character, got a {}",
            phi.kind()
        )));
    }
    let (pole, trunc) = pole_budget(schema, phi, max_degree)?;
    let required = required_truncation(max_degree, pole);
    if let Some(n) = trunc {
        if n < required {
            return Err(HopfError::InsufficientTruncation {
                context: format!("Birkhoff decomposition to degree {max_degree} with poles of order {pole}"),
                required,
                available: n,
            });
        }
    }
    let mut minus: BTreeMap<Monomial, Laurent<B>> = BTreeMap::new();
    let mut plus: BTreeMap<Monomial, Laurent<B>> = BTreeMap::new();
    let mut certified: Option<i32> = None;
    for m in schema.basis_up_to(max_degree)? {
        if m.is_one() {
            minus.insert(m.clone(), Laurent::one());
            plus.insert(m, Laurent::one());
            continue;
        }
        let mut bar = phi.eval_monomial(&m)?;
        for (legs, c) in schema.reduced_coproduct_monomial(&m)?.terms() {
            let left = &minus[&legs[0]];
            let right = phi.eval_monomial(&legs[1])?;
            bar = bar + left.clone() * right * Laurent::from_rational(c);
        }
        let pm = -rota_baxter_t(&bar);
        let pp = bar + pm.clone();
        if let Some(n) = pp.truncation() {
            certified = Some(certified.map_or(n, |c: i32| c.min(n)));
        }
        minus.insert(m.clone(), pm);
        plus.insert(m, pp);
    }
    Ok(BirkhoffPair {
        max_degree,
        minus: Functional::Table {
            values: minus.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            limit: Some(max_degree),
        },
        plus: Functional::Table {
            values: plus.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            limit: Some(max_degree),
        },
        certified_order: certified,
    })
}

/// First monomial where `(φ₋ ∘ S) ∗ φ₊` differs from `φ`.
pub fn reconstruction_witness<B: CoefficientRing>(
    schema: &HopfSchema,
    phi: &Functional<Laurent<B>>,
    minus: &Functional<Laurent<B>>,
    plus: &Functional<Laurent<B>>,
    max_degree: u32,
) -> Result<Option<String>> {
    for m in schema.basis_up_to(max_degree)? {
        if let Some(w) = reconstruction_at(schema, phi, minus, plus, &m)? {
            return Ok(Some(format!("on {m}: {w}")));
        }
    }
    Ok(None)
}

fn reconstruction_at<B: CoefficientRing>(
    schema: &HopfSchema,
    phi: &Functional<Laurent<B>>,
    minus: &Functional<Laurent<B>>,
    plus: &Functional<Laurent<B>>,
    m: &Monomial,
) -> Result<Option<String>> {
    let mut acc = Laurent::<B>::zero();
    for (legs, c) in schema.coproduct_monomial(m)?.terms() {
        let s = minus.eval(&*schema.antipode_monomial(&legs[0])?)?;
        if s.is_zero() {
            continue;
        }
        acc = acc + s * plus.eval_monomial(&legs[1])? * Laurent::from_rational(c);
    }
    let want = phi.eval_monomial(m)?;
    Ok((!acc.agrees(&want)).then(|| format!("(φ₋∘S) ∗ φ₊ gives {acc} but φ gives {want}")))
}

/// Checks multiplicativity, the pole/regular ranges and the reconstruction
/// `φ = (φ₋ ∘ S) ∗ φ₊` on the basis.
pub fn verify_birkhoff<B: CoefficientRing>(
    schema: &HopfSchema,
    phi: &Functional<Laurent<B>>,
    pair: &BirkhoffPair<B>,
) -> Result<AxiomReport> {
    let d = pair.max_degree;
    let basis = schema.basis_up_to(d)?;
    let pairs = basis_pairs(schema, d)?;
    let mut r = AxiomReport::default();
    for (name, law, f) in [
        ("minus-multiplicative", "φ₋(ab) = φ₋(a)φ₋(b)", &pair.minus),
        ("plus-multiplicative", "φ₊(ab) = φ₊(a)φ₊(b)", &pair.plus),
    ] {
        r.run(
            name,
            law,
            d,
            std::iter::once(None).chain(pairs.iter().map(Some)),
            |p| p.map_or("1".into(), |(a, b)| format!("({a})*({b})")),
            |p| match p {
                None => {
                    let v = f.eval_monomial(&Monomial::one())?;
                    Ok((!v.agrees(&Laurent::one())).then(|| format!("value on 1 is {v}")))
                }
                Some((a, b)) => {
                    let lhs = f.eval_monomial(&a.mul(b))?;
                    let rhs = f.eval_monomial(a)? * f.eval_monomial(b)?;
                    Ok((!lhs.agrees(&rhs)).then(|| format!("{lhs}  !=  {rhs}")))
                }
            },
        );
    }
    let positive: Vec<&Monomial> = basis.iter().filter(|m| !m.is_one()).collect();
    r.run(
        "minus-range",
        "φ₋(h) has only negative powers of eps for h in H⁺",
        d,
        positive.iter(),
        |m| m.to_string(),
        |m| {
            let v = pair.minus.eval_monomial(m)?;
            let bad = v.terms().any(|(e, _)| e >= 0);
            Ok(bad.then(|| format!("φ₋({m}) = {v}")))
        },
    );
    r.run(
        "plus-range",
        "φ₊(h) has no negative powers of eps",
        d,
        basis.iter(),
        |m| m.to_string(),
        |m| {
            let v = pair.plus.eval_monomial(m)?;
            let bad = v.terms().any(|(e, _)| e < 0);
            Ok(bad.then(|| format!("φ₊({m}) = {v}")))
        },
    );
    r.run(
        "reconstruction",
        "φ = (φ₋∘S) ∗ φ₊",
        d,
        basis.iter(),
        |m| m.to_string(),
        |m| reconstruction_at(schema, phi, &pair.minus, &pair.plus, m),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::ring::{int, Rational};

    type L = Laurent<Rational>;

    fn g(n: u32) -> Generator {
        Generator::new(&format!("t{n}"), n)
    }

    fn t(n: u32) -> Monomial {
        Monomial::generator(g(n))
    }

    #[test]
    fn t_examples() {
        let x = L::exact([(-1, int(1)), (0, int(2)), (1, int(1))]);
        assert_eq!(rota_baxter_t(&x), L::monomial(int(1), -1));
        assert!(rota_baxter_t(&L::constant(int(3))).is_zero());
        let a = L::exact([(-1, int(1)), (0, int(1))]);
        let b = L::exact([(-1, int(1)), (0, int(-1))]);
        let lhs = rota_baxter_t(&(a.clone() * b.clone())) + rota_baxter_t(&a) * rota_baxter_t(&b);
        let rhs = rota_baxter_t(&(rota_baxter_t(&a) * b.clone() + a.clone() * rota_baxter_t(&b)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn primitive_generator() {
        let s = HopfSchema::ladder();
        let phi = Functional::character([(g(1), L::monomial(int(1), -1))]);
        let p = birkhoff_decompose(&s, &phi, 3).unwrap();
        assert_eq!(p.minus.eval_monomial(&t(1)).unwrap(), L::monomial(int(-1), -1));
        assert!(p.plus.eval_monomial(&t(1)).unwrap().is_zero());

        let phi = Functional::character([(g(1), L::exact([(-1, int(1)), (0, int(5))]))]);
        let p = birkhoff_decompose(&s, &phi, 3).unwrap();
        assert_eq!(p.minus.eval_monomial(&t(1)).unwrap(), L::monomial(int(-1), -1));
        assert_eq!(p.plus.eval_monomial(&t(1)).unwrap(), L::constant(int(5)));
    }

    #[test]
    fn worked_t2_example() {
        let s = HopfSchema::ladder();
        let phi = Functional::character([(g(1), L::monomial(int(1), -1)), (g(2), L::monomial(int(1), -2))]);
        let p = birkhoff_decompose(&s, &phi, 2).unwrap();
        assert!(p.minus.eval_monomial(&t(2)).unwrap().is_zero());
        assert!(p.plus.eval_monomial(&t(2)).unwrap().is_zero());
        assert_eq!(p.certified_order, None);
        let r = verify_birkhoff(&s, &phi, &p).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn under_resolved_input_reports_required_order() {
        let s = HopfSchema::ladder();
        let v = L::truncated([(-2, int(1))], 1);
        let phi = Functional::character([(g(1), v)]);
        match birkhoff_decompose(&s, &phi, 3) {
            Err(HopfError::InsufficientTruncation {
                required, available, ..
            }) => {
                assert_eq!(required, 4);
                assert_eq!(available, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn truncated_input_within_budget() {
        let s = HopfSchema::ladder();
        let phi = Functional::character([
            (
                g(1),
                L::truncated([(-1, int(1)), (0, int(2)), (1, int(3)), (2, int(1))], 4),
            ),
            (g(2), L::truncated([(-2, int(1)), (1, int(-1))], 4)),
            (g(3), L::truncated([(-1, int(4))], 5)),
        ]);
        let p = birkhoff_decompose(&s, &phi, 3).unwrap();
        let order = p.certified_order.unwrap();
        assert!((0..4).contains(&order), "{order}");
        assert!(verify_birkhoff(&s, &phi, &p).unwrap().all_passed());
    }

    #[test]
    fn perturbed_minus_breaks_reconstruction() {
        let s = HopfSchema::ladder();
        let phi = Functional::character([(g(1), L::monomial(int(1), -1)), (g(2), L::monomial(int(3), -2))]);
        let p = birkhoff_decompose(&s, &phi, 3).unwrap();
        let Functional::Table { mut values, limit } = p.minus.clone() else {
            unreachable!()
        };
        let slot = values.entry(t(2)).or_insert_with(L::zero);
        *slot = slot.clone() + L::monomial(int(1), -1);
        let bad = Functional::Table { values, limit };
        assert!(reconstruction_witness(&s, &phi, &bad, &p.plus, 3).unwrap().is_some());
        assert!(reconstruction_witness(&s, &phi, &p.minus, &p.plus, 3)
            .unwrap()
            .is_none());
    }
}
