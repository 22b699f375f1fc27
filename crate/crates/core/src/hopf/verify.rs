//! Exhaustive checks of the Hopf algebra axioms on the monomial basis up to a
//! degree cutoff. Failures are reported with a concrete input, never thrown.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::grading::{apply_theta, apply_theta_tensor, apply_y, apply_y_tensor};
use super::linalg::nullspace;
use super::ops::antipode_on_legs;
use super::HopfSchema;
use crate::algebra::{Element, Monomial, Tensor};
use crate::error::Result;
use crate::ring::Rational;

type QElement = Element<Rational>;
type QTensor = Tensor<Rational>;

/// A failing input, written in the expression syntax accepted by the CLI.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub law: String,
    pub max_degree: u32,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Runs `test` on each case until one fails. `Ok(Some(detail))` and `Err`
    /// are both failures.
    pub fn run<C>(
        &mut self,
        axiom: &str,
        law: &str,
        max_degree: u32,
        cases: impl IntoIterator<Item = C>,
        describe: impl Fn(&C) -> String,
        test: impl Fn(&C) -> Result<Option<String>>,
    ) {
        let mut count = 0;
        let mut counterexample = None;
        for case in cases {
            count += 1;
            let outcome = match test(&case) {
                Ok(v) => v,
                Err(e) => Some(format!("error: {e}")),
            };
            if let Some(detail) = outcome {
                counterexample = Some(Counterexample {
                    input: describe(&case),
                    detail,
                });
                break;
            }
        }
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            law: law.to_string(),
            max_degree,
            cases: count,
            passed: counterexample.is_none(),
            counterexample,
        });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }
}

/// `Some(detail)` when the two sides differ.
fn differ<T: PartialEq + std::fmt::Display>(lhs: &T, rhs: &T) -> Option<String> {
    (lhs != rhs).then(|| format!("{lhs}  !=  {rhs}"))
}

fn mono(m: &Monomial) -> QElement {
    QElement::monomial(m.clone())
}

fn pair_input(a: &Monomial, b: &Monomial) -> String {
    format!("({a})*({b})")
}

fn contract_with(t: &QTensor, leg: usize, schema: &HopfSchema) -> Result<QElement> {
    Ok(t.map_leg(leg, |m| Ok((*schema.antipode_monomial(m)?).clone()))?
        .contract())
}

/// `(ε ⊗ id)` or `(id ⊗ ε)` on a rank-2 tensor, as an element.
fn counit_leg(t: &QTensor, leg: usize) -> QElement {
    let keep = 1 - leg;
    QElement::from_terms(
        t.terms()
            .filter(|(legs, _)| legs[leg].is_one())
            .map(|(legs, c)| (legs[keep].clone(), c.clone())),
    )
}

/// Primitive elements of degree `d`: the kernel of the reduced coproduct on
/// the degree-`d` basis.
pub fn primitives(schema: &HopfSchema, d: u32) -> Result<Vec<QElement>> {
    let basis = schema.basis(d)?;
    let mut index: BTreeMap<Vec<Monomial>, usize> = BTreeMap::new();
    let mut columns = Vec::new();
    for m in &basis {
        let r = schema.reduced_coproduct_monomial(m)?;
        let mut col = Vec::new();
        for (legs, c) in r.terms() {
            let n = index.len();
            let i = *index.entry(legs.to_vec()).or_insert(n);
            col.push((i, c.clone()));
        }
        columns.push(col);
    }
    let mut rows = vec![vec![Rational::zero(); basis.len()]; index.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            rows[i][j] = c;
        }
    }
    Ok(nullspace(&rows, basis.len())
        .into_iter()
        .map(|v| QElement::from_terms(basis.iter().cloned().zip(v)))
        .collect())
}

/// Checks every axiom on the basis up to `max_degree`. `theta_order` is the
/// truncation order in `z` of the formal `θ_z` checks.
pub fn verify_axioms(schema: &HopfSchema, max_degree: u32, theta_order: u32) -> Result<AxiomReport> {
    let d = max_degree;
    let basis = schema.basis_up_to(d)?;
    let positive: Vec<Monomial> = basis.iter().filter(|m| !m.is_one()).cloned().collect();
    let pairs: Vec<(Monomial, Monomial)> = basis
        .iter()
        .flat_map(|a| {
            basis
                .iter()
                .filter(move |b| a.y_degree() + b.y_degree() <= d)
                .map(move |b| (a.clone(), b.clone()))
        })
        .collect();
    let triples: Vec<(Monomial, Monomial, Monomial)> = pairs
        .iter()
        .flat_map(|(a, b)| {
            basis
                .iter()
                .filter(move |c| a.y_degree() + b.y_degree() + c.y_degree() <= d)
                .map(move |c| (a.clone(), b.clone(), c.clone()))
        })
        .collect();
    let show = |m: &Monomial| m.to_string();
    let show_pair = |p: &(Monomial, Monomial)| pair_input(&p.0, &p.1);
    let delta = |m: &Monomial| -> Result<QTensor> { Ok((*schema.coproduct_monomial(m)?).clone()) };
    let one = QElement::one();
    let mut r = AxiomReport::default();

    r.run(
        "associativity",
        "(ab)c = a(bc)",
        d,
        triples,
        |(a, b, c)| format!("({a})*({b})*({c})"),
        |(a, b, c)| {
            let (a, b, c) = (mono(a), mono(b), mono(c));
            Ok(differ(&(&(&a * &b) * &c), &(&a * &(&b * &c))))
        },
    );
    r.run(
        "unit",
        "1·a = a = a·1",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let a = mono(m);
            Ok(differ(&(&one * &a), &a).or_else(|| differ(&(&a * &one), &a)))
        },
    );
    r.run(
        "coassociativity",
        "(Δ⊗id)Δ = (id⊗Δ)Δ",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let dm = delta(m)?;
            let lhs = dm.expand_leg(0, delta)?;
            let rhs = dm.expand_leg(1, delta)?;
            Ok(differ(&lhs, &rhs))
        },
    );
    r.run(
        "counit",
        "(ε⊗id)Δ = id = (id⊗ε)Δ",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let dm = delta(m)?;
            let a = mono(m);
            Ok(differ(&counit_leg(&dm, 0), &a).or_else(|| differ(&counit_leg(&dm, 1), &a)))
        },
    );
    r.run(
        "coproduct-multiplicative",
        "Δ(ab) = (Δa)(Δb)",
        d,
        pairs.iter(),
        |p| show_pair(p),
        |(a, b)| {
            Ok(differ(
                &*schema.coproduct_monomial(&a.mul(b))?,
                &delta(a)?.mul(&delta(b)?)?,
            ))
        },
    );
    r.run(
        "coproduct-unit",
        "Δ1 = 1⊗1",
        d,
        [()],
        |_| "1".into(),
        |_| {
            Ok(differ(
                &*schema.coproduct_monomial(&Monomial::one())?,
                &QTensor::unit(2),
            ))
        },
    );
    r.run(
        "counit-multiplicative",
        "ε(ab) = ε(a)ε(b)",
        d,
        pairs.iter(),
        |p| show_pair(p),
        |(a, b)| {
            let lhs = mono(&a.mul(b)).counit();
            let rhs = mono(a).counit() * mono(b).counit();
            Ok(differ(&lhs, &rhs))
        },
    );
    r.run(
        "counit-unit",
        "ε(1) = 1",
        d,
        [()],
        |_| "1".into(),
        |_| Ok(differ(&one.counit(), &Rational::one())),
    );
    r.run(
        "antipode",
        "m(id⊗S)Δ = m(S⊗id)Δ = eε",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let dm = delta(m)?;
            let unit = QElement::constant(mono(m).counit());
            Ok(differ(&contract_with(&dm, 1, schema)?, &unit).or(differ(&contract_with(&dm, 0, schema)?, &unit)))
        },
    );
    r.run(
        "antipode-antimultiplicative",
        "S(ab) = S(b)S(a)",
        d,
        pairs.iter(),
        |p| show_pair(p),
        |(a, b)| {
            let lhs = schema.antipode_monomial(&a.mul(b))?;
            let rhs = &*schema.antipode_monomial(b)? * &*schema.antipode_monomial(a)?;
            Ok(differ(&*lhs, &rhs))
        },
    );
    r.run(
        "antipode-coproduct",
        "ΔS = (S⊗S)P₁₂Δ",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let lhs = schema.coproduct(&*schema.antipode_monomial(m)?)?;
            let rhs = antipode_on_legs(schema, &delta(m)?.swap()?)?;
            Ok(differ(&lhs, &rhs))
        },
    );
    r.run(
        "antipode-unit",
        "S1 = 1",
        d,
        [()],
        |_| "1".into(),
        |_| Ok(differ(&*schema.antipode_monomial(&Monomial::one())?, &one)),
    );
    r.run(
        "antipode-counit",
        "εS = ε",
        d,
        basis.iter(),
        |m| show(m),
        |m| Ok(differ(&schema.antipode_monomial(m)?.counit(), &mono(m).counit())),
    );
    r.run(
        "antipode-projector",
        "Sp = pS = p with p = eε",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let p = QElement::constant(mono(m).counit());
            let sp = schema.antipode(&p)?;
            let ps = QElement::constant(schema.antipode_monomial(m)?.counit());
            Ok(differ(&sp, &p).or_else(|| differ(&ps, &p)))
        },
    );
    r.run(
        "antipode-left-right",
        "S_r = S_l (right and left recursions)",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            Ok(differ(
                &*schema.antipode_monomial(m)?,
                &*schema.antipode_left_monomial(m)?,
            ))
        },
    );
    r.run(
        "grading-product",
        "H^p·H^q ⊂ H^{p+q}",
        d,
        pairs.iter(),
        |p| show_pair(p),
        |(a, b)| {
            let ab = &mono(a) * &mono(b);
            let want = a.y_degree() + b.y_degree();
            Ok((ab.homogeneous_degree() != Some(want))
                .then(|| format!("product {ab} is not homogeneous of degree {want}")))
        },
    );
    r.run(
        "theta-multiplicative",
        "θ_z(ab) = θ_z(a)θ_z(b)",
        d,
        pairs.iter(),
        |p| show_pair(p),
        |(a, b)| {
            let lhs = apply_theta(&(&mono(a) * &mono(b)), theta_order);
            let rhs = &apply_theta(&mono(a), theta_order) * &apply_theta(&mono(b), theta_order);
            Ok(differ(&lhs, &rhs))
        },
    );
    r.run(
        "y-derivation",
        "Y(ab) = (Ya)b + a(Yb)",
        d,
        pairs.iter(),
        |p| show_pair(p),
        |(a, b)| {
            let (x, y) = (mono(a), mono(b));
            let lhs = apply_y(&(&x * &y));
            let rhs = &(&apply_y(&x) * &y) + &(&x * &apply_y(&y));
            Ok(differ(&lhs, &rhs))
        },
    );
    r.run(
        "coproduct-graded",
        "Δ(H^n) ⊂ Σ_{i+j=n} H^i⊗H^j",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let dm = delta(m)?;
            let bad = dm
                .terms()
                .find(|(legs, _)| legs[0].y_degree() + legs[1].y_degree() != m.y_degree())
                .map(|(legs, _)| format!("term {} ⊗ {} has the wrong degree", legs[0], legs[1]));
            Ok(bad)
        },
    );
    r.run(
        "theta-comultiplicative",
        "(θ_z⊗θ_z)Δ = Δθ_z",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let lhs = apply_theta_tensor(&delta(m)?, theta_order);
            let th = apply_theta(&mono(m), theta_order);
            let mut rhs = Tensor::zero(2);
            for (x, c) in th.terms() {
                for (legs, k) in schema.coproduct_monomial(x)?.terms() {
                    rhs.add_term(legs.to_vec(), c.clone() * crate::ring::Laurent::constant(k.clone()));
                }
            }
            Ok(differ(&lhs, &rhs))
        },
    );
    r.run(
        "y-coderivation",
        "(Y⊗id + id⊗Y)Δ = ΔY",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let lhs = apply_y_tensor(&delta(m)?);
            let rhs = schema.coproduct(&apply_y(&mono(m)))?;
            Ok(differ(&lhs, &rhs))
        },
    );
    r.run(
        "progressive",
        "Δh = h⊗1 + 1⊗h + h'⊗h'' with 0 < deg h', deg h'' < deg h",
        d,
        positive.iter(),
        |m| show(m),
        |m| {
            let red = schema.reduced_coproduct_monomial(m)?;
            let bad = red
                .terms()
                .flat_map(|(legs, _)| legs.to_vec())
                .find(|leg| leg.y_degree() == 0 || leg.y_degree() >= m.y_degree())
                .map(|leg| format!("reduced coproduct has leg {leg} of degree {}", leg.y_degree()));
            Ok(bad)
        },
    );
    r.run(
        "antipode-commutes-with-grading",
        "YS = SY and θ_z S = S θ_z",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let s = schema.antipode_monomial(m)?;
            let ys = apply_y(&s);
            let sy = schema.antipode(&apply_y(&mono(m)))?;
            if let Some(x) = differ(&ys, &sy) {
                return Ok(Some(x));
            }
            let ths = apply_theta(&s, theta_order);
            let sth: Element<_> = apply_theta(&mono(m), theta_order)
                .terms()
                .map(|(x, c)| -> Result<Element<_>> {
                    Ok(schema
                        .antipode_monomial(x)?
                        .map_coeffs(|k| crate::ring::Laurent::constant(k.clone()))
                        .scale(c))
                })
                .try_fold(Element::zero(), |acc, e| e.map(|e| &acc + &e))?;
            Ok(differ(&ths, &sth))
        },
    );
    let mut prims = Vec::new();
    for k in 1..=d {
        prims.extend(primitives(schema, k)?);
    }
    r.run(
        "primitive-counit",
        "a primitive ⇒ εa = 0",
        d,
        prims.iter(),
        |a| a.to_string(),
        |a| Ok((!a.counit().is_zero()).then(|| format!("counit {}", a.counit()))),
    );
    r.run(
        "primitive-antipode",
        "a primitive ⇒ Sa = -a",
        d,
        prims.iter(),
        |a| a.to_string(),
        |a| Ok(differ(&schema.antipode(a)?, &-*a)),
    );
    r.run(
        "group-like-only-unit",
        "Δm = m⊗m only for m = 1",
        d,
        basis.iter(),
        |m| show(m),
        |m| {
            let grouplike =
                *schema.coproduct_monomial(m)? == QTensor::pure(vec![(*m).clone(), (*m).clone()], Rational::one());
            Ok((grouplike != m.is_one()).then(|| {
                if m.is_one() {
                    "the unit is not group-like".to_string()
                } else {
                    format!("{m} is group-like")
                }
            }))
        },
    );
    Ok(r)
}
