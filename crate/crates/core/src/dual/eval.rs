use super::{Expr, Functional};
use crate::algebra::{Element, Monomial};
use crate::error::Result;
use crate::hopf::HopfSchema;
use crate::ring::{CoefficientRing, Rational};

/// `⟨f, m⟩` for an expression and a basis monomial.
pub fn evaluate_monomial<R: CoefficientRing>(schema: &HopfSchema, f: &Expr<R>, m: &Monomial) -> Result<R> {
    match f {
        Expr::Leaf(leaf) => leaf.eval_monomial(m),
        Expr::Convolution(parts) => match parts.len() {
            0 => Ok(if m.is_one() { R::one() } else { R::zero() }),
            1 => evaluate_monomial(schema, &parts[0], m),
            n => {
                let delta = schema.iterated_coproduct_monomial(m, n - 1)?;
                let forms: Vec<_> = parts
                    .iter()
                    .map(|p| move |x: &Monomial| evaluate_monomial(schema, p, x))
                    .collect();
                delta.pair_with(R::from_rational, &forms)
            }
        },
        Expr::Sum(terms) => {
            let mut acc = R::zero();
            for (c, e) in terms {
                acc = acc + c.clone() * evaluate_monomial(schema, e, m)?;
            }
            Ok(acc)
        }
        Expr::DegreeScaled(e, s) => {
            let k = s.factor(m.y_degree());
            if k.is_zero() {
                return Ok(R::zero());
            }
            Ok(k * evaluate_monomial(schema, e, m)?)
        }
        Expr::Antipode(e) => evaluate(schema, e, &*schema.antipode_monomial(m)?),
    }
}

/// `⟨f, h⟩`, linear in `h`.
pub fn evaluate<R: CoefficientRing>(schema: &HopfSchema, f: &Expr<R>, h: &Element<Rational>) -> Result<R> {
    let mut acc = R::zero();
    for (m, c) in h.terms() {
        let v = evaluate_monomial(schema, f, m)?;
        if !v.is_zero() {
            acc = acc + v * R::from_rational(c);
        }
    }
    Ok(acc)
}

/// `⟨f1 ∗ ... ∗ fn, m⟩` for forms that all vanish on the unit, computed on
/// the reduced iterated coproduct (every leg of positive degree).
pub fn convolve_augmented<R: CoefficientRing>(
    schema: &HopfSchema,
    parts: &[&Functional<R>],
    m: &Monomial,
) -> Result<R> {
    if parts.is_empty() {
        return Ok(if m.is_one() { R::one() } else { R::zero() });
    }
    let delta = schema.reduced_iterated_coproduct_monomial(m, parts.len() - 1)?;
    let forms: Vec<_> = parts.iter().map(|p| move |x: &Monomial| p.eval_monomial(x)).collect();
    delta.pair_with(R::from_rational, &forms)
}
