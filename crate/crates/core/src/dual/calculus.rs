//! Characters, infinitesimal characters and the operations between them:
//! inverse, bracket, exponential, logarithm, dual grading and distance.

use num_traits::{One, Signed, Zero};

use super::eval::{convolve_augmented, evaluate_monomial};
use super::{Expr, Functional};
use crate::algebra::{Generator, Monomial};
use crate::error::{HopfError, Result};
use crate::hopf::grading::exp_series;
use crate::hopf::HopfSchema;
use crate::ring::{inverse_factorial, CoefficientRing, Laurent, Rational};

/// Pairs `(a, b)` of basis monomials of positive degree with
/// `deg a + deg b <= max_degree`.
pub fn basis_pairs(schema: &HopfSchema, max_degree: u32) -> Result<Vec<(Monomial, Monomial)>> {
    let basis: Vec<Monomial> = schema
        .basis_up_to(max_degree)?
        .into_iter()
        .filter(|m| !m.is_one())
        .collect();
    let mut out = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            if a.y_degree() + b.y_degree() <= max_degree {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// First place where `f` fails to be a character up to `max_degree`:
/// `f(1) = 1` and `f(ab) = f(a) f(b)`. Truncated values are compared only on
/// the coefficients both sides determine.
pub fn character_witness<R, F>(schema: &HopfSchema, f: F, max_degree: u32) -> Result<Option<String>>
where
    R: CoefficientRing,
    F: Fn(&Monomial) -> Result<R>,
{
    let unit = f(&Monomial::one())?;
    if !unit.agrees(&R::one()) {
        return Ok(Some(format!("value on 1 is {unit}, not 1")));
    }
    for (a, b) in basis_pairs(schema, max_degree)? {
        let lhs = f(&a.mul(&b))?;
        let rhs = f(&a)? * f(&b)?;
        if !lhs.agrees(&rhs) {
            return Ok(Some(format!("f({a} * {b}) = {lhs} but f({a}) f({b}) = {rhs}")));
        }
    }
    Ok(None)
}

/// First place where `f` fails to be an infinitesimal character up to
/// `max_degree`: `f(1) = 0` and `f(ab) = f(a)ε(b) + ε(a)f(b)`, i.e. `f`
/// vanishes on products of positive-degree monomials.
pub fn infinitesimal_witness<R, F>(schema: &HopfSchema, f: F, max_degree: u32) -> Result<Option<String>>
where
    R: CoefficientRing,
    F: Fn(&Monomial) -> Result<R>,
{
    let unit = f(&Monomial::one())?;
    if !unit.vanishes() {
        return Ok(Some(format!("value on 1 is {unit}, not 0")));
    }
    for (a, b) in basis_pairs(schema, max_degree)? {
        let v = f(&a.mul(&b))?;
        if !v.vanishes() {
            return Ok(Some(format!("value on the product {a} * {b} is {v}, not 0")));
        }
    }
    Ok(None)
}

/// Evaluates `f` on every generator up to `max_degree`.
fn generator_table<R, F>(schema: &HopfSchema, f: F, max_degree: u32) -> Result<Vec<(Generator, R)>>
where
    R: CoefficientRing,
    F: Fn(&Monomial) -> Result<R>,
{
    schema
        .generators_up_to(max_degree)?
        .into_iter()
        .map(|g| {
            let v = f(&Monomial::generator(g.clone()))?;
            Ok((g, v))
        })
        .collect()
}

/// Reads off a character from an expression by its generator values, after
/// checking multiplicativity on the basis up to `max_degree`.
pub fn materialize_character<R: CoefficientRing>(
    schema: &HopfSchema,
    f: &Expr<R>,
    max_degree: u32,
) -> Result<Functional<R>> {
    let eval = |m: &Monomial| evaluate_monomial(schema, f, m);
    if let Some(w) = character_witness(schema, eval, max_degree)? {
        return Err(HopfError::Verification(format!("expression is not a character: {w}")));
    }
    Ok(Functional::character(generator_table(schema, eval, max_degree)?).with_limit(max_degree))
}

/// As [`materialize_character`] for infinitesimal characters.
pub fn materialize_infinitesimal<R: CoefficientRing>(
    schema: &HopfSchema,
    f: &Expr<R>,
    max_degree: u32,
) -> Result<Functional<R>> {
    let eval = |m: &Monomial| evaluate_monomial(schema, f, m);
    if let Some(w) = infinitesimal_witness(schema, eval, max_degree)? {
        return Err(HopfError::Verification(format!(
            "expression is not an infinitesimal character: {w}"
        )));
    }
    Ok(Functional::infinitesimal(generator_table(schema, eval, max_degree)?).with_limit(max_degree))
}

/// Every value of a functional as an exact table on the basis up to
/// `max_degree`.
pub fn materialize_table<R: CoefficientRing>(
    schema: &HopfSchema,
    f: &Expr<R>,
    max_degree: u32,
) -> Result<Functional<R>> {
    let mut values = Vec::new();
    for m in schema.basis_up_to(max_degree)? {
        let v = evaluate_monomial(schema, f, &m)?;
        values.push((m, v));
    }
    Ok(Functional::table(values).with_limit(max_degree))
}

/// `χ^{-1} = χ ∘ S`, as a character.
pub fn character_inverse<R: CoefficientRing>(
    schema: &HopfSchema,
    chi: &Functional<R>,
    max_degree: u32,
) -> Result<Functional<R>> {
    let expr = Expr::leaf(chi.clone()).compose_antipode();
    materialize_character(schema, &expr, max_degree)
}

/// `[Z1, Z2] = Z1 ∗ Z2 − Z2 ∗ Z1`, as an infinitesimal character.
pub fn lie_bracket<R: CoefficientRing>(
    schema: &HopfSchema,
    z1: &Functional<R>,
    z2: &Functional<R>,
    max_degree: u32,
) -> Result<Functional<R>> {
    let a = Expr::leaf(z1.clone());
    let b = Expr::leaf(z2.clone());
    let expr = a.clone().convolve(b.clone()).minus(b.convolve(a));
    materialize_infinitesimal(schema, &expr, max_degree)
}

/// `Σ_{n=1}^{deg m} coeff(n) ⟨f^{∗n}, m⟩` for a form vanishing on 1, where
/// powers beyond the degree vanish. That vanishing is checked, not assumed:
/// the term `n = deg m + 1` is computed on the full iterated coproduct with
/// `unit_value` as the value on 1.
fn augmented_series<R: CoefficientRing>(
    schema: &HopfSchema,
    f: &Functional<R>,
    unit_value: &R,
    m: &Monomial,
    coeff: impl Fn(u32) -> Rational,
) -> Result<R> {
    if m.is_one() {
        return Ok(R::zero());
    }
    let d = m.y_degree();
    let mut acc = R::zero();
    for n in 1..=d {
        let parts = vec![f; n as usize];
        let term = convolve_augmented(schema, &parts, m)?;
        acc = acc + term.scale(&coeff(n));
    }
    let shifted = |x: &Monomial| -> Result<R> {
        if x.is_one() {
            Ok(unit_value.clone())
        } else {
            f.eval_monomial(x)
        }
    };
    let forms = vec![shifted; d as usize + 1];
    let tail = schema
        .iterated_coproduct_monomial(m, d as usize)?
        .pair_with(R::from_rational, &forms)?;
    if !tail.vanishes() {
        return Err(HopfError::Verification(format!(
            "convolution power {} does not vanish on {m} (degree {d}): {tail}",
            d + 1
        )));
    }
    Ok(acc)
}

/// `e^{∗Z}` for `Z` vanishing on 1: `Σ_n Z^{∗n}/n!`, a finite sum on every
/// monomial. The result is checked to be a character up to `max_degree`.
pub fn exp_star<R: CoefficientRing>(schema: &HopfSchema, z: &Functional<R>, max_degree: u32) -> Result<Functional<R>> {
    let z1 = z.eval_monomial(&Monomial::one())?;
    if !z1.is_zero() {
        return Err(HopfError::Domain(format!(
            "exponential needs a form vanishing on 1, got {z1}"
        )));
    }
    let zero = R::zero();
    let series = |m: &Monomial| -> Result<R> {
        if m.is_one() {
            return Ok(R::one());
        }
        augmented_series(schema, z, &zero, m, inverse_factorial)
    };
    let chi = Functional::character(generator_table(schema, series, max_degree)?).with_limit(max_degree);
    for m in schema.basis_up_to(max_degree)? {
        if m.poly_degree() < 2 {
            continue;
        }
        let lhs = series(&m)?;
        let rhs = chi.eval_monomial(&m)?;
        if !lhs.agrees(&rhs) {
            return Err(HopfError::Verification(format!(
                "exponential is not multiplicative on {m}: series gives {lhs}, product of generator values {rhs}"
            )));
        }
    }
    Ok(chi)
}

fn mercator(n: u32) -> Rational {
    let r = Rational::new(1.into(), n.into());
    if n.is_multiple_of(2) {
        -r
    } else {
        r
    }
}

/// `log_∗ χ = Σ_{n≥1} (−1)^{n+1} (χ − ε)^{∗n} / n`, checked to be an
/// infinitesimal character up to `max_degree`.
pub fn log_star<R: CoefficientRing>(
    schema: &HopfSchema,
    chi: &Functional<R>,
    max_degree: u32,
) -> Result<Functional<R>> {
    let c1 = chi.eval_monomial(&Monomial::one())?;
    if !c1.agrees(&R::one()) {
        return Err(HopfError::Domain(format!(
            "logarithm needs a form with value 1 on 1, got {c1}"
        )));
    }
    let unit_value = c1 - R::one();
    let series = |m: &Monomial| augmented_series(schema, chi, &unit_value, m, mercator);
    let z = Functional::infinitesimal(generator_table(schema, series, max_degree)?).with_limit(max_degree);
    for m in schema.basis_up_to(max_degree)? {
        if m.poly_degree() < 2 {
            continue;
        }
        let v = series(&m)?;
        if !v.vanishes() {
            return Err(HopfError::Verification(format!(
                "logarithm is not infinitesimal: value {v} on the product {m}"
            )));
        }
    }
    Ok(z)
}

/// The transpose of `Y`. Closed forms are kept for tables and infinitesimal
/// characters; `Y_*` of a character is not a character and stays lazy.
pub fn y_star<R: CoefficientRing>(f: &Functional<R>) -> Expr<R> {
    match f {
        Functional::Character { .. } => Expr::leaf(f.clone()).y_star(),
        _ => Expr::leaf(f.scale_by_degree(|n| R::from_int(n as i64))),
    }
}

/// The transpose of `θ_z` with `z` formal: values on degree `n` are
/// multiplied by `e^{nz}`, truncated at `z^order`. Characters stay
/// characters since `e^{(a+b)z} = e^{az} e^{bz}`.
pub fn theta_star<R: CoefficientRing>(f: &Functional<R>, order: u32) -> Functional<Laurent<R>> {
    f.map_values(|v| Laurent::constant(v.clone()))
        .scale_by_degree(|n| exp_series(&R::from_int(n as i64), order))
}

/// Distance `Σ_i 2^{-i} min(|⟨ξ − η, x_i⟩|, 1)` over the first `terms` basis
/// monomials `x_0, x_1, ...` in degree order. Returns the truncated sum and
/// the bound `2^{1 - terms}` on the omitted tail.
pub fn metric_distance<R: CoefficientRing>(
    schema: &HopfSchema,
    xi: &Expr<R>,
    eta: &Expr<R>,
    terms: usize,
) -> Result<(Rational, Rational)> {
    let mut basis = Vec::new();
    let mut d = 0;
    let has_generators = schema.degree_limit() != Some(0);
    while basis.len() < terms {
        basis.extend(schema.basis(d)?);
        d += 1;
        if !has_generators || (d > 64 && basis.len() == 1) {
            break;
        }
    }
    basis.truncate(terms);
    let mut sum = Rational::zero();
    let mut weight = Rational::one();
    let half = Rational::new(1.into(), 2.into());
    for m in &basis {
        let diff = evaluate_monomial(schema, xi, m)? - evaluate_monomial(schema, eta, m)?;
        let q = diff.to_rational().ok_or_else(|| {
            HopfError::UnsupportedRing(format!("distance needs rational values, got {}", R::ring_name()))
        })?;
        let a = q.abs();
        sum += &weight * if a > Rational::one() { Rational::one() } else { a };
        weight *= &half;
    }
    let tail = Rational::new(2.into(), 1.into()) * weight;
    Ok((sum, tail))
}
