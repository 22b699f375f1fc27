//! Residue, β-function and the tower `d_n` of pole coefficients of a special
//! loop, together with the loop rebuilt from them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::BirkhoffPair;
use crate::algebra::Monomial;
use crate::dual::{character_witness, convolve_augmented, materialize_infinitesimal, y_star, Functional};
use crate::error::{HopfError, Result};
use crate::hopf::HopfSchema;
use crate::ring::{CoefficientRing, Laurent, Rational};

/// The coefficient of `eps^exponent` of a Laurent-valued functional, as a
/// table on the basis up to `max_degree`.
pub fn coefficient_table<B: CoefficientRing>(
    schema: &HopfSchema,
    f: &Functional<Laurent<B>>,
    exponent: i32,
    max_degree: u32,
) -> Result<Functional<B>> {
    let mut values = Vec::new();
    for m in schema.basis_up_to(max_degree)? {
        let v = f.eval_monomial(&m)?.coeff(exponent)?;
        values.push((m, v));
    }
    Ok(Functional::table(values).with_limit(max_degree))
}

/// `d₁`: the `eps^{-1}` coefficient of `φ₋`, read literally. It vanishes on
/// 1 and on products, since `φ₋` is multiplicative with values in the pole
/// parts.
pub fn residue<B: CoefficientRing>(schema: &HopfSchema, pair: &BirkhoffPair<B>) -> Result<Functional<B>> {
    coefficient_table(schema, &pair.minus, -1, pair.max_degree)
}

/// `β = Y_* d₁`, checked to be an infinitesimal character.
pub fn beta<B: CoefficientRing>(schema: &HopfSchema, d1: &Functional<B>, max_degree: u32) -> Result<Functional<B>> {
    materialize_infinitesimal(schema, &y_star(d1), max_degree)
}

fn inverse_degree<B: CoefficientRing>(m: &Monomial) -> B {
    B::from_rational(&Rational::new(1.into(), m.y_degree().into()))
}

/// `d₁, ..., d_{max_order}` from `d₁ = Y_*^{-1} β` and
/// `d_{n+1} = Y_*^{-1}(d_n ∗ β)`, as tables on the basis up to `max_degree`.
pub fn dn_tower<B: CoefficientRing>(
    schema: &HopfSchema,
    beta: &Functional<B>,
    max_order: usize,
    max_degree: u32,
) -> Result<Vec<Functional<B>>> {
    if max_order == 0 {
        return Ok(Vec::new());
    }
    let basis: Vec<Monomial> = schema
        .basis_up_to(max_degree)?
        .into_iter()
        .filter(|m| !m.is_one())
        .collect();
    let mut tower: Vec<Functional<B>> = Vec::with_capacity(max_order);
    let first = basis
        .iter()
        .map(|m| Ok((m.clone(), beta.eval_monomial(m)? * inverse_degree(m))))
        .collect::<Result<Vec<_>>>()?;
    tower.push(Functional::table(first).with_limit(max_degree));
    for _ in 1..max_order {
        let prev = tower.last().expect("tower is never empty here");
        let mut values = Vec::new();
        for m in &basis {
            let v = convolve_augmented(schema, &[prev, beta], m)?;
            values.push((m.clone(), v * inverse_degree(m)));
        }
        tower.push(Functional::table(values).with_limit(max_degree));
    }
    Ok(tower)
}

/// `d_n` by the recursion `d_{n+1} = Y_*^{-1}(d_n ∗ β)`.
pub fn dn_recursive<B: CoefficientRing>(
    schema: &HopfSchema,
    beta: &Functional<B>,
    n: usize,
    max_degree: u32,
) -> Result<Functional<B>> {
    if n == 0 {
        return Err(HopfError::Domain("d_n is defined for n >= 1".into()));
    }
    Ok(dn_tower(schema, beta, n, max_degree)?
        .pop()
        .expect("tower has n entries"))
}

/// `Π_j 1/(k₁ + ... + k_j)`: the integral of `Π e^{-k_i s_i}` over
/// `s₁ >= s₂ >= ... >= s_n >= 0`.
pub fn simplex_weight(degrees: &[u32]) -> Rational {
    let mut w = Rational::new(1.into(), 1.into());
    let mut partial = 0u64;
    for k in degrees {
        partial += *k as u64;
        w /= Rational::from_integer(partial.into());
    }
    w
}

/// `d_n` in closed form: `β^{⊗n}` paired with the reduced `(n−1)`-fold
/// coproduct, each term weighted by [`simplex_weight`] of its leg degrees.
pub fn dn_simplex<B: CoefficientRing>(
    schema: &HopfSchema,
    beta: &Functional<B>,
    n: usize,
    max_degree: u32,
) -> Result<Functional<B>> {
    if n == 0 {
        return Err(HopfError::Domain("d_n is defined for n >= 1".into()));
    }
    let mut values = Vec::new();
    for m in schema.basis_up_to(max_degree)? {
        if m.is_one() {
            continue;
        }
        let delta = schema.reduced_iterated_coproduct_monomial(&m, n - 1)?;
        let mut acc = B::zero();
        for (legs, c) in delta.terms() {
            let mut term = B::from_rational(c);
            for leg in legs {
                term = term * beta.eval_monomial(leg)?;
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            let degrees: Vec<u32> = legs.iter().map(Monomial::y_degree).collect();
            acc = acc + term * B::from_rational(&simplex_weight(&degrees));
        }
        values.push((m, acc));
    }
    Ok(Functional::table(values).with_limit(max_degree))
}

/// The special loop with residue data `β`: `φ = ε + Σ_{n<=max_order} d_n eps^{-n}`.
///
/// Returned as a character on the generators up to `max_degree`, after
/// checking that the table is multiplicative on the basis. With
/// `max_order >= max_degree` no pole is dropped, since `d_n` vanishes below
/// degree `n`.
pub fn build_special_loop<B: CoefficientRing>(
    schema: &HopfSchema,
    beta: &Functional<B>,
    max_order: usize,
    max_degree: u32,
) -> Result<Functional<Laurent<B>>> {
    if max_order == 0 {
        return Err(HopfError::Domain("special loop needs max order >= 1".into()));
    }
    let tower = dn_tower(schema, beta, max_order, max_degree)?;
    let mut table: BTreeMap<Monomial, Laurent<B>> = BTreeMap::new();
    for m in schema.basis_up_to(max_degree)? {
        let v = if m.is_one() {
            Laurent::one()
        } else {
            let mut coeffs = Vec::new();
            for (n, d) in tower.iter().enumerate() {
                coeffs.push((-(n as i32) - 1, d.eval_monomial(&m)?));
            }
            Laurent::exact(coeffs)
        };
        table.insert(m, v);
    }
    let lookup = |m: &Monomial| Ok(table.get(m).cloned().unwrap_or_else(Laurent::zero));
    if let Some(w) = character_witness(schema, lookup, max_degree)? {
        return Err(HopfError::Verification(format!(
            "assembled loop is not a character: {w}"
        )));
    }
    let generators = schema.generators_up_to(max_degree)?.into_iter().map(|g| {
        let v = table[&Monomial::generator(g.clone())].clone();
        (g, v)
    });
    Ok(Functional::character(generators).with_limit(max_degree))
}
