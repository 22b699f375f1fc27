//! The grading operators: `Y` multiplies the degree-`n` component by `n`, and
//! `θ_z = e^{zY}` multiplies it by `e^{nz}`.
//!
//! With `z` formal, `e^{nz}` is kept as a truncated power series in `z`
//! (a [`Laurent`] with no negative exponents), so every coefficient stays exact.

use crate::algebra::{Element, Tensor};
use crate::ring::{inverse_factorial, CoefficientRing, Laurent, Rational};

pub fn apply_y<R: CoefficientRing>(h: &Element<R>) -> Element<R> {
    h.scale_by_degree(|n| R::from_int(n as i64))
}

/// `(Y ⊗ id + id ⊗ Y ⊗ ...)` on a tensor: each term scaled by its total degree.
pub fn apply_y_tensor<R: CoefficientRing>(t: &Tensor<R>) -> Tensor<R> {
    let mut out = Tensor::zero(t.rank());
    for (legs, c) in t.terms() {
        let d: u32 = legs.iter().map(|m| m.y_degree()).sum();
        out.add_term(legs.to_vec(), c.clone() * R::from_int(d as i64));
    }
    out
}

/// `e^{a z}` as a power series in `z`, known through `z^order`.
pub fn exp_series<B: CoefficientRing>(a: &B, order: u32) -> Laurent<B> {
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut power = B::one();
    for k in 0..=order {
        coeffs.push((k as i32, power.clone() * B::from_rational(&inverse_factorial(k))));
        power = power * a.clone();
    }
    Laurent::truncated(coeffs, order as i32)
}

/// `θ_z h` with `z` formal, truncated at `z^order`.
pub fn apply_theta(h: &Element<Rational>, order: u32) -> Element<Laurent<Rational>> {
    Element::from_terms(h.terms().map(|(m, c)| {
        let e = exp_series(&Rational::from_integer(m.y_degree().into()), order);
        (m.clone(), Laurent::constant(c.clone()) * e)
    }))
}

/// `θ_z ⊗ ... ⊗ θ_z` on a tensor with formal `z`.
pub fn apply_theta_tensor(t: &Tensor<Rational>, order: u32) -> Tensor<Laurent<Rational>> {
    let mut out = Tensor::zero(t.rank());
    for (legs, c) in t.terms() {
        let d: u32 = legs.iter().map(|m| m.y_degree()).sum();
        let e = exp_series(&Rational::from_integer(d.into()), order);
        out.add_term(legs.to_vec(), Laurent::constant(c.clone()) * e);
    }
    out
}
