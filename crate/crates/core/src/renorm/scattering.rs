//! Finite-time form of the simplex integrals behind `d_n`: the integral over
//! `t >= s₁ >= ... >= s_n >= 0` is a finite sum of decaying exponentials in
//! `t` whose constant term is the `t → ∞` limit.

use std::collections::BTreeMap;
use std::fmt;

use super::dn_tower;
use crate::algebra::Monomial;
use crate::dual::Functional;
use crate::error::Result;
use crate::hopf::{AxiomReport, HopfSchema};
use crate::ring::{CoefficientRing, Rational};

/// `Σ_a c_a e^{-a t}`, keyed by the decay rate `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSum<B> {
    terms: BTreeMap<u32, B>,
}

impl<B: CoefficientRing> ExpSum<B> {
    pub fn zero() -> Self {
        ExpSum { terms: BTreeMap::new() }
    }

    pub fn constant(c: B) -> Self {
        let mut s = Self::zero();
        s.add_term(0, c);
        s
    }

    pub fn add_term(&mut self, rate: u32, c: B) {
        let slot = self.terms.entry(rate).or_insert_with(B::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&rate);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &B)> {
        self.terms.iter().map(|(a, c)| (*a, c))
    }

    /// The `t → ∞` limit: the coefficient of `e^{0 t}`.
    pub fn limit(&self) -> B {
        self.terms.get(&0).cloned().unwrap_or_else(B::zero)
    }

    pub fn scale(&self, c: &B) -> Self {
        let mut out = Self::zero();
        for (a, v) in &self.terms {
            out.add_term(*a, v.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, v) in &other.terms {
            out.add_term(*a, v.clone());
        }
        out
    }

    /// `u ↦ ∫_0^u e^{-k s} f(s) ds`.
    pub fn integrate_against(&self, k: u32) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            let rate = a + k;
            let w = c.clone() * B::from_rational(&Rational::new(1.into(), rate.into()));
            out.add_term(0, w.clone());
            out.add_term(rate, -w);
        }
        out
    }
}

impl<B: CoefficientRing> fmt::Display for ExpSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| match a {
                0 => format!("{c}"),
                1 => format!("({c}) e^(-t)"),
                _ => format!("({c}) e^(-{a}t)"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `∫_{t >= s₁ >= ... >= s_n >= 0} Π e^{-k_i s_i} ds`, integrating the
/// innermost variable first.
pub fn simplex_integral<B: CoefficientRing>(degrees: &[u32]) -> ExpSum<B> {
    let mut acc = ExpSum::constant(B::one());
    for k in degrees.iter().rev() {
        acc = acc.integrate_against(*k);
    }
    acc
}

/// One finite-time value `⟨Σ_{finite t}, m⟩` at order `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringTerm<B> {
    pub order: usize,
    pub monomial: Monomial,
    pub finite: ExpSum<B>,
    pub limit: B,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringReport<B> {
    pub max_order: usize,
    pub max_degree: u32,
    pub terms: Vec<ScatteringTerm<B>>,
    pub checks: AxiomReport,
}

/// The finite-time integral at order `n` on `m`: `β^{⊗n}` paired with the
/// reduced `(n−1)`-fold coproduct, each term carrying its simplex integral.
pub fn finite_time_value<B: CoefficientRing>(
    schema: &HopfSchema,
    beta: &Functional<B>,
    n: usize,
    m: &Monomial,
) -> Result<ExpSum<B>> {
    let mut acc = ExpSum::zero();
    if n == 0 || m.is_one() {
        return Ok(acc);
    }
    let delta = schema.reduced_iterated_coproduct_monomial(m, n - 1)?;
    for (legs, c) in delta.terms() {
        let mut coeff = B::from_rational(c);
        for leg in legs {
            coeff = coeff * beta.eval_monomial(leg)?;
        }
        if coeff.is_zero() {
            continue;
        }
        let degrees: Vec<u32> = legs.iter().map(Monomial::y_degree).collect();
        acc = acc.add(&simplex_integral::<B>(&degrees).scale(&coeff));
    }
    Ok(acc)
}

/// Computes the finite-time integrals for every order up to `max_order` on
/// the positive-degree basis up to `max_degree`, and checks that every
/// time-dependent term decays and that the limit is `d_n`.
pub fn scattering_check<B: CoefficientRing>(
    schema: &HopfSchema,
    beta: &Functional<B>,
    max_order: usize,
    max_degree: u32,
) -> Result<ScatteringReport<B>> {
    let tower = dn_tower(schema, beta, max_order, max_degree)?;
    let basis: Vec<Monomial> = schema
        .basis_up_to(max_degree)?
        .into_iter()
        .filter(|m| !m.is_one())
        .collect();
    let mut terms = Vec::new();
    for n in 1..=max_order {
        for m in &basis {
            let finite = finite_time_value(schema, beta, n, m)?;
            let limit = finite.limit();
            terms.push(ScatteringTerm {
                order: n,
                monomial: m.clone(),
                finite,
                limit,
            });
        }
    }
    let mut checks = AxiomReport::default();
    checks.run(
        "scattering-decay",
        "time-dependent terms decay and the integral vanishes at t = 0",
        max_degree,
        terms.iter(),
        |x| format!("order {} on {}", x.order, x.monomial),
        |x| {
            // rates are unsigned, so only a zero-rate term could fail to decay
            let at_zero = x.finite.terms().fold(B::zero(), |acc, (_, c)| acc + c.clone());
            Ok((!at_zero.is_zero()).then(|| format!("finite-time value {} is {at_zero} at t = 0", x.finite)))
        },
    );
    checks.run(
        "scattering-limit",
        "the t → ∞ limit at order n equals d_n",
        max_degree,
        terms.iter(),
        |x| format!("order {} on {}", x.order, x.monomial),
        |x| {
            let want = tower[x.order - 1].eval_monomial(&x.monomial)?;
            Ok((x.limit != want).then(|| format!("limit {} but d_{} = {want}", x.limit, x.order)))
        },
    );
    Ok(ScatteringReport {
        max_order,
        max_degree,
        terms,
        checks,
    })
}
