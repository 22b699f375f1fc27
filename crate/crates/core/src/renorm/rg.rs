//! The renormalization-group limit `F_t = lim_{eps→0} φ^{-1} ∗ θ_{t eps} φ`
//! of a loop, with `t` a formal variable.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::Monomial;
use crate::dual::{character_witness, evaluate_monomial, exp_star, infinitesimal_witness, Expr, Functional};
use crate::error::{HopfError, Result};
use crate::hopf::grading::exp_series;
use crate::hopf::{AxiomReport, HopfSchema};
use crate::ring::{CoefficientRing, Laurent, Poly};

/// A pole coefficient that survives in `φ^{-1} ∗ θ_{t eps} φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleWitness<B> {
    pub monomial: Monomial,
    pub exponent: i32,
    pub coefficient: Poly<B>,
}

impl<B: CoefficientRing> std::fmt::Display for PoleWitness<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "eps^{} coefficient {} on {}",
            self.exponent, self.coefficient, self.monomial
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RgReport<B> {
    pub max_degree: u32,
    pub special: bool,
    /// Order in `eps` through which every value was computed exactly.
    pub certified_order: Option<i32>,
    pub witness: Option<PoleWitness<B>>,
    /// `F_t` as a character with polynomial values in `t`.
    pub flow: Option<Functional<Poly<B>>>,
    /// `∂_t F_t` at `t = 0`.
    pub beta: Option<Functional<B>>,
    pub checks: AxiomReport,
}

fn lift<B: CoefficientRing>(x: &Laurent<B>) -> Laurent<Poly<B>> {
    x.map_coeffs(|c| Poly::constant(c.clone()))
}

/// `⟨φ^{-1} ∗ θ_{t eps} φ, m⟩` through `eps^target` where the input allows.
fn flow_value<B: CoefficientRing>(
    schema: &HopfSchema,
    phi: &Functional<Laurent<B>>,
    m: &Monomial,
    target: i32,
) -> Result<Laurent<Poly<B>>> {
    let mut acc = Laurent::<Poly<B>>::zero();
    for (legs, c) in schema.coproduct_monomial(m)?.terms() {
        let left = phi.eval(&*schema.antipode_monomial(&legs[0])?)?;
        let right = phi.eval_monomial(&legs[1])?;
        let (Some(v1), Some(v2)) = (left.valuation_bound(), right.valuation_bound()) else {
            continue;
        };
        let k = (target - v1 - v2).max(0) as u32;
        let t_deg = Poly::<B>::var() * Poly::constant(B::from_int(legs[1].y_degree() as i64));
        let theta = exp_series(&t_deg, k);
        acc = acc + lift(&left) * theta * lift(&right) * Laurent::from_rational(c);
    }
    Ok(acc)
}

/// Computes `φ^{-1} ∗ θ_{t eps} φ` on the basis up to `max_degree` through
/// `eps^eps_order`.
///
/// The loop is special when no negative power of `eps` survives. A special
/// loop is then checked against the one-parameter group law
/// `F_{t+s} = F_t ∗ F_s` in two formal variables, `F_t = e^{∗tβ}` for
/// `β = ∂_t F_t |_{t=0}`, `β = Y_* Res φ` and `Y_* φ = φ ∗ (β/eps)`.
pub fn rg_limit_check<B: CoefficientRing>(
    schema: &HopfSchema,
    phi: &Functional<Laurent<B>>,
    max_degree: u32,
    eps_order: i32,
) -> Result<RgReport<B>> {
    if !matches!(phi, Functional::Character { .. }) {
        return Err(HopfError::Domain(format!(
            "renormalization-group limit needs a character, got a {}",
            phi.kind()
        )));
    }
    let basis = schema.basis_up_to(max_degree)?;
    let mut values: BTreeMap<Monomial, Laurent<Poly<B>>> = BTreeMap::new();
    let mut certified: Option<i32> = None;
    for m in &basis {
        let v = flow_value(schema, phi, m, eps_order)?;
        if let Some(n) = v.truncation() {
            certified = Some(certified.map_or(n, |c: i32| c.min(n)));
        }
        values.insert(m.clone(), v);
    }
    if let Some(n) = certified {
        if n < 0 {
            return Err(HopfError::InsufficientTruncation {
                context: "renormalization-group limit".into(),
                required: 0,
                available: n,
            });
        }
    }
    let mut report = RgReport {
        max_degree,
        special: true,
        certified_order: certified,
        witness: None,
        flow: None,
        beta: None,
        checks: AxiomReport::default(),
    };
    for (m, v) in &values {
        if let Some((e, c)) = v.terms().find(|(e, c)| *e < 0 && !c.is_zero()) {
            report.special = false;
            report.witness = Some(PoleWitness {
                monomial: m.clone(),
                exponent: e,
                coefficient: c.clone(),
            });
            return Ok(report);
        }
    }

    let f_table: BTreeMap<Monomial, Poly<B>> = values
        .iter()
        .map(|(m, v)| Ok((m.clone(), v.coeff(0)?)))
        .collect::<Result<_>>()?;
    let f_at = |m: &Monomial| Ok(f_table.get(m).cloned().unwrap_or_else(Poly::zero));
    let d = max_degree;
    let checks = &mut report.checks;
    checks.run(
        "flow-character",
        "F_t is a character",
        d,
        [()],
        |_| "basis".into(),
        |_| character_witness(schema, f_at, d),
    );
    let generators = schema.generators_up_to(d)?;
    let flow = Functional::character(generators.iter().map(|g| {
        let v = f_table[&Monomial::generator(g.clone())].clone();
        (g.clone(), v)
    }))
    .with_limit(d);

    // F_{t+s} = F_t ∗ F_s with t the inner and s the outer variable
    let t = Poly::constant(Poly::<B>::var());
    let s = Poly::<Poly<B>>::var();
    let embed = |c: &B| Poly::constant(Poly::constant(c.clone()));
    let at = |x: &Poly<Poly<B>>| flow.map_values(|p| p.eval_with(x, embed));
    let (f_t, f_s, f_ts) = (at(&t), at(&s), at(&(t.clone() + s.clone())));
    let product = Expr::leaf(f_t).convolve(Expr::leaf(f_s));
    checks.run(
        "flow-group-law",
        "F_{t+s} = F_t ∗ F_s",
        d,
        basis.iter(),
        |m| m.to_string(),
        |m| {
            let lhs = f_ts.eval_monomial(m)?;
            let rhs = evaluate_monomial(schema, &product, m)?;
            Ok((lhs != rhs).then(|| format!("{lhs}  !=  {rhs}")))
        },
    );

    let beta_at = |m: &Monomial| Ok(f_at(m)?.coeff(1));
    checks.run(
        "beta-infinitesimal",
        "∂_t F_t at t = 0 is infinitesimal",
        d,
        [()],
        |_| "basis".into(),
        |_| infinitesimal_witness(schema, beta_at, d),
    );
    let beta =
        Functional::infinitesimal(generators.iter().map(|g| (g.clone(), flow.value_at(g).coeff(1)))).with_limit(d);

    let beta_t = beta.map_values(|b| Poly::constant(b.clone()) * Poly::var());
    match exp_star(schema, &beta_t, d) {
        Ok(e) => checks.run(
            "flow-exponential",
            "F_t = e^{∗tβ}",
            d,
            basis.iter(),
            |m| m.to_string(),
            |m| {
                let lhs = f_at(m)?;
                let rhs = e.eval_monomial(m)?;
                Ok((lhs != rhs).then(|| format!("{lhs}  !=  {rhs}")))
            },
        ),
        Err(err) => checks.run(
            "flow-exponential",
            "F_t = e^{∗tβ}",
            d,
            [()],
            |_| "exponential".into(),
            |_| Err(err.clone()),
        ),
    }

    checks.run(
        "beta-residue",
        "β = Y_* Res φ",
        d,
        basis.iter(),
        |m| m.to_string(),
        |m| {
            let res = phi.eval_monomial(m)?.coeff(-1)? * B::from_int(m.y_degree() as i64);
            let b = beta.eval_monomial(m)?;
            Ok((res != b).then(|| format!("Y_* Res φ gives {res} but β gives {b}")))
        },
    );

    let over_eps = Expr::leaf(beta.map_values(|b| Laurent::monomial(b.clone(), -1)));
    let rhs_expr = Expr::leaf(phi.clone()).convolve(over_eps);
    checks.run(
        "loop-differential",
        "Y_* φ = φ ∗ (β/eps)",
        d,
        basis.iter(),
        |m| m.to_string(),
        |m| {
            let lhs = phi.eval_monomial(m)? * Laurent::from_int(m.y_degree() as i64);
            let rhs = evaluate_monomial(schema, &rhs_expr, m)?;
            Ok((!lhs.agrees(&rhs)).then(|| format!("{lhs}  !=  {rhs}")))
        },
    );

    report.flow = Some(flow);
    report.beta = Some(beta);
    Ok(report)
}
