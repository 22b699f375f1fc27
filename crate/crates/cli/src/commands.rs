use std::fmt::Write;

use serde_json::{json, Value};

use hopf_core::dual::{convolve, exp_star, log_star, materialize_character, materialize_table, Functional};
use hopf_core::hopf::{verify_axioms, AxiomReport, HopfSchema};
use hopf_core::instances::enumerate_trees;
use hopf_core::json::{
    element_from_json, element_to_json, functional_from_json, functional_to_json, tensor_to_json, JsonCoeff,
};
use hopf_core::parse::parse_element;
use hopf_core::renorm::{
    beta, birkhoff_decompose, build_special_loop, coefficient_table, dn_tower, rg_limit_check, scattering_check,
    verify_birkhoff,
};
use hopf_core::ring::{CoefficientRing, Rational};
use hopf_core::suite::{dual_suite, renorm_suite, SuiteConfig};
use hopf_core::{HopfError, QElement, QLaurent, Result};

use crate::config::{file_limit, read_json, ring_tag, Settings};
use crate::report::{checks_json, checks_text, summary_line};
use crate::{Command, ElementInput, Outcome};

type Q = Rational;

pub fn run(s: &Settings, cmd: &Command) -> Result<Outcome> {
    if let Command::EnumerateTrees { vertices } = cmd {
        return enumerate(*vertices);
    }
    if let Command::Verify = cmd {
        return verify(s);
    }
    let schema = s.load_schema(true)?;
    match cmd {
        Command::Coproduct { input, reduced } => coproduct(&schema, input, *reduced),
        Command::Antipode { input, left } => antipode(&schema, input, *left),
        Command::Convolve { first, second } => {
            let (a, b) = (read_json(first)?, read_json(second)?);
            let limit = [file_limit(&a), file_limit(&b)].into_iter().flatten().min();
            let d = s.degree(&schema, limit);
            if ring_tag(&a) == QLaurent::TAG || ring_tag(&b) == QLaurent::TAG {
                convolve_values::<QLaurent>(&schema, &a, &b, d)
            } else {
                convolve_values::<Q>(&schema, &a, &b, d)
            }
        }
        Command::Exp { file } | Command::Log { file } => {
            let v = read_json(file)?;
            let d = s.degree(&schema, file_limit(&v));
            let exp = matches!(cmd, Command::Exp { .. });
            if ring_tag(&v) == QLaurent::TAG {
                exp_log::<QLaurent>(&schema, &v, d, exp)
            } else {
                exp_log::<Q>(&schema, &v, d, exp)
            }
        }
        Command::Birkhoff { file } => {
            let v = read_json(file)?;
            let d = s.degree(&schema, file_limit(&v));
            birkhoff(&schema, &functional_from_json(&schema, &v)?, d)
        }
        Command::Beta {
            file,
            max_order,
            counterterm,
        } => {
            let v = read_json(file)?;
            let d = s.degree(&schema, file_limit(&v));
            beta_data(
                &schema,
                &functional_from_json(&schema, &v)?,
                d,
                *max_order,
                *counterterm,
            )
        }
        Command::BuildLoop { file, max_order } => {
            let v = read_json(file)?;
            let d = s.degree(&schema, file_limit(&v));
            let beta: Functional<Q> = functional_from_json(&schema, &v)?;
            let phi = build_special_loop(&schema, &beta, max_order.unwrap_or(d as usize), d)?;
            Ok(Outcome {
                text: functional_text(&phi),
                json: functional_to_json(&phi),
                passed: true,
            })
        }
        Command::RgCheck { file } => {
            let v = read_json(file)?;
            let d = s.degree(&schema, file_limit(&v));
            rg_check(&schema, &functional_from_json(&schema, &v)?, d, s.eps_order)
        }
        Command::Scattering { file, max_order } => {
            let v = read_json(file)?;
            let d = s.degree(&schema, file_limit(&v));
            scattering(&schema, &functional_from_json(&schema, &v)?, *max_order, d)
        }
        Command::Verify | Command::EnumerateTrees { .. } => unreachable!("handled above"),
    }
}

fn read_element(schema: &HopfSchema, input: &ElementInput) -> Result<QElement> {
    match (&input.expr, &input.file) {
        (Some(e), _) => parse_element(schema, e),
        (None, Some(path)) => {
            let h = element_from_json(schema, &read_json(path)?)?;
            schema.check_element(&h)?;
            Ok(h)
        }
        (None, None) => Err(HopfError::Parse("no element given: pass --expr or a file".into())),
    }
}

fn coproduct(schema: &HopfSchema, input: &ElementInput, reduced: bool) -> Result<Outcome> {
    let h = read_element(schema, input)?;
    let t = if reduced {
        schema.reduced_coproduct(&h)?
    } else {
        schema.coproduct(&h)?
    };
    Ok(Outcome {
        text: format!("{t}\n"),
        json: tensor_to_json(&t),
        passed: true,
    })
}

fn antipode(schema: &HopfSchema, input: &ElementInput, left: bool) -> Result<Outcome> {
    let h = read_element(schema, input)?;
    let s = if left {
        schema.antipode_left(&h)?
    } else {
        schema.antipode(&h)?
    };
    Ok(Outcome {
        text: format!("{s}\n"),
        json: element_to_json(&s),
        passed: true,
    })
}

fn functional_text<R: CoefficientRing>(f: &Functional<R>) -> String {
    let mut out = f.kind().to_string();
    if let Some(d) = f.limit() {
        let _ = write!(out, " (degree <= {d})");
    }
    out.push('\n');
    match f {
        Functional::Table { values, .. } => {
            for (m, v) in values {
                let _ = writeln!(out, "  {m} -> {v}");
            }
        }
        Functional::Character { values, .. } | Functional::Infinitesimal { values, .. } => {
            for (g, v) in values {
                let _ = writeln!(out, "  {g} -> {v}");
            }
        }
    }
    out
}

fn functional_outcome<R: JsonCoeff>(f: &Functional<R>) -> Outcome {
    Outcome {
        text: functional_text(f),
        json: functional_to_json(f),
        passed: true,
    }
}

fn load_functional<R: JsonCoeff>(schema: &HopfSchema, v: &Value) -> Result<Functional<R>> {
    let f = functional_from_json(schema, v)?;
    f.check_schema(schema)?;
    Ok(f)
}

/// A character when both factors are characters, a table otherwise.
fn convolve_values<R: JsonCoeff>(schema: &HopfSchema, a: &Value, b: &Value, d: u32) -> Result<Outcome> {
    let xi: Functional<R> = load_functional(schema, a)?;
    let eta: Functional<R> = load_functional(schema, b)?;
    let product = convolve(&xi, &eta);
    let both_characters = matches!(xi, Functional::Character { .. }) && matches!(eta, Functional::Character { .. });
    let f = if both_characters {
        materialize_character(schema, &product, d)?
    } else {
        materialize_table(schema, &product, d)?
    };
    Ok(functional_outcome(&f))
}

fn exp_log<R: JsonCoeff>(schema: &HopfSchema, v: &Value, d: u32, exp: bool) -> Result<Outcome> {
    let f: Functional<R> = load_functional(schema, v)?;
    let out = if exp {
        exp_star(schema, &f, d)?
    } else {
        log_star(schema, &f, d)?
    };
    Ok(functional_outcome(&out))
}

fn birkhoff(schema: &HopfSchema, phi: &Functional<QLaurent>, d: u32) -> Result<Outcome> {
    phi.check_schema(schema)?;
    let pair = birkhoff_decompose(schema, phi, d)?;
    let checks = verify_birkhoff(schema, phi, &pair)?;
    let json = json!({
        "maxDegree": d,
        "certifiedOrder": pair.certified_order,
        "minus": functional_to_json(&pair.minus),
        "plus": functional_to_json(&pair.plus),
        "passed": checks.all_passed(),
        "checks": checks_json(&checks),
    });
    let text = format!(
        "certified through eps^{}\nminus: {}plus: {}{}{}",
        order_text(pair.certified_order),
        functional_text(&pair.minus),
        functional_text(&pair.plus),
        checks_text(&checks),
        summary_line(&checks),
    );
    Ok(Outcome {
        json,
        text,
        passed: checks.all_passed(),
    })
}

fn order_text(o: Option<i32>) -> String {
    o.map_or_else(|| "inf (exact)".into(), |n| n.to_string())
}

/// Residue data of `φ`: `d_n` is the `eps^{-n}` coefficient of the pole part
/// `φ₋`, `β = Y_* d₁`. With `counterterm` the input is taken as `φ₋`.
fn beta_data(
    schema: &HopfSchema,
    phi: &Functional<QLaurent>,
    d: u32,
    max_order: usize,
    counterterm: bool,
) -> Result<Outcome> {
    phi.check_schema(schema)?;
    let mut checks = AxiomReport::default();
    let (minus, certified) = if counterterm {
        check_pole_part(schema, phi, d)?;
        (
            materialize_table(schema, &phi.clone().into_expr(), d)?,
            certified_order(schema, phi, d)?,
        )
    } else {
        let pair = birkhoff_decompose(schema, phi, d)?;
        checks.extend(verify_birkhoff(schema, phi, &pair)?);
        (pair.minus, pair.certified_order)
    };
    let d1 = coefficient_table(schema, &minus, -1, d)?;
    let b = beta(schema, &d1, d)?;
    let mut dn = Vec::new();
    for n in 1..=max_order {
        dn.push(coefficient_table(schema, &minus, -(n as i32), d)?);
    }
    // the d_n of a loop compatible with the grading follow d_{n+1} = Y_*^{-1}(d_n ∗ β)
    let tower = dn_tower(schema, &b, max_order, d)?;
    let mut recursion_holds = true;
    for (got, want) in dn.iter().zip(&tower) {
        for m in schema.basis_up_to(d)? {
            if got.eval_monomial(&m)? != want.eval_monomial(&m)? {
                recursion_holds = false;
            }
        }
    }
    let json = json!({
        "maxDegree": d,
        "maxOrder": max_order,
        "certifiedOrder": certified,
        "residue": functional_to_json(&d1),
        "beta": functional_to_json(&b),
        "dn": dn.iter().map(functional_to_json).collect::<Vec<_>>(),
        "recursionHolds": recursion_holds,
        "passed": checks.all_passed(),
        "checks": checks_json(&checks),
    });
    let mut text = format!(
        "certified through eps^{}\nresidue: {}beta: {}",
        order_text(certified),
        functional_text(&d1),
        functional_text(&b)
    );
    for (n, f) in dn.iter().enumerate() {
        let _ = write!(text, "d_{}: {}", n + 1, functional_text(f));
    }
    let _ = writeln!(text, "d_(n+1) = Y_*^-1 (d_n * beta): {recursion_holds}");
    text.push_str(&checks_text(&checks));
    Ok(Outcome {
        json,
        text,
        passed: checks.all_passed(),
    })
}

fn certified_order(schema: &HopfSchema, phi: &Functional<QLaurent>, d: u32) -> Result<Option<i32>> {
    let mut order: Option<i32> = None;
    for m in schema.basis_up_to(d)? {
        if let Some(n) = phi.eval_monomial(&m)?.truncation() {
            order = Some(order.map_or(n, |o| o.min(n)));
        }
    }
    Ok(order)
}

fn check_pole_part(schema: &HopfSchema, phi: &Functional<QLaurent>, d: u32) -> Result<()> {
    for m in schema.basis_up_to(d)? {
        if m.is_one() {
            continue;
        }
        let v = phi.eval_monomial(&m)?;
        if v.terms().any(|(e, _)| e >= 0) {
            return Err(HopfError::Domain(format!(
                "a counterterm takes values in the pole parts, but its value on {m} is {v}"
            )));
        }
    }
    Ok(())
}

fn rg_check(schema: &HopfSchema, phi: &Functional<QLaurent>, d: u32, eps_order: i32) -> Result<Outcome> {
    phi.check_schema(schema)?;
    let r = rg_limit_check(schema, phi, d, eps_order)?;
    let witness = match &r.witness {
        Some(w) => json!({
            "monomial": w.monomial.to_string(),
            "exponent": w.exponent,
            "coefficient": w.coefficient.to_json(),
        }),
        None => Value::Null,
    };
    let passed = r.special && r.checks.all_passed();
    let json = json!({
        "maxDegree": d,
        "special": r.special,
        "certifiedOrder": r.certified_order,
        "witness": witness,
        "flow": r.flow.as_ref().map(functional_to_json),
        "beta": r.beta.as_ref().map(functional_to_json),
        "passed": passed,
        "checks": checks_json(&r.checks),
    });
    let mut text = String::new();
    match &r.witness {
        Some(w) => {
            let _ = writeln!(
                text,
                "special: false, witness {} (eps^{} coefficient {})",
                w.monomial, w.exponent, w.coefficient
            );
        }
        None => {
            let certified = if r.checks.all_passed() {
                "certified"
            } else {
                "NOT certified"
            };
            let _ = writeln!(text, "special: true, F_t = exp(*beta t) {certified} to degree {d}");
            let _ = writeln!(
                text,
                "pole cancellation certified through eps^{}",
                order_text(r.certified_order)
            );
            if let Some(b) = &r.beta {
                let _ = write!(text, "beta: {}", functional_text(b));
            }
            text.push_str(&checks_text(&r.checks));
        }
    }
    Ok(Outcome { json, text, passed })
}

fn scattering(schema: &HopfSchema, b: &Functional<Q>, max_order: usize, d: u32) -> Result<Outcome> {
    b.check_schema(schema)?;
    let r = scattering_check(schema, b, max_order, d)?;
    let terms: Vec<Value> = r
        .terms
        .iter()
        .filter(|x| x.finite.terms().next().is_some())
        .map(|x| {
            let finite: Vec<Value> = x
                .finite
                .terms()
                .map(|(rate, c)| json!({ "rate": rate, "coeff": c.to_json() }))
                .collect();
            json!({
                "order": x.order,
                "monomial": x.monomial.to_string(),
                "finite": finite,
                "limit": x.limit.to_json(),
            })
        })
        .collect();
    let json = json!({
        "maxDegree": d,
        "maxOrder": max_order,
        "terms": terms,
        "passed": r.checks.all_passed(),
        "checks": checks_json(&r.checks),
    });
    let mut text = String::new();
    for x in r.terms.iter().filter(|x| x.finite.terms().next().is_some()) {
        let _ = writeln!(text, "n={} {}: {}  ->  {}", x.order, x.monomial, x.finite, x.limit);
    }
    text.push_str(&checks_text(&r.checks));
    Ok(Outcome {
        json,
        text,
        passed: r.checks.all_passed(),
    })
}

fn verify(s: &Settings) -> Result<Outcome> {
    let schema = s.load_schema(false)?;
    let d = s.degree(&schema, None);
    let mut report = verify_axioms(&schema, d, s.eps_order as u32)?;
    let mut cfg = SuiteConfig::new(s.seed, d);
    cfg.eps_order = s.eps_order;
    report.extend(dual_suite(&schema, &cfg)?);
    report.extend(renorm_suite(&schema, &cfg)?);
    let json = json!({
        "schema": schema.label(),
        "maxDegree": d,
        "seed": s.seed,
        "passed": report.all_passed(),
        "checks": checks_json(&report),
    });
    let text = format!("{}{}", checks_text(&report), summary_line(&report));
    Ok(Outcome {
        json,
        text,
        passed: report.all_passed(),
    })
}

fn enumerate(n: u32) -> Result<Outcome> {
    let trees = enumerate_trees(n)?;
    let names: Vec<String> = trees.iter().map(|t| t.encoding().to_string()).collect();
    let text = names.iter().map(|t| format!("{t}\n")).collect();
    Ok(Outcome {
        json: json!({ "vertices": n, "count": names.len(), "trees": names }),
        text,
        passed: true,
    })
}
