use std::fmt::Write;

use serde_json::{json, Value};

use hopf_core::hopf::{AxiomCheck, AxiomReport};

fn check_json(c: &AxiomCheck) -> Value {
    let counterexample = match &c.counterexample {
        Some(x) => json!({ "input": x.input, "detail": x.detail }),
        None => Value::Null,
    };
    json!({
        "axiom": c.axiom,
        "law": c.law,
        "maxDegree": c.max_degree,
        "cases": c.cases,
        "passed": c.passed,
        "counterexample": counterexample,
    })
}

pub fn checks_json(r: &AxiomReport) -> Value {
    Value::Array(r.checks.iter().map(check_json).collect())
}

/// One line per check; failures carry the counterexample on the next lines.
pub fn checks_text(r: &AxiomReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{tag} {:<40} {}  [degree {}, {} cases]",
            c.axiom, c.law, c.max_degree, c.cases
        );
        if let Some(x) = &c.counterexample {
            let _ = writeln!(out, "     input: {}", x.input);
            let _ = writeln!(out, "     {}", x.detail);
        }
    }
    out
}

pub fn summary_line(r: &AxiomReport) -> String {
    let failed = r.failures().count();
    if failed == 0 {
        format!("all {} checks passed\n", r.checks.len())
    } else {
        format!("{failed} of {} checks failed\n", r.checks.len())
    }
}
