//! JSON encodings of ring values, elements, tensors and functionals.
//!
//! Rationals are strings `"p/q"`. Laurent series are
//! `{"minExp":-1,"truncation":6,"coeffs":{"-1":"1","0":"2"}}` with a `null`
//! truncation for exact values. Elements are
//! `{"terms":[{"coeff":"-3/2","monomial":[["t1",2],["t3",1]]}]}`.

use serde_json::{json, Map, Value};

use crate::algebra::{Element, Monomial, Tensor};
use crate::dual::Functional;
use crate::error::{HopfError, Result};
use crate::hopf::HopfSchema;
use crate::parse::parse_monomial;
use crate::ring::{parse_rational, CoefficientRing, Laurent, Poly, Rational};

/// Ring values with a JSON encoding.
pub trait JsonCoeff: CoefficientRing {
    /// The `"ring"` tag of functional files.
    const TAG: &'static str;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(what: &str, v: &Value) -> HopfError {
    HopfError::Parse(format!("expected {what}, got {v}"))
}

impl JsonCoeff for Rational {
    const TAG: &'static str = "rational";

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s).ok_or_else(|| bad("a rational \"p/q\"", v)),
            Value::Number(n) => n
                .as_i64()
                .map(|i| Rational::from_integer(i.into()))
                .ok_or_else(|| bad("an integer or a rational string", v)),
            _ => Err(bad("a rational \"p/q\"", v)),
        }
    }
}

impl<B: JsonCoeff> JsonCoeff for Laurent<B> {
    const TAG: &'static str = "laurent";

    fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (e, c) in self.terms() {
            coeffs.insert(e.to_string(), c.to_json());
        }
        json!({
            "minExp": self.valuation(),
            "truncation": self.truncation(),
            "coeffs": coeffs,
        })
    }

    /// Also accepts a bare coefficient as an exact constant.
    fn from_json(v: &Value) -> Result<Self> {
        let Value::Object(obj) = v else {
            return Ok(Laurent::constant(B::from_json(v)?));
        };
        for key in obj.keys() {
            if !["minExp", "truncation", "coeffs"].contains(&key.as_str()) {
                return Err(HopfError::Parse(format!("unknown Laurent field `{key}`")));
            }
        }
        let truncation = match obj.get("truncation") {
            None | Some(Value::Null) => None,
            Some(t) => Some(as_i32(t, "truncation")?),
        };
        let mut coeffs = Vec::new();
        match obj.get("coeffs") {
            Some(Value::Object(m)) => {
                for (k, c) in m {
                    let e: i32 = k
                        .trim()
                        .parse()
                        .map_err(|_| HopfError::Parse(format!("exponent `{k}` is not an integer")))?;
                    if let Some(n) = truncation {
                        if e > n {
                            return Err(HopfError::Parse(format!(
                                "coefficient at eps^{e} lies beyond the truncation order {n}"
                            )));
                        }
                    }
                    coeffs.push((e, B::from_json(c)?));
                }
            }
            None => {}
            Some(other) => return Err(bad("an object of exponent -> coefficient", other)),
        }
        let series = match truncation {
            Some(n) => Laurent::truncated(coeffs, n),
            None => Laurent::exact(coeffs),
        };
        if let Some(m) = obj.get("minExp").filter(|m| !m.is_null()) {
            let m = as_i32(m, "minExp")?;
            if series.valuation().is_some_and(|v| v < m) {
                return Err(HopfError::Parse(format!(
                    "minExp {m} is above the lowest nonzero exponent {}",
                    series.valuation().unwrap_or(m)
                )));
            }
        }
        Ok(series)
    }
}

impl<B: JsonCoeff> JsonCoeff for Poly<B> {
    const TAG: &'static str = "polynomial";

    /// Coefficients by increasing power of the variable.
    fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs().iter().map(JsonCoeff::to_json).collect::<Vec<_>>() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.get("coeffs") {
            Some(Value::Array(cs)) => Ok(Poly::from_coeffs(cs.iter().map(B::from_json).collect::<Result<_>>()?)),
            _ => Ok(Poly::constant(B::from_json(v)?)),
        }
    }
}

fn as_i32(v: &Value, field: &str) -> Result<i32> {
    v.as_i64()
        .and_then(|x| i32::try_from(x).ok())
        .ok_or_else(|| HopfError::Parse(format!("`{field}` must be an integer, got {v}")))
}

pub fn monomial_to_json(m: &Monomial) -> Value {
    Value::Array(m.factors().iter().map(|(g, e)| json!([g.name(), e])).collect())
}

pub fn monomial_from_json(schema: &HopfSchema, v: &Value) -> Result<Monomial> {
    let Value::Array(items) = v else {
        return Err(bad("a monomial [[name, exponent], ...]", v));
    };
    let mut factors = Vec::new();
    for item in items {
        let (name, exp) = match item.as_array().map(Vec::as_slice) {
            Some([Value::String(n), e]) => (n, e.as_u64().and_then(|e| u32::try_from(e).ok())),
            _ => return Err(bad("a factor [name, exponent]", item)),
        };
        let exp = exp.ok_or_else(|| bad("a non-negative exponent", item))?;
        factors.push((schema.resolve(name)?, exp));
    }
    Ok(Monomial::from_factors(factors))
}

pub fn element_to_json<R: JsonCoeff>(h: &Element<R>) -> Value {
    let terms: Vec<Value> = h
        .terms()
        .map(|(m, c)| json!({ "coeff": c.to_json(), "monomial": monomial_to_json(m) }))
        .collect();
    json!({ "terms": terms })
}

pub fn element_from_json<R: JsonCoeff>(schema: &HopfSchema, v: &Value) -> Result<Element<R>> {
    let Some(Value::Array(terms)) = v.get("terms") else {
        return Err(bad("an element {\"terms\": [...]}", v));
    };
    let mut out = Element::zero();
    for t in terms {
        let m = monomial_from_json(schema, t.get("monomial").unwrap_or(&Value::Null))?;
        let c = R::from_json(t.get("coeff").unwrap_or(&Value::Null))?;
        out.add_term(m, c);
    }
    Ok(out)
}

pub fn tensor_to_json<R: JsonCoeff>(t: &Tensor<R>) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(legs, c)| {
            json!({
                "coeff": c.to_json(),
                "legs": legs.iter().map(monomial_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "rank": t.rank(), "terms": terms })
}

/// `{"kind":..., "ring":..., "maxDegree":..., "values":{key: value}}`, keyed
/// by generator name for characters and by monomial for tables.
pub fn functional_to_json<R: JsonCoeff>(f: &Functional<R>) -> Value {
    let mut values = Map::new();
    match f {
        Functional::Table { values: v, .. } => {
            for (m, c) in v {
                values.insert(m.to_string(), c.to_json());
            }
        }
        Functional::Character { values: v, .. } | Functional::Infinitesimal { values: v, .. } => {
            for (g, c) in v {
                values.insert(g.name().to_string(), c.to_json());
            }
        }
    }
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(f.kind()));
    obj.insert("ring".into(), json!(R::TAG));
    if let Some(d) = f.limit() {
        obj.insert("maxDegree".into(), json!(d));
    }
    obj.insert("values".into(), Value::Object(values));
    Value::Object(obj)
}

/// Reads a functional; names must resolve in `schema`. A `"rational"` file
/// is accepted where Laurent values are expected.
pub fn functional_from_json<R: JsonCoeff>(schema: &HopfSchema, v: &Value) -> Result<Functional<R>> {
    let Value::Object(obj) = v else {
        return Err(bad("a functional object", v));
    };
    for key in obj.keys() {
        if !["kind", "ring", "maxDegree", "values"].contains(&key.as_str()) {
            return Err(HopfError::Parse(format!("unknown functional field `{key}`")));
        }
    }
    let kind = obj.get("kind").and_then(Value::as_str).unwrap_or("character");
    if let Some(ring) = obj.get("ring").and_then(Value::as_str) {
        if ring != R::TAG && ring != Rational::TAG {
            return Err(HopfError::Parse(format!(
                "ring `{ring}` where `{}` values are expected",
                R::TAG
            )));
        }
    }
    let empty = Map::new();
    let values = match obj.get("values") {
        Some(Value::Object(m)) => m,
        None => &empty,
        Some(other) => return Err(bad("an object of values", other)),
    };
    let f = match kind {
        "character" | "infinitesimal" => {
            let mut table = Vec::new();
            for (name, c) in values {
                table.push((schema.resolve(name)?, R::from_json(c)?));
            }
            if kind == "character" {
                Functional::character(table)
            } else {
                Functional::infinitesimal(table)
            }
        }
        "table" => {
            let mut table = Vec::new();
            for (key, c) in values {
                table.push((parse_monomial(schema, key)?, R::from_json(c)?));
            }
            Functional::table(table)
        }
        other => {
            return Err(HopfError::Parse(format!(
                "unknown functional kind `{other}` (expected character, infinitesimal or table)"
            )))
        }
    };
    Ok(match obj.get("maxDegree") {
        Some(d) if !d.is_null() => f.with_limit(
            d.as_u64()
                .and_then(|d| u32::try_from(d).ok())
                .ok_or_else(|| bad("a degree", d))?,
        ),
        _ => f,
    })
}
