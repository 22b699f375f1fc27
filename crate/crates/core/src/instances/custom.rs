//! User-defined schemas read from JSON:
//!
//! ```json
//! {"generators":[{"name":"x1","degree":1},{"name":"x2","degree":2}],
//!  "reducedCoproduct":{"x2":[{"left":[["x1",1]],"right":"x1","coeff":"1"}]}}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{HopfError, Result};
use crate::hopf::{HopfSchema, ReducedTerm, SchemaData, SchemaKind};
use crate::ring::{parse_rational, Rational};

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawSchema {
    generators: Vec<RawGenerator>,
    #[serde(rename = "reducedCoproduct", default)]
    reduced_coproduct: serde_json::Map<String, Value>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    degree: u32,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    left: Vec<(String, u32)>,
    right: RawRight,
    #[serde(default = "one_coeff")]
    coeff: Value,
}

/// The right leg must be a generator name; a monomial array is accepted by
/// the parser only so that validation can name the violated invariant.
#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum RawRight {
    Name(String),
    Monomial(Vec<(String, u32)>),
}

fn one_coeff() -> Value {
    Value::String("1".into())
}

fn coeff_of(v: &Value, loc: &str) -> Result<Rational> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        _ => None,
    };
    parsed.ok_or_else(|| HopfError::Parse(format!("{loc}: coefficient {v} is not a rational \"p/q\"")))
}

/// Parses schema JSON without validating any invariant.
pub fn parse_schema_data(text: &str) -> Result<SchemaData> {
    let raw: RawSchema = serde_json::from_str(text).map_err(|e| HopfError::Parse(format!("schema JSON: {e}")))?;
    let mut data = SchemaData::default();
    for g in raw.generators {
        data.generators.push((g.name, g.degree));
    }
    for (name, terms) in raw.reduced_coproduct {
        let terms: Vec<RawTerm> =
            serde_json::from_value(terms).map_err(|e| HopfError::Parse(format!("reducedCoproduct.{name}: {e}")))?;
        let mut out = Vec::new();
        for (i, t) in terms.into_iter().enumerate() {
            let coeff = coeff_of(&t.coeff, &format!("reducedCoproduct.{name}[{i}]"))?;
            let right = match t.right {
                RawRight::Name(n) => vec![(n, 1)],
                RawRight::Monomial(m) => m,
            };
            out.push(ReducedTerm {
                left: t.left,
                right,
                coeff,
            });
        }
        data.reduced.push((name, out));
    }
    Ok(data)
}

/// Parses and fully validates a schema, including coassociativity.
pub fn load_schema_str(text: &str) -> Result<HopfSchema> {
    HopfSchema::from_data(SchemaKind::Custom, &parse_schema_data(text)?, true)
}

/// As [`load_schema_str`] but skips the coassociativity check, so the axiom
/// verifier can be pointed at a faulty coproduct and report it.
pub fn load_schema_str_unchecked(text: &str) -> Result<HopfSchema> {
    HopfSchema::from_data(SchemaKind::Custom, &parse_schema_data(text)?, false)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| HopfError::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn load_schema(path: &Path) -> Result<HopfSchema> {
    load_schema_str(&read(path)?)
}

pub fn load_schema_unchecked(path: &Path) -> Result<HopfSchema> {
    load_schema_str_unchecked(&read(path)?)
}

/// Serializes schema data in the format read by [`load_schema`].
pub fn schema_to_json(data: &SchemaData) -> Value {
    let mut reduced = serde_json::Map::new();
    for (name, terms) in &data.reduced {
        let terms: Vec<Value> = terms
            .iter()
            .map(|t| {
                let right = match t.right.as_slice() {
                    [(n, 1)] => Value::String(n.clone()),
                    other => serde_json::json!(other),
                };
                serde_json::json!({"left": t.left, "right": right, "coeff": t.coeff.to_string()})
            })
            .collect();
        reduced.insert(name.clone(), Value::Array(terms));
    }
    serde_json::json!({
        "generators": data.generators.iter().map(|(n, d)| serde_json::json!({"name": n, "degree": d})).collect::<Vec<_>>(),
        "reducedCoproduct": reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_minimal_schema() {
        let s = load_schema_str(
            r#"{"generators":[{"name":"x1","degree":1},{"name":"x2","degree":2}],
                "reducedCoproduct":{"x2":[{"left":[["x1",1]],"right":"x1","coeff":"1"}]}}"#,
        )
        .unwrap();
        let x2 = s.generator_element("x2").unwrap();
        assert_eq!(s.antipode(&x2).unwrap().to_string(), "-x2 + x1^2");
    }

    #[test]
    fn monomial_right_leg_is_named() {
        let err = load_schema_str(
            r#"{"generators":[{"name":"x1","degree":1},{"name":"x2","degree":2}],
                "reducedCoproduct":{"x2":[{"left":[],"right":[["x1",2]],"coeff":"1"}]}}"#,
        )
        .unwrap_err();
        let HopfError::InvalidSchema(v) = err else {
            panic!("{err}")
        };
        assert!(v.iter().any(|x| x.invariant.contains("right leg not a generator")));
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(load_schema_str("{"), Err(HopfError::Parse(_))));
        assert!(matches!(
            load_schema_str(r#"{"generators":[{"name":"x","degree":1,"extra":2}]}"#),
            Err(HopfError::Parse(_))
        ));
    }

    #[test]
    fn non_coassociative_rejected_at_load_but_not_unchecked() {
        // x3 with Δ'x3 = x1⊗x2 only is not coassociative given Δ'x2 = x1⊗x1.
        let text = r#"{"generators":[{"name":"x1","degree":1},{"name":"x2","degree":2},{"name":"x3","degree":3}],
            "reducedCoproduct":{"x2":[{"left":[["x1",1]],"right":"x1"}],
                                "x3":[{"left":[["x1",1]],"right":"x2"}]}}"#;
        let err = load_schema_str(text).unwrap_err();
        let HopfError::InvalidSchema(v) = err else { panic!() };
        assert_eq!(v[0].invariant, "coassociativity");
        assert!(load_schema_str_unchecked(text).is_ok());
    }
}
