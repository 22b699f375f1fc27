use std::io::Read;
use std::path::{Path, PathBuf};

use serde_json::Value;

use hopf_core::hopf::HopfSchema;
use hopf_core::instances::{load_schema, load_schema_unchecked, rooted_tree_schema};
use hopf_core::{HopfError, Result};

pub const DEFAULT_DEGREE: u32 = 6;

#[derive(Debug)]
pub struct Settings {
    pub schema: String,
    pub max_degree: Option<u32>,
    pub eps_order: i32,
    pub seed: u64,
}

impl Settings {
    fn custom_path(&self) -> Result<Option<PathBuf>> {
        match self.schema.as_str() {
            "custom" => match std::env::var_os("HOPF_SCHEMA_PATH") {
                Some(p) => Ok(Some(PathBuf::from(p))),
                None => Err(HopfError::Parse(
                    "--schema custom needs a path: use custom:<path> or set HOPF_SCHEMA_PATH".into(),
                )),
            },
            s => Ok(s.strip_prefix("custom:").map(PathBuf::from)),
        }
    }

    /// Loads the selected schema. `checked = false` skips the coassociativity
    /// check on custom schemas so that `verify` can report the violation.
    pub fn load_schema(&self, checked: bool) -> Result<HopfSchema> {
        if let Some(path) = self.custom_path()? {
            return if checked {
                load_schema(&path)
            } else {
                load_schema_unchecked(&path)
            };
        }
        match self.schema.as_str() {
            "ladder" => Ok(HopfSchema::ladder()),
            s => match s.strip_prefix("trees:") {
                Some(n) => {
                    let n: u32 = n
                        .parse()
                        .map_err(|_| HopfError::Parse(format!("`{s}`: trees:<N> needs a positive integer N")))?;
                    rooted_tree_schema(n)
                }
                None => Err(HopfError::Parse(format!(
                    "unknown schema `{s}` (expected ladder, trees:<N> or custom:<path>)"
                ))),
            },
        }
    }

    /// The explicit cutoff, else `file_limit`, else the schema default.
    pub fn degree(&self, schema: &HopfSchema, file_limit: Option<u32>) -> u32 {
        self.max_degree
            .or(file_limit)
            .or_else(|| schema.degree_limit())
            .unwrap_or(DEFAULT_DEGREE)
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| HopfError::Parse(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| HopfError::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| HopfError::Parse(format!("{}: invalid JSON: {e}", path.display())))
}

/// The `maxDegree` field of a functional file, if any.
pub fn file_limit(v: &Value) -> Option<u32> {
    v.get("maxDegree")
        .and_then(Value::as_u64)
        .and_then(|d| u32::try_from(d).ok())
}

pub fn ring_tag(v: &Value) -> &str {
    v.get("ring").and_then(Value::as_str).unwrap_or("rational")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(schema: &str, max_degree: Option<u32>) -> Settings {
        Settings {
            schema: schema.into(),
            max_degree,
            eps_order: 4,
            seed: 0,
        }
    }

    #[test]
    fn schema_selection() {
        assert_eq!(settings("ladder", None).load_schema(true).unwrap().label(), "ladder");
        assert_eq!(settings("trees:4", None).load_schema(true).unwrap().label(), "trees:4");
        for bad in ["trees:", "trees:x", "trees:0", "lader"] {
            assert!(settings(bad, None).load_schema(true).is_err(), "{bad}");
        }
    }

    #[test]
    fn degree_defaults() {
        let ladder = HopfSchema::ladder();
        let trees = rooted_tree_schema(5).unwrap();
        assert_eq!(settings("ladder", None).degree(&ladder, None), DEFAULT_DEGREE);
        assert_eq!(settings("ladder", None).degree(&ladder, Some(3)), 3);
        assert_eq!(settings("ladder", Some(2)).degree(&ladder, Some(3)), 2);
        assert_eq!(settings("trees:5", None).degree(&trees, None), 5);
    }
}
