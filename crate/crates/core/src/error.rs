use std::fmt;

/// One violated schema invariant, with the place it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaViolation {
    pub invariant: &'static str,
    pub location: String,
    pub detail: String,
}

impl fmt::Display for SchemaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}: {}", self.invariant, self.location, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HopfError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("{what}: degree {requested} exceeds the cutoff {limit}")]
    CutoffExceeded { what: String, requested: u32, limit: u32 },

    #[error("{context}: truncation order {available} is insufficient, order {required} required")]
    InsufficientTruncation {
        context: String,
        required: i32,
        available: i32,
    },

    #[error("coefficient of eps^{exponent} requested beyond truncation order {truncation}")]
    BeyondTruncation { exponent: i32, truncation: i32 },

    #[error("tensor rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("singular input: {0}")]
    Singular(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("invalid schema:\n{}", list(.0))]
    InvalidSchema(Vec<SchemaViolation>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

fn list(v: &[SchemaViolation]) -> String {
    v.iter().map(|x| format!("  - {x}")).collect::<Vec<_>>().join("\n")
}

impl HopfError {
    /// Failures of a computed identity, as opposed to bad input.
    pub fn is_verification(&self) -> bool {
        matches!(self, HopfError::Verification(_))
    }
}

pub type Result<T> = std::result::Result<T, HopfError>;
