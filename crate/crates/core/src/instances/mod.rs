//! Concrete schemas: the ladder algebra, rooted trees, and JSON-defined ones.

pub mod custom;
pub mod trees;

use crate::hopf::HopfSchema;

pub use custom::{load_schema, load_schema_str, load_schema_str_unchecked, load_schema_unchecked, schema_to_json};
pub use trees::{enumerate_trees, rooted_tree_schema, AdmissibleCut, RootedTree};

/// Generators `t_n` in every degree `n >= 1` with
/// `Δ'(t_n) = Σ_{k=1}^{n-1} t_k ⊗ t_{n-k}`.
pub fn ladder_schema() -> HopfSchema {
    HopfSchema::ladder()
}
