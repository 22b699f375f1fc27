//! The Hopf algebra layer: schemas, coproducts, antipodes, grading operators
//! and the axiom verifier.

pub mod grading;
pub mod linalg;
mod ops;
mod schema;
pub mod verify;

pub use ops::antipode_on_legs;
pub use schema::{HopfSchema, ReducedTerm, SchemaData, SchemaKind};
pub use verify::{verify_axioms, AxiomCheck, AxiomReport, Counterexample};
