//! Multilinear algebra over a coefficient ring: monomials in graded
//! generators, polynomial elements, and flat tensor powers.

mod element;
mod monomial;
mod tensor;

pub use element::Element;
pub use monomial::{Generator, Monomial};
pub use tensor::{scalar_tensor, Tensor};
