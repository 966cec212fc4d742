//! Lie algebras of vector fields, the smash product `A # V`, and finite graded
//! presentations of `L₊`, `gl_n` and semidirect products.

mod graded;
mod smash;
mod vector_field;

pub use graded::{
    build_lplus, build_semidirect, build_vector_fields, BasisElement, GradedLieAlgebra, LPlusGenerator,
};
pub use smash::{delta_element, smash_bracket, SmashElem};
pub use vector_field::{bracket_fields, VectorFieldElem};
