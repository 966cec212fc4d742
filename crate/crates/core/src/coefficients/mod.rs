//! Coefficient systems: finite-dimensional `L₊`-modules `W`, tensor modules
//! `A ⊗ W` with the jet-corrected vector-field action, and differentiability.

mod differentiability;
mod module;
mod tensor;

pub use differentiability::{binomial_sum, check_differentiability, sample_family, DifferentiabilityReport, Sample};
pub use module::LPlusModule;
pub use tensor::{field_action, smash_action, tensor_action, TensorModuleElem};
