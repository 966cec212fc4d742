//! Chevalley–Eilenberg cochains: weight slices, finite-order (Gelfand-Fuks)
//! complexes, their stabilized cohomology, and symbolic cochains on vector
//! fields.

mod model;
mod models;
mod slice;
mod stabilize;
mod symbolic;

pub use model::{CochainKey, CochainModel, CochainVec, Engine, Weight};
pub use models::{zero_weight, JetModel, LPlusModel, SemidirectModel, TensorValue};
pub use slice::{build_weight_slice, cohomology_dim, differential_matrix, enumerate_keys, slice_reports, SliceReport, WeightSlice};
pub use stabilize::{stabilized_gf_cohomology, stabilized_on_model, StabilizedCohomology};
pub use symbolic::{
    ce_differential, constant_cochain, eval_on_coordinates, gf_condition_check, gf_condition_witness, gf_sum, jet_cochain, jet_smash_cochain, lift,
    restrict, Cochain, FieldContext, GfSample, LieContext, SmashContext,
};
