//! Coordinate rings of affine space, the torus and punctured spheres,
//! their derivations, and jets of functions.

mod function;
mod jet;
mod parse;

pub use function::{FunctionElem, FunctionKey, Variety, VarietyKind};
pub use jet::{jet, JetSeries};
pub use parse::parse_function;
pub(crate) use function::check_same;

