//! Random small elements for randomized identity checks.

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{FunctionElem, FunctionKey, Variety, VarietyKind};
use crate::cochain::{CochainModel, CochainVec};
use crate::coefficients::TensorModuleElem;
use crate::lie::VectorFieldElem;
use crate::util::q;
use crate::Rational;

fn small_coefficient<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            return q(c);
        }
    }
}

/// A random basis function with exponents (or pole orders) bounded by `max_degree`.
pub fn random_key<R: Rng>(rng: &mut R, variety: &VarietyKind, max_degree: u32) -> FunctionKey {
    let d = max_degree as i32;
    match variety {
        VarietyKind::Affine(n) => FunctionKey::Monomial((0..*n).map(|_| rng.gen_range(0..=d)).collect()),
        VarietyKind::Torus(n) => FunctionKey::Monomial((0..*n).map(|_| rng.gen_range(-d..=d)).collect()),
        VarietyKind::PuncturedSphere(p) => {
            if rng.gen_bool(0.5) || max_degree == 0 {
                FunctionKey::Power(rng.gen_range(0..=max_degree))
            } else {
                FunctionKey::Pole(rng.gen_range(0..p.len()), rng.gen_range(1..=max_degree))
            }
        }
    }
}

pub fn random_function<R: Rng>(rng: &mut R, variety: &Variety, max_degree: u32, max_terms: usize) -> FunctionElem {
    let terms = rng.gen_range(1..=max_terms.max(1));
    FunctionElem::from_terms(
        variety,
        (0..terms).map(|_| (random_key(rng, variety, max_degree), small_coefficient(rng))),
    )
}

/// A vector field with each component zero or a random function; never zero.
pub fn random_field<R: Rng>(rng: &mut R, variety: &Variety, max_degree: u32, max_terms: usize) -> VectorFieldElem {
    let n = variety.dim();
    loop {
        let comps: Vec<FunctionElem> = (0..n)
            .map(|_| {
                if n > 1 && rng.gen_bool(0.4) {
                    FunctionElem::zero(variety)
                } else {
                    random_function(rng, variety, max_degree, max_terms)
                }
            })
            .collect();
        let eta = VectorFieldElem::from_components(variety, comps).expect("same variety");
        if !eta.is_zero() {
            return eta;
        }
    }
}

pub fn random_tensor<R: Rng>(
    rng: &mut R,
    variety: &Variety,
    dim: usize,
    max_degree: u32,
    max_terms: usize,
) -> TensorModuleElem {
    let terms = rng.gen_range(1..=max_terms.max(1));
    TensorModuleElem::from_terms(
        variety,
        (0..terms).map(|_| {
            (
                (random_key(rng, variety, max_degree), rng.gen_range(0..dim)),
                small_coefficient(rng),
            )
        }),
    )
}

/// A random nonzero rational with small numerator and denominator.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let c = small_coefficient(rng) / q(rng.gen_range(1..=3));
    debug_assert!(!c.is_zero());
    c
}

/// A random cochain with `terms` summands on generators of order at most
/// `max_order`, with values drawn by `value`.
pub fn random_cochain<M, R, F>(
    rng: &mut R,
    model: &M,
    degree: usize,
    max_order: u32,
    terms: usize,
    mut value: F,
) -> CochainVec<M::Value>
where
    M: CochainModel,
    R: Rng,
    F: FnMut(&mut R) -> M::Value,
{
    let pool: Vec<usize> = (0..model.generator_count())
        .filter(|&g| model.generator_order(g) <= max_order)
        .collect();
    let mut out = CochainVec::zero(degree);
    if pool.len() < degree {
        return out;
    }
    for _ in 0..terms {
        let mut args: Vec<usize> = rand::seq::index::sample(rng, pool.len(), degree)
            .into_iter()
            .map(|i| pool[i])
            .collect();
        args.sort_unstable();
        let v = value(rng);
        out.add_term(args, v, random_rational(rng));
    }
    out
}
