//! Randomized identity checks with pass tallies, driven by a seeded RNG.

use std::sync::Arc;

use gfcoh::algebra::Variety;
use gfcoh::cochain::{
    ce_differential, gf_condition_check, jet_cochain, jet_smash_cochain, lift, restrict, CochainVec, Engine,
    FieldContext, GfSample, JetModel, SmashContext, TensorValue,
};
use gfcoh::coefficients::{check_differentiability, field_action, sample_family, LPlusModule};
use gfcoh::derham::{d_derham, phi_map, FormElem};
use gfcoh::kunneth::{random_linear_args, random_star_pair, verify_star_leibniz, StarSetup};
use gfcoh::lie::{bracket_fields, build_lplus, smash_bracket, SmashElem, VectorFieldElem};
use gfcoh::sampling::{random_cochain, random_field, random_function, random_key, random_tensor};
use gfcoh::util::subsets;
use gfcoh::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub property: String,
    pub passed: usize,
    pub total: usize,
    /// Index of the first failing case.
    pub first_failure: Option<usize>,
}

impl Tally {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

fn tally(property: &str, total: usize, mut case: impl FnMut(usize) -> Result<bool>) -> Result<Tally> {
    let mut passed = 0;
    let mut first_failure = None;
    for i in 0..total {
        if case(i)? {
            passed += 1;
        } else if first_failure.is_none() {
            first_failure = Some(i);
        }
    }
    Ok(Tally {
        property: property.into(),
        passed,
        total,
        first_failure,
    })
}

/// One independent stream per property, so adding a property does not shift
/// the samples drawn by the others.
fn stream(seed: u64, property: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(property);
    rng
}

fn fields(rng: &mut ChaCha8Rng, v: &Variety, k: usize) -> Vec<VectorFieldElem> {
    (0..k).map(|_| random_field(rng, v, 2, 2)).collect()
}

fn random_psi(rng: &mut ChaCha8Rng, model: &JetModel, k: usize, p: u32) -> CochainVec<TensorValue> {
    let v = model.variety().clone();
    let dim = model.module().dim();
    random_cochain(rng, model, k, p, 2, |r| (random_key(r, &v, 2), r.gen_range(0..dim)))
}

fn smash_args(rng: &mut ChaCha8Rng, v: &Variety, k: usize) -> Vec<SmashElem> {
    (0..k)
        .map(|_| {
            SmashElem::pure(&random_function(rng, v, 2, 1), &random_field(rng, v, 2, 1))
                .add(&SmashElem::pure(&random_function(rng, v, 2, 1), &random_field(rng, v, 2, 1)))
        })
        .collect()
}

pub fn star_leibniz(v: &Variety, w: &LPlusModule, samples: usize, seed: u64) -> Result<Tally> {
    let setup = StarSetup::new(v, build_lplus(v.dim(), 3)?, w)?;
    let mut rng = stream(seed, 0);
    tally("star_leibniz", samples, |_| {
        let k = rng.gen_range(0..=v.dim());
        let m = rng.gen_range(0..=2);
        let (alpha, beta) = random_star_pair(&mut rng, &setup, k, m, 2);
        let args = vec![random_linear_args(&mut rng, &setup, k + m + 1, 2)];
        Ok(setup.leibniz_defect(&alpha, &beta).is_zero() && verify_star_leibniz(&setup, &alpha, &beta, &args))
    })
}

/// Every randomized property on the given variety and module, `samples`
/// cases each; the differentiability check runs over its fixed family.
pub fn all(v: &Variety, w: &LPlusModule, samples: usize, seed: u64) -> Result<Vec<Tally>> {
    let ann = w.annihilation_degree();
    let model = Arc::new(JetModel::new(v, w, ann + 2)?);
    let engine = Engine::new(model.as_ref());
    let fctx = Arc::new(FieldContext {
        variety: v.clone(),
        module: w.clone(),
    });
    let sctx = Arc::new(SmashContext {
        variety: v.clone(),
        module: w.clone(),
    });
    let mut out = Vec::new();

    let mut rng = stream(seed, 1);
    out.push(tally("d_squared", samples, |_| {
        let k = rng.gen_range(0..=2);
        let psi = random_psi(&mut rng, &model, k, model.order());
        Ok(engine.apply(&engine.apply(&psi)).is_zero())
    })?);

    let mut rng = stream(seed, 2);
    out.push(tally("module_axiom", samples, |_| {
        let eta = random_field(&mut rng, v, 2, 2);
        let mu = random_field(&mut rng, v, 2, 2);
        let m = random_tensor(&mut rng, v, w.dim(), 2, 2);
        let lhs = field_action(&bracket_fields(&eta, &mu)?, &m, w);
        let rhs = field_action(&eta, &field_action(&mu, &m, w), w).sub(&field_action(&mu, &field_action(&eta, &m, w), w));
        Ok(lhs == rhs)
    })?);

    let mut rng = stream(seed, 3);
    out.push(tally("av_leibniz", samples, |_| {
        let eta = random_field(&mut rng, v, 2, 2);
        let f = random_function(&mut rng, v, 2, 2);
        let m = random_tensor(&mut rng, v, w.dim(), 2, 2);
        let lhs = field_action(&eta, &m.mul_function(&f), w);
        Ok(lhs == m.mul_function(&eta.apply(&f)).add(&field_action(&eta, &m, w).mul_function(&f)))
    })?);

    let mut rng = stream(seed, 4);
    out.push(tally("smash_jacobi", samples, |_| {
        let mut pick = || SmashElem::pure(&random_function(&mut rng, v, 2, 2), &random_field(&mut rng, v, 2, 1));
        let (a, b, c) = (pick(), pick(), pick());
        let jac = smash_bracket(&a, &smash_bracket(&b, &c)?)?
            .add(&smash_bracket(&b, &smash_bracket(&c, &a)?)?)
            .add(&smash_bracket(&c, &smash_bracket(&a, &b)?)?);
        Ok(jac.is_zero())
    })?);

    let mut rng = stream(seed, 5);
    out.push(tally("gf_closure", samples, |_| {
        let p = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=2);
        let phi = jet_cochain(&model, &random_psi(&mut rng, &model, k, p), &fctx);
        let s: GfSample = (random_function(&mut rng, v, 2, 2), fields(&mut rng, v, k));
        let s1: GfSample = (random_function(&mut rng, v, 2, 2), fields(&mut rng, v, k + 1));
        let next = p.max(ann) + 1;
        Ok(gf_condition_check(&phi, p, &[s]) && gf_condition_check(&ce_differential(&phi), next, &[s1]))
    })?);

    let mut rng = stream(seed, 6);
    out.push(tally("lift_restrict", samples, |_| {
        let k = rng.gen_range(1..=2);
        let psi = random_psi(&mut rng, &model, k, model.order());
        let phi = jet_cochain(&model, &psi, &fctx);
        let tilde = jet_smash_cochain(&model, &psi, &sctx);
        let etas = fields(&mut rng, v, k);
        let etas1 = fields(&mut rng, v, k + 1);
        let u = smash_args(&mut rng, v, k);
        let u1 = smash_args(&mut rng, v, k + 1);
        Ok(restrict(&lift(&phi, &sctx), &fctx).eval(&etas) == phi.eval(&etas)
            && lift(&restrict(&tilde, &fctx), &sctx).eval(&u) == tilde.eval(&u)
            && lift(&ce_differential(&phi), &sctx).eval(&u1) == ce_differential(&lift(&phi, &sctx)).eval(&u1)
            && restrict(&ce_differential(&tilde), &fctx).eval(&etas1)
                == ce_differential(&restrict(&tilde, &fctx)).eval(&etas1))
    })?);

    let mut rng = stream(seed, 7);
    let trivial = Arc::new(FieldContext {
        variety: v.clone(),
        module: LPlusModule::trivial(v.dim()),
    });
    out.push(tally("phi_anticommutes", samples, |_| {
        let k = rng.gen_range(0..v.dim());
        let mut form = FormElem::zero(v, k);
        for idx in subsets(v.dim(), k) {
            form = form.add(&FormElem::term(&random_function(&mut rng, v, 2, 2), &idx));
        }
        let args = fields(&mut rng, v, k + 1);
        let lhs = ce_differential(&phi_map(&form, &trivial)).eval(&args);
        Ok(lhs == phi_map(&d_derham(&form).neg(), &trivial).eval(&args))
    })?);

    out.push(star_leibniz(v, w, samples, seed)?);

    let family = sample_family(v, w);
    let report = check_differentiability(w, v, ann + 2, &family);
    out.push(Tally {
        property: "differentiability_order".into(),
        passed: usize::from(report.order == Some(ann + 1) && report.delta_consistent),
        total: 1,
        first_failure: None,
    });
    Ok(out)
}
