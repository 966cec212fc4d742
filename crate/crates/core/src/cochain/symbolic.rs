//! Cochains as exact functions of Lie algebra elements. These are evaluated
//! on samples, as opposed to the basis-level `CochainVec`, and are used to
//! check identities involving arbitrary vector fields and functions.

use std::fmt::Debug;
use std::sync::Arc;

use crate::algebra::{FunctionElem, Variety};
use crate::coefficients::{field_action, smash_action, LPlusModule, TensorModuleElem};
use crate::lie::{bracket_fields, smash_bracket, SmashElem, VectorFieldElem};
use crate::util::{binomial, sign};
use crate::Rational;

use super::model::CochainVec;
use super::models::{JetModel, TensorValue};

/// A Lie algebra acting on a module of values.
pub trait LieContext: Send + Sync + 'static {
    type Elem: Clone + Debug + Send + Sync + 'static;
    type Value: Clone + PartialEq + Debug + Send + Sync + 'static;

    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn act(&self, a: &Self::Elem, v: &Self::Value) -> Self::Value;
    fn zero_value(&self) -> Self::Value;
    /// `acc + c · v`
    fn add_scaled(&self, acc: &Self::Value, c: &Rational, v: &Self::Value) -> Self::Value;
}

type Eval<C> = dyn Fn(&[<C as LieContext>::Elem]) -> <C as LieContext>::Value + Send + Sync;

/// An alternating `k`-linear map, known only through evaluation.
pub struct Cochain<C: LieContext> {
    degree: usize,
    ctx: Arc<C>,
    eval: Arc<Eval<C>>,
}

impl<C: LieContext> Clone for Cochain<C> {
    fn clone(&self) -> Self {
        Self {
            degree: self.degree,
            ctx: self.ctx.clone(),
            eval: self.eval.clone(),
        }
    }
}

impl<C: LieContext> Cochain<C> {
    pub fn new<F>(ctx: &Arc<C>, degree: usize, eval: F) -> Self
    where
        F: Fn(&[C::Elem]) -> C::Value + Send + Sync + 'static,
    {
        Self {
            degree,
            ctx: ctx.clone(),
            eval: Arc::new(eval),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn context(&self) -> &Arc<C> {
        &self.ctx
    }

    pub fn eval(&self, args: &[C::Elem]) -> C::Value {
        assert_eq!(args.len(), self.degree, "cochain of degree {} given {} arguments", self.degree, args.len());
        (self.eval)(args)
    }

    /// `self + c · other`
    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let (a, b, c) = (self.clone(), other.clone(), c.clone());
        let ctx = self.ctx.clone();
        Self::new(&self.ctx, self.degree, move |u| ctx.add_scaled(&a.eval(u), &c, &b.eval(u)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, c) = (self.clone(), c.clone());
        let ctx = self.ctx.clone();
        Self::new(&self.ctx, self.degree, move |u| ctx.add_scaled(&ctx.zero_value(), &c, &a.eval(u)))
    }
}

/// The differential with positions counted from 1:
/// `dφ(u_1..u_{k+1}) = sum_{s<t} (−1)^{s+t−1} φ([u_s,u_t], .., û_s, .., û_t, ..) + sum_s (−1)^s u_s·φ(.., û_s, ..)`.
pub fn ce_differential<C: LieContext>(phi: &Cochain<C>) -> Cochain<C> {
    let phi = phi.clone();
    let ctx = phi.ctx.clone();
    Cochain::new(&phi.ctx.clone(), phi.degree + 1, move |u| {
        let mut acc = ctx.zero_value();
        let k1 = u.len();
        for s in 0..k1 {
            for t in s + 1..k1 {
                let mut args = Vec::with_capacity(k1 - 1);
                args.push(ctx.bracket(&u[s], &u[t]));
                args.extend(u.iter().enumerate().filter(|(i, _)| *i != s && *i != t).map(|(_, x)| x.clone()));
                acc = ctx.add_scaled(&acc, &sign(s + t + 1), &phi.eval(&args));
            }
        }
        for s in 0..k1 {
            let rest: Vec<C::Elem> = u.iter().enumerate().filter(|(i, _)| *i != s).map(|(_, x)| x.clone()).collect();
            acc = ctx.add_scaled(&acc, &sign(s + 1), &ctx.act(&u[s], &phi.eval(&rest)));
        }
        acc
    })
}

/// Vector fields on a variety acting on `A ⊗ W`.
#[derive(Clone, Debug)]
pub struct FieldContext {
    pub variety: Variety,
    pub module: LPlusModule,
}

impl LieContext for FieldContext {
    type Elem = VectorFieldElem;
    type Value = TensorModuleElem;

    fn bracket(&self, a: &VectorFieldElem, b: &VectorFieldElem) -> VectorFieldElem {
        bracket_fields(a, b).expect("fields on one variety")
    }

    fn act(&self, a: &VectorFieldElem, v: &TensorModuleElem) -> TensorModuleElem {
        field_action(a, v, &self.module)
    }

    fn zero_value(&self) -> TensorModuleElem {
        TensorModuleElem::zero(&self.variety)
    }

    fn add_scaled(&self, acc: &TensorModuleElem, c: &Rational, v: &TensorModuleElem) -> TensorModuleElem {
        acc.add_scaled(c, v)
    }
}

/// The smash product `A # V` acting on `A ⊗ W`.
#[derive(Clone, Debug)]
pub struct SmashContext {
    pub variety: Variety,
    pub module: LPlusModule,
}

impl LieContext for SmashContext {
    type Elem = SmashElem;
    type Value = TensorModuleElem;

    fn bracket(&self, a: &SmashElem, b: &SmashElem) -> SmashElem {
        smash_bracket(a, b).expect("smash elements on one variety")
    }

    fn act(&self, a: &SmashElem, v: &TensorModuleElem) -> TensorModuleElem {
        smash_action(a, v, &self.module)
    }

    fn zero_value(&self) -> TensorModuleElem {
        TensorModuleElem::zero(&self.variety)
    }

    fn add_scaled(&self, acc: &TensorModuleElem, c: &Rational, v: &TensorModuleElem) -> TensorModuleElem {
        acc.add_scaled(c, v)
    }
}

/// Calls `visit(product of coefficients, chosen items)` for every way of
/// picking one term from each expansion.
fn for_each_choice<T: Clone>(
    variety: &Variety,
    expansions: &[Vec<(FunctionElem, T)>],
    visit: &mut dyn FnMut(&FunctionElem, &[T]),
) {
    fn go<T: Clone>(
        expansions: &[Vec<(FunctionElem, T)>],
        coef: FunctionElem,
        chosen: &mut Vec<T>,
        visit: &mut dyn FnMut(&FunctionElem, &[T]),
    ) {
        match expansions.split_first() {
            None => visit(&coef, chosen),
            Some((head, tail)) => {
                for (f, item) in head {
                    chosen.push(item.clone());
                    go(tail, coef.mul(f), chosen, visit);
                    chosen.pop();
                }
            }
        }
    }
    go(expansions, FunctionElem::one(variety), &mut Vec::new(), visit);
}

/// `φ̃(f_1 # η_1, …, f_k # η_k) = f_1 ⋯ f_k φ(η_1, …, η_k)`, extended linearly.
pub fn lift(phi: &Cochain<FieldContext>, ctx: &Arc<SmashContext>) -> Cochain<SmashContext> {
    let phi = phi.clone();
    let variety = ctx.variety.clone();
    Cochain::new(ctx, phi.degree(), move |u| {
        let expansions: Vec<Vec<(FunctionElem, VectorFieldElem)>> =
            u.iter().map(|x| x.pairs().map(|(f, eta)| (f, eta.clone())).collect()).collect();
        let mut acc = TensorModuleElem::zero(&variety);
        for_each_choice(&variety, &expansions, &mut |f, etas| {
            acc = acc.add(&phi.eval(etas).mul_function(f));
        });
        acc
    })
}

/// `ψ(η_1, …, η_k) = ψ̃(1 # η_1, …, 1 # η_k)`
pub fn restrict(psi: &Cochain<SmashContext>, ctx: &Arc<FieldContext>) -> Cochain<FieldContext> {
    let psi = psi.clone();
    let one = FunctionElem::one(&ctx.variety);
    Cochain::new(ctx, psi.degree(), move |etas| {
        let u: Vec<SmashElem> = etas.iter().map(|eta| SmashElem::pure(&one, eta)).collect();
        psi.eval(&u)
    })
}

/// Value of the `A`-linear cochain `ψ` on arguments given by their
/// coordinates `sum f_r u_r` in the generators of its model.
pub fn eval_on_coordinates(
    variety: &Variety,
    psi: &CochainVec<TensorValue>,
    coordinates: Vec<Vec<(FunctionElem, usize)>>,
) -> TensorModuleElem {
    let mut acc = TensorModuleElem::zero(variety);
    for_each_choice(variety, &coordinates, &mut |f, gens| {
        let vals = psi.value_on(gens);
        if !vals.is_empty() {
            acc = acc.add(&TensorModuleElem::from_terms(variety, vals).mul_function(f));
        }
    });
    acc
}

fn coordinates_swapped(c: Vec<(usize, FunctionElem)>) -> Vec<(FunctionElem, usize)> {
    c.into_iter().map(|(r, f)| (f, r)).collect()
}

/// The cochain on vector fields obtained by restricting an `A`-linear
/// cochain on the jet algebroid `Q_P` along `η ↦ 1 # η`. It satisfies the
/// Gelfand-Fuks condition at every order `p` such that `ψ` vanishes on the
/// generators of order above `p`.
pub fn jet_cochain(model: &Arc<JetModel>, psi: &CochainVec<TensorValue>, ctx: &Arc<FieldContext>) -> Cochain<FieldContext> {
    let (model, psi) = (model.clone(), psi.clone());
    let variety = ctx.variety.clone();
    Cochain::new(ctx, psi.degree, move |etas| {
        let coords = etas.iter().map(|eta| coordinates_swapped(model.field_coordinates(eta))).collect();
        eval_on_coordinates(&variety, &psi, coords)
    })
}

/// The same cochain as an `A`-linear cochain on `A # V`.
pub fn jet_smash_cochain(model: &Arc<JetModel>, psi: &CochainVec<TensorValue>, ctx: &Arc<SmashContext>) -> Cochain<SmashContext> {
    let (model, psi) = (model.clone(), psi.clone());
    let variety = ctx.variety.clone();
    Cochain::new(ctx, psi.degree, move |u| {
        let coords = u.iter().map(|x| coordinates_swapped(model.jet_coordinates(x))).collect();
        eval_on_coordinates(&variety, &psi, coords)
    })
}

/// A sample for the Gelfand-Fuks condition: a function and `k` vector fields.
pub type GfSample = (FunctionElem, Vec<VectorFieldElem>);

/// `sum_{i=0}^p (−1)^i C(p,i) f^{p−i} φ(f^i η_1, η_2, …, η_k)`
pub fn gf_sum(phi: &Cochain<FieldContext>, p: u32, sample: &GfSample) -> TensorModuleElem {
    let (f, etas) = sample;
    let mut acc = TensorModuleElem::zero(&phi.context().variety);
    if etas.is_empty() {
        return acc;
    }
    for i in 0..=p {
        let mut args = etas.clone();
        args[0] = etas[0].mul_function(&f.pow(i));
        let c = Rational::from_integer(binomial(p as i64, i as u64)) * sign(i as usize);
        acc = acc.add_scaled(&c, &phi.eval(&args).mul_function(&f.pow(p - i)));
    }
    acc
}

/// Index of the first sample violating the order-`p` condition.
pub fn gf_condition_witness(phi: &Cochain<FieldContext>, p: u32, samples: &[GfSample]) -> Option<usize> {
    samples.iter().position(|s| !gf_sum(phi, p, s).is_zero())
}

/// Whether `φ` satisfies the order-`p` Gelfand-Fuks condition on every
/// sample. Degree-zero cochains satisfy it vacuously.
pub fn gf_condition_check(phi: &Cochain<FieldContext>, p: u32, samples: &[GfSample]) -> bool {
    gf_condition_witness(phi, p, samples).is_none()
}

/// The constant degree-zero cochain with value `m`.
pub fn constant_cochain<C: LieContext>(ctx: &Arc<C>, m: C::Value) -> Cochain<C> {
    Cochain::new(ctx, 0, move |_| m.clone())
}
