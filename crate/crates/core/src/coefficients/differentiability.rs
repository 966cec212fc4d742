use crate::algebra::{FunctionElem, Variety, VarietyKind};
use crate::lie::{delta_element, VectorFieldElem};
use crate::util::{binomial, q};
use crate::Rational;

use super::module::LPlusModule;
use super::tensor::{field_action, smash_action, TensorModuleElem};

pub type Sample = (FunctionElem, VectorFieldElem, TensorModuleElem);

#[derive(Clone, Debug)]
pub struct DifferentiabilityReport {
    /// Smallest `N <= candidate_order` for which every sample is annihilated,
    /// or `None` if even the candidate order fails.
    pub order: Option<u32>,
    /// A sample that fails at `order − 1` (or at the candidate when `order` is `None`).
    pub witness: Option<Sample>,
    /// Whether the binomial sum agreed with the action of the `Δ^N`
    /// spanning element on every sample and order tried.
    pub delta_consistent: bool,
}

/// `sum_{j=0}^N (−1)^j C(N,j) f^{N−j} (f^j η) m`
pub fn binomial_sum(w: &LPlusModule, order: u32, f: &FunctionElem, eta: &VectorFieldElem, m: &TensorModuleElem) -> TensorModuleElem {
    let mut out = TensorModuleElem::zero(m.variety());
    for j in 0..=order {
        let mut c = Rational::from_integer(binomial(order as i64, j as u64));
        if j % 2 == 1 {
            c = -c;
        }
        let term = field_action(&eta.mul_function(&f.pow(j)), m, w).mul_function(&f.pow(order - j));
        out = out.add_scaled(&c, &term);
    }
    out
}

pub fn check_differentiability(
    w: &LPlusModule,
    variety: &Variety,
    candidate_order: u32,
    samples: &[Sample],
) -> DifferentiabilityReport {
    assert!(!samples.is_empty(), "differentiability check needs samples");
    let one = FunctionElem::one(variety);
    let mut delta_consistent = true;
    let mut first_failure: Vec<Option<Sample>> = Vec::new();
    for order in 0..=candidate_order {
        let mut failure = None;
        for s @ (f, eta, m) in samples {
            let sum = binomial_sum(w, order, f, eta, m);
            if order >= 1 {
                let d = delta_element(&one, f, order, eta).expect("same variety");
                if smash_action(&d, m, w) != sum {
                    delta_consistent = false;
                }
            }
            if !sum.is_zero() && failure.is_none() {
                failure = Some(s.clone());
            }
        }
        let passed = failure.is_none();
        first_failure.push(failure);
        if passed {
            let witness = if order == 0 { None } else { first_failure[order as usize - 1].clone() };
            return DifferentiabilityReport {
                order: Some(order),
                witness,
                delta_consistent,
            };
        }
    }
    DifferentiabilityReport {
        order: None,
        witness: first_failure.pop().flatten(),
        delta_consistent,
    }
}

/// Small functions, vector fields and module elements on the variety, used
/// as a deterministic sample family.
pub fn sample_family(variety: &Variety, w: &LPlusModule) -> Vec<Sample> {
    let n = variety.dim();
    let mut funcs = Vec::new();
    for i in 0..n {
        let x = FunctionElem::coordinate(variety, i);
        funcs.push(x.clone());
        funcs.push(x.pow(2).add(&FunctionElem::constant(variety, q(1))));
        if i + 1 < n {
            funcs.push(x.mul(&FunctionElem::coordinate(variety, i + 1)));
        }
    }
    match &**variety {
        VarietyKind::Torus(_) => {
            let mut e = vec![0; n];
            e[0] = -1;
            funcs.push(FunctionElem::monomial(variety, &e).expect("torus monomial"));
        }
        VarietyKind::PuncturedSphere(p) => {
            for i in 0..p.len() {
                funcs.push(FunctionElem::pole(variety, i, 1).expect("pole"));
            }
        }
        VarietyKind::Affine(_) => {}
    }
    let mut fields = Vec::new();
    for i in 0..n {
        fields.push(VectorFieldElem::partial(variety, i));
        fields.push(VectorFieldElem::from_component(FunctionElem::coordinate(variety, (i + 1) % n), i));
    }
    let mut elems = Vec::new();
    for b in 0..w.dim() {
        elems.push(TensorModuleElem::pure(&FunctionElem::one(variety), b));
        elems.push(TensorModuleElem::pure(&FunctionElem::coordinate(variety, 0), b));
    }
    let mut out = Vec::new();
    for f in &funcs {
        for eta in &fields {
            for m in &elems {
                out.push((f.clone(), eta.clone(), m.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = VarietyKind::affine(1).unwrap();
        let x = FunctionElem::coordinate(&a, 0);
        let d = VectorFieldElem::partial(&a, 0);
        let m = TensorModuleElem::pure(&FunctionElem::one(&a), 0);
        let t = LPlusModule::trivial(1);
        assert!(binomial_sum(&t, 1, &x, &d, &m).is_zero());
        let f = LPlusModule::weight(q(2));
        assert!(binomial_sum(&f, 2, &x, &d, &m).is_zero());
        let s1 = binomial_sum(&f, 1, &x, &d, &m);
        // x∂(1⊗w) − (x∂)(1⊗w) with jet correction: −λ (1⊗w)
        assert_eq!(s1, m.scale(&q(-2)));
    }

    #[test]
    fn orders_of_density_modules() {
        let a = VarietyKind::affine(1).unwrap();
        for (lam, expect) in [(0, 1), (1, 2), (-1, 2), (2, 2)] {
            let w = LPlusModule::weight(q(lam));
            let r = check_differentiability(&w, &a, 4, &sample_family(&a, &w));
            assert_eq!(r.order, Some(expect), "lambda={lam}");
            assert!(r.delta_consistent);
            assert_eq!(r.witness.is_some(), expect > 0);
        }
        let w = LPlusModule::weight(q(3));
        let r = check_differentiability(&w, &a, 1, &sample_family(&a, &w));
        assert_eq!(r.order, None);
        assert!(r.witness.is_some());
    }
}
