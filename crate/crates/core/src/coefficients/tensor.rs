use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{check_same, FunctionElem, FunctionKey, Variety};
use crate::lie::{LPlusGenerator, SmashElem, VectorFieldElem};
use crate::util::{inv_multi_factorial, multi_indices_of_degree};
use crate::Rational;

use super::module::LPlusModule;

/// Element `sum c · x^k ⊗ w_b` of the tensor module `A ⊗ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModuleElem {
    variety: Variety,
    terms: BTreeMap<(FunctionKey, usize), Rational>,
}

impl TensorModuleElem {
    pub fn zero(v: &Variety) -> Self {
        Self {
            variety: v.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `f ⊗ w_b`
    pub fn pure(f: &FunctionElem, b: usize) -> Self {
        let mut out = Self::zero(f.variety());
        for (k, c) in f.terms() {
            out.add_term(k.clone(), b, c.clone());
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((FunctionKey, usize), Rational)>>(v: &Variety, it: I) -> Self {
        let mut out = Self::zero(v);
        for ((k, b), c) in it {
            out.add_term(k, b, c);
        }
        out
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn terms(&self) -> &BTreeMap<(FunctionKey, usize), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, k: FunctionKey, b: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (k, b);
        let v = self.terms.remove(&key).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        check_same(&self.variety, &other.variety).expect("tensor elements on different varieties");
        let mut out = self.clone();
        for ((k, b), v) in &other.terms {
            out.add_term(k.clone(), *b, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-Rational::one(), other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::zero(&self.variety).add_scaled(c, self)
    }

    /// The `A`-module structure `f · (s ⊗ w) = fs ⊗ w`.
    pub fn mul_function(&self, f: &FunctionElem) -> Self {
        let mut out = Self::zero(&self.variety);
        for ((k, b), c) in &self.terms {
            let s = FunctionElem::from_key(&self.variety, k.clone(), c.clone());
            out = out.add(&Self::pure(&f.mul(&s), *b));
        }
        out
    }

    /// Splits into `(s_b, b)` with `s_b ∈ A`, one entry per module index.
    pub fn components(&self) -> BTreeMap<usize, FunctionElem> {
        let mut out: BTreeMap<usize, FunctionElem> = BTreeMap::new();
        for ((k, b), c) in &self.terms {
            let s = FunctionElem::from_key(&self.variety, k.clone(), c.clone());
            let slot = out.entry(*b).or_insert_with(|| FunctionElem::zero(&self.variety));
            *slot = slot.add(&s);
        }
        out
    }
}

impl fmt::Display for TensorModuleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components()
            .into_iter()
            .map(|(b, s)| format!("({s}) (x) w{b}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `f ∂_i (s ⊗ w) = (f ∂_i s) ⊗ w + sum_{0 < |k| <= D} (1/k!) ∂^k f · s ⊗ (X^k ∂/∂X_i) w`
/// where `D` is the annihilation degree of `W` (higher terms act by zero).
pub fn tensor_action(f: &FunctionElem, direction: usize, m: &TensorModuleElem, w: &LPlusModule) -> TensorModuleElem {
    check_same(f.variety(), m.variety()).expect("tensor action across varieties");
    let v = f.variety();
    let n = v.dim();
    assert!(direction < n, "direction out of range");
    let mut out = TensorModuleElem::zero(v);
    let comps = m.components();
    for (b, s) in &comps {
        out = out.add(&TensorModuleElem::pure(&f.mul(&s.derive(direction)), *b));
    }
    if w.acting_generators().next().is_none() {
        return out;
    }
    for d in 1..=w.annihilation_degree() {
        for k in multi_indices_of_degree(n, d) {
            let g = LPlusGenerator::new(k.clone(), direction);
            let jet = f.derive_multi(&k).scale(&inv_multi_factorial(&k));
            if jet.is_zero() {
                continue;
            }
            for (b, s) in &comps {
                let img = w.action(&g, *b);
                if img.is_zero() {
                    continue;
                }
                let coef = jet.mul(s);
                for (t, c) in img.iter() {
                    out = out.add(&TensorModuleElem::pure(&coef.scale(c), *t));
                }
            }
        }
    }
    out
}

/// Action of a vector field on `A ⊗ W`.
pub fn field_action(eta: &VectorFieldElem, m: &TensorModuleElem, w: &LPlusModule) -> TensorModuleElem {
    let mut out = TensorModuleElem::zero(m.variety());
    for (i, f) in eta.components().iter().enumerate() {
        if !f.is_zero() {
            out = out.add(&tensor_action(f, i, m, w));
        }
    }
    out
}

/// Action of `A # V` on `A ⊗ W`: `(f # η) · m = f · (η · m)`.
pub fn smash_action(u: &SmashElem, m: &TensorModuleElem, w: &LPlusModule) -> TensorModuleElem {
    let mut out = TensorModuleElem::zero(m.variety());
    for (f, eta) in u.pairs() {
        out = out.add(&field_action(eta, m, w).mul_function(&f));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarietyKind;
    use crate::lie::bracket_fields;
    use crate::util::q;

    #[test]
    fn action_examples() {
        let a = VarietyKind::affine(1).unwrap();
        let x = FunctionElem::coordinate(&a, 0);
        let one = FunctionElem::one(&a);
        let lam = q(3);
        let w = LPlusModule::weight(lam.clone());
        let m = TensorModuleElem::pure(&one, 0);
        assert_eq!(
            tensor_action(&x.pow(2), 0, &m, &w),
            TensorModuleElem::pure(&x.scale(&(q(2) * &lam)), 0)
        );
        let c = FunctionElem::constant(&a, q(5));
        let mx = TensorModuleElem::pure(&x, 0);
        assert_eq!(tensor_action(&c, 0, &mx, &w), TensorModuleElem::pure(&c, 0));
        assert_eq!(
            tensor_action(&x, 0, &mx, &w),
            TensorModuleElem::pure(&x.scale(&(q(1) + &lam)), 0)
        );
    }

    #[test]
    fn module_axiom_for_adjoint() {
        let a = VarietyKind::affine(1).unwrap();
        let w = LPlusModule::truncated_adjoint(1, 2).unwrap();
        let x = FunctionElem::coordinate(&a, 0);
        for (p, r) in [(0, 3), (2, 3), (1, 4)] {
            let eta = VectorFieldElem::from_component(x.pow(p), 0);
            let mu = VectorFieldElem::from_component(x.pow(r), 0);
            for b in 0..w.dim() {
                let m = TensorModuleElem::pure(&x.pow(2), b);
                let lhs = field_action(&bracket_fields(&eta, &mu).unwrap(), &m, &w);
                let rhs = field_action(&eta, &field_action(&mu, &m, &w), &w)
                    .sub(&field_action(&mu, &field_action(&eta, &m, &w), &w));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
