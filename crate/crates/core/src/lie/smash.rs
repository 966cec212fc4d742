use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{check_same, FunctionElem, FunctionKey, Variety};
use crate::error::{Error, Result};
use crate::util::binomial;
use crate::Rational;

use super::vector_field::{bracket_fields, VectorFieldElem};

/// Element `sum_k x^k # η_k` of the smash product `A # V`, normalized so that
/// every left factor is a basis element of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashElem {
    variety: Variety,
    terms: BTreeMap<FunctionKey, VectorFieldElem>,
}

impl SmashElem {
    pub fn zero(v: &Variety) -> Self {
        Self {
            variety: v.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `f # η`
    pub fn pure(f: &FunctionElem, eta: &VectorFieldElem) -> Self {
        check_same(f.variety(), eta.variety()).expect("smash factors on different varieties");
        let mut out = Self::zero(f.variety());
        for (k, c) in f.terms() {
            out.add_term(k.clone(), eta.scale(c));
        }
        out
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn terms(&self) -> &BTreeMap<FunctionKey, VectorFieldElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: FunctionKey, eta: VectorFieldElem) {
        if eta.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&eta),
            None => eta,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            return out;
        }
        for (k, eta) in &other.terms {
            out.add_term(k.clone(), eta.scale(c));
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

    /// Iterates the terms as pairs `(x^k, η_k)`.
    pub fn pairs(&self) -> impl Iterator<Item = (FunctionElem, &VectorFieldElem)> + '_ {
        self.terms
            .iter()
            .map(|(k, eta)| (FunctionElem::from_key(&self.variety, k.clone(), Rational::one()), eta))
    }

    /// `(a ⊗ b) · (f # η) = af # bη`
    pub fn tensor_mul(&self, a: &FunctionElem, b: &FunctionElem) -> Self {
        let mut out = Self::zero(&self.variety);
        for (f, eta) in self.pairs() {
            out = out.add(&Self::pure(&a.mul(&f), &eta.mul_function(b)));
        }
        out
    }

    /// Left `A`-module structure `h · (f # η) = hf # η`.
    pub fn left_mul(&self, h: &FunctionElem) -> Self {
        self.tensor_mul(h, &FunctionElem::one(&self.variety))
    }

    /// The anchor `f # η ↦ fη`.
    pub fn anchor(&self) -> VectorFieldElem {
        let mut out = VectorFieldElem::zero(&self.variety);
        for (f, eta) in self.pairs() {
            out = out.add(&eta.mul_function(&f));
        }
        out
    }
}

/// `[f # η, g # μ] = fη(g) # μ − gμ(f) # η + fg # [η, μ]`, extended bilinearly.
pub fn smash_bracket(u: &SmashElem, v: &SmashElem) -> Result<SmashElem> {
    check_same(&u.variety, &v.variety)?;
    let mut out = SmashElem::zero(&u.variety);
    for (f, eta) in u.pairs() {
        for (g, mu) in v.pairs() {
            out = out
                .add(&SmashElem::pure(&f.mul(&eta.apply(&g)), mu))
                .sub(&SmashElem::pure(&g.mul(&mu.apply(&f)), eta))
                .add(&SmashElem::pure(&f.mul(&g), &bracket_fields(eta, mu)?));
        }
    }
    Ok(out)
}

/// `sum_{i=0}^s (−1)^i C(s,i) g f^{s−i} # f^i η`
pub fn delta_element(
    g: &FunctionElem,
    f: &FunctionElem,
    s: u32,
    eta: &VectorFieldElem,
) -> Result<SmashElem> {
    if s == 0 {
        return Err(Error::InvalidArgument("delta_element needs s >= 1".into()));
    }
    check_same(g.variety(), f.variety())?;
    check_same(g.variety(), eta.variety())?;
    let mut out = SmashElem::zero(g.variety());
    for i in 0..=s {
        let mut c = Rational::from_integer(binomial(s as i64, i as u64));
        if i % 2 == 1 {
            c = -c;
        }
        let left = g.mul(&f.pow(s - i));
        let right = eta.mul_function(&f.pow(i));
        out = out.add_scaled(&c, &SmashElem::pure(&left, &right));
    }
    Ok(out)
}

impl fmt::Display for SmashElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .pairs()
            .map(|(g, eta)| format!("{g} # ({eta})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarietyKind;
    use crate::util::q;

    #[test]
    fn bracket_examples() {
        let a = VarietyKind::affine(1).unwrap();
        let one = FunctionElem::one(&a);
        let x = FunctionElem::coordinate(&a, 0);
        let d = VectorFieldElem::partial(&a, 0);
        let u = SmashElem::pure(&one, &d);
        let v = SmashElem::pure(&x, &d);
        assert_eq!(smash_bracket(&u, &v).unwrap(), u);
        assert!(smash_bracket(&v, &v).unwrap().is_zero());

        let mu = VectorFieldElem::from_component(x.pow(2), 0);
        let f = x.pow(3);
        let lhs = smash_bracket(&u, &SmashElem::pure(&f, &mu)).unwrap();
        let rhs = SmashElem::pure(&d.apply(&f), &mu)
            .add(&SmashElem::pure(&f, &bracket_fields(&d, &mu).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_examples() {
        let a = VarietyKind::affine(1).unwrap();
        let one = FunctionElem::one(&a);
        let x = FunctionElem::coordinate(&a, 0);
        let d = VectorFieldElem::partial(&a, 0);
        let d1 = delta_element(&one, &x, 1, &d).unwrap();
        let expect1 = SmashElem::pure(&x, &d).sub(&SmashElem::pure(&one, &d.mul_function(&x)));
        assert_eq!(d1, expect1);

        let c = FunctionElem::constant(&a, q(3));
        assert!(delta_element(&one, &c, 4, &d).unwrap().is_zero());

        let d2 = delta_element(&one, &x, 2, &d).unwrap();
        let expect2 = SmashElem::pure(&x.pow(2), &d)
            .sub(&SmashElem::pure(&x, &d.mul_function(&x)).scale(&q(2)))
            .add(&SmashElem::pure(&one, &d.mul_function(&x.pow(2))));
        assert_eq!(d2, expect2);
        assert!(delta_element(&one, &x, 0, &d).is_err());
    }

    #[test]
    fn anchor_of_delta_vanishes() {
        let t = VarietyKind::torus(1).unwrap();
        let f = FunctionElem::monomial(&t, &[-1]).unwrap();
        let g = FunctionElem::monomial(&t, &[2]).unwrap();
        let eta = VectorFieldElem::from_component(g.clone(), 0);
        assert!(delta_element(&g, &f, 2, &eta).unwrap().anchor().is_zero());
    }
}
