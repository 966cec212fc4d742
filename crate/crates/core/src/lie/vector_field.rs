use std::fmt;

use crate::algebra::{FunctionElem, Variety};
use crate::error::Result;
use crate::Rational;

/// `sum_i f_i ∂_i` on a variety of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldElem {
    variety: Variety,
    components: Vec<FunctionElem>,
}

impl VectorFieldElem {
    pub fn zero(v: &Variety) -> Self {
        Self {
            variety: v.clone(),
            components: vec![FunctionElem::zero(v); v.dim()],
        }
    }

    /// `f ∂_direction` (0-based direction).
    pub fn from_component(f: FunctionElem, direction: usize) -> Self {
        let mut out = Self::zero(f.variety());
        out.components[direction] = f;
        out
    }

    pub fn from_components(v: &Variety, components: Vec<FunctionElem>) -> Result<Self> {
        assert_eq!(components.len(), v.dim(), "wrong number of components");
        for c in &components {
            crate::algebra::check_same(v, c.variety())?;
        }
        Ok(Self {
            variety: v.clone(),
            components,
        })
    }

    /// `∂_direction`
    pub fn partial(v: &Variety, direction: usize) -> Self {
        Self::from_component(FunctionElem::one(v), direction)
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn components(&self) -> &[FunctionElem] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &FunctionElem {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(FunctionElem::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Rational::from_integer(1.into()), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&Rational::from_integer((-1).into()), other)
    }

    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        Self {
            variety: self.variety.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add_scaled(c, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            variety: self.variety.clone(),
            components: self.components.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `f · η`
    pub fn mul_function(&self, f: &FunctionElem) -> Self {
        Self {
            variety: self.variety.clone(),
            components: self.components.iter().map(|a| f.mul(a)).collect(),
        }
    }

    /// `η(f)`
    pub fn apply(&self, f: &FunctionElem) -> FunctionElem {
        let mut out = FunctionElem::zero(&self.variety);
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul(&f.derive(i)));
            }
        }
        out
    }
}

/// `[Σ f_i ∂_i, Σ g_j ∂_j] = Σ_j (η(g_j) − μ(f_j)) ∂_j`
pub fn bracket_fields(a: &VectorFieldElem, b: &VectorFieldElem) -> Result<VectorFieldElem> {
    crate::algebra::check_same(&a.variety, &b.variety)?;
    let components = (0..a.variety.dim())
        .map(|j| a.apply(&b.components[j]).sub(&b.apply(&a.components[j])))
        .collect();
    Ok(VectorFieldElem {
        variety: a.variety.clone(),
        components,
    })
}

impl fmt::Display for VectorFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let d = format!("d/d{}", self.variety.variable_name(i));
                if c.as_constant() == Some(Rational::from_integer(1.into())) {
                    d
                } else {
                    format!("({c})*{d}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarietyKind;
    use crate::util::q;

    fn field(v: &Variety, e: i32) -> VectorFieldElem {
        VectorFieldElem::from_component(FunctionElem::monomial(v, &[e]).unwrap(), 0)
    }

    #[test]
    fn bracket_examples() {
        let a = VarietyKind::affine(1).unwrap();
        assert_eq!(bracket_fields(&field(&a, 1), &field(&a, 2)).unwrap(), field(&a, 2));
        let d = VectorFieldElem::partial(&a, 0);
        assert!(bracket_fields(&d, &d).unwrap().is_zero());
        let t = VarietyKind::torus(1).unwrap();
        assert_eq!(
            bracket_fields(&field(&t, 1), &field(&t, -1)).unwrap(),
            field(&t, -1).scale(&q(-2))
        );
    }

    #[test]
    fn display() {
        let v = VarietyKind::affine(2).unwrap();
        let x1 = FunctionElem::coordinate(&v, 0);
        let e = VectorFieldElem::from_component(x1, 1).add(&VectorFieldElem::partial(&v, 0));
        assert_eq!(e.to_string(), "d/dx1 + (x1)*d/dx2");
    }
}
