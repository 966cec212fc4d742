use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{jet, FunctionElem, FunctionKey, Variety, VarietyKind};
use crate::coefficients::{smash_action, LPlusModule, TensorModuleElem};
use crate::error::{Error, Result};
use crate::lie::{smash_bracket, BasisElement, GradedLieAlgebra, LPlusGenerator, SmashElem, VectorFieldElem};
use crate::util::{binomial, multi_indices_below, multi_indices_of_degree, q};
use crate::{QVec, Rational};

use super::model::{CochainModel, Weight};

/// Value basis of `A ⊗ W`: a basis function of `A` and a basis index of `W`.
pub type TensorValue = (FunctionKey, usize);

fn lplus_generators(g: &GradedLieAlgebra) -> Result<Vec<LPlusGenerator>> {
    g.basis()
        .iter()
        .map(|b| match b {
            BasisElement::LPlus(x) => Ok(x.clone()),
            other => Err(Error::InvalidArgument(format!("{other} is not an L₊ generator"))),
        })
        .collect()
}

fn unit_direction_weight(n: usize, exponent: &[u32], direction: usize) -> Weight {
    (0..n)
        .map(|k| q(exponent[k] as i64 - (k == direction) as i64))
        .collect()
}

/// `(L₊ / L_{>d}, W)`, graded by the Euler element (one weight component).
#[derive(Clone, Debug)]
pub struct LPlusModel {
    algebra: GradedLieAlgebra,
    module: LPlusModule,
    gens: Vec<LPlusGenerator>,
    weights: Vec<Weight>,
}

impl LPlusModel {
    pub fn new(algebra: GradedLieAlgebra, module: LPlusModule) -> Result<Self> {
        if algebra.n() != module.n() {
            return Err(Error::InvalidArgument(format!(
                "L₊ in {} variables with a module over n={}",
                algebra.n(),
                module.n()
            )));
        }
        let gens = lplus_generators(&algebra)?;
        let weights = algebra.weights().iter().map(|&w| vec![q(w)]).collect();
        Ok(Self {
            algebra,
            module,
            gens,
            weights,
        })
    }

    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &LPlusModule {
        &self.module
    }
}

impl CochainModel for LPlusModel {
    type Value = usize;

    fn label(&self) -> String {
        self.algebra.label().to_string()
    }

    fn module_label(&self) -> String {
        self.module.label().to_string()
    }

    fn generator_count(&self) -> usize {
        self.gens.len()
    }

    fn generator_weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    fn generator_name(&self, i: usize) -> String {
        self.gens[i].to_string()
    }

    fn bracket(&self, i: usize, j: usize) -> &QVec {
        self.algebra.bracket(i, j)
    }

    fn act(&self, i: usize, v: &usize) -> Vec<(usize, Rational)> {
        self.module.action(&self.gens[i], *v).into_entries()
    }

    fn value_weight(&self, v: &usize) -> Weight {
        vec![self.module.total_weight(*v)]
    }

    fn values_of_weight(&self, w: &Weight) -> Vec<usize> {
        (0..self.module.dim())
            .filter(|&b| self.module.total_weight(b) == w[0])
            .collect()
    }
}

fn tensor_value_weight(module: &LPlusModule, v: &TensorValue) -> Weight {
    match &v.0 {
        FunctionKey::Monomial(e) => e
            .iter()
            .zip(module.weight_of(v.1))
            .map(|(&a, w)| q(a as i64) + w)
            .collect(),
        _ => Vec::new(),
    }
}

fn tensor_values_of_weight(variety: &VarietyKind, module: &LPlusModule, w: &Weight) -> Vec<TensorValue> {
    if !variety.is_graded() {
        return Vec::new();
    }
    let mut out = Vec::new();
    'basis: for b in 0..module.dim() {
        let mut e = Vec::with_capacity(w.len());
        for (x, y) in w.iter().zip(module.weight_of(b)) {
            let d = x - y;
            if !d.is_integer() {
                continue 'basis;
            }
            let Ok(a) = i32::try_from(d.to_integer()) else { continue 'basis };
            if a < 0 && matches!(variety, VarietyKind::Affine(_)) {
                continue 'basis;
            }
            e.push(a);
        }
        out.push((FunctionKey::Monomial(e), b));
    }
    out
}

fn tensor_to_values(m: &TensorModuleElem) -> Vec<(TensorValue, Rational)> {
    m.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// The jet algebroid `Q_P = (A # V) / (Δ^P ⊗_A V)`, free over `A` on
/// `u_{m,i} = t^m ∂_i` (`|m| < P`) in the coordinates `f # g∂_i ↦ f(x) g(x+t) ∂_i`,
/// acting on the tensor module `A ⊗ W`.
///
/// `A`-linear cochains on `Q_p` are the Gelfand-Fuks cochains of order `p`.
#[derive(Clone, Debug)]
pub struct JetModel {
    variety: Variety,
    module: LPlusModule,
    order: u32,
    gens: Vec<(Vec<u32>, usize)>,
    index: HashMap<(Vec<u32>, usize), usize>,
    weights: Vec<Weight>,
    smash: Vec<SmashElem>,
    table: Vec<Vec<QVec>>,
}

impl JetModel {
    /// Needs `order >= annihilation_degree(W) + 1` so that `Δ^order ⊗ V`
    /// annihilates `A ⊗ W`.
    pub fn new(variety: &Variety, module: &LPlusModule, order: u32) -> Result<Self> {
        let n = variety.dim();
        if module.n() != n {
            return Err(Error::InvalidArgument(format!(
                "module over n={} on a variety of dimension {n}",
                module.n()
            )));
        }
        if order < module.annihilation_degree() + 1 {
            return Err(Error::InvalidArgument(format!(
                "order {order} is below the differentiability order {} of A ⊗ {}",
                module.annihilation_degree() + 1,
                module.label()
            )));
        }
        let mut gens = Vec::new();
        for d in 0..order {
            for m in multi_indices_of_degree(n, d) {
                for i in 0..n {
                    gens.push((m.clone(), i));
                }
            }
        }
        let index = gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let weights = gens
            .iter()
            .map(|(m, i)| if variety.is_graded() { unit_direction_weight(n, m, *i) } else { Vec::new() })
            .collect();
        let smash = gens.iter().map(|(m, i)| jet_generator(variety, m, *i)).collect();
        let mut model = Self {
            variety: variety.clone(),
            module: module.clone(),
            order,
            gens,
            index,
            weights,
            smash,
            table: Vec::new(),
        };
        let g = model.gens.len();
        let mut table = vec![vec![QVec::zero(); g]; g];
        for a in 0..g {
            for b in a + 1..g {
                let br = smash_bracket(&model.smash[a], &model.smash[b])?;
                let mut entries = Vec::new();
                for (r, f) in model.jet_coordinates(&br) {
                    let c = f.as_constant().ok_or_else(|| {
                        Error::Unsupported(format!("non-constant structure function {f} in Q_{order}"))
                    })?;
                    entries.push((r, c));
                }
                let v = QVec::from_entries(entries);
                table[b][a] = v.neg();
                table[a][b] = v;
            }
        }
        model.table = table;
        Ok(model)
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn module(&self) -> &LPlusModule {
        &self.module
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `(m, i)` for generator `u_{m,i}`.
    pub fn generator(&self, i: usize) -> &(Vec<u32>, usize) {
        &self.gens[i]
    }

    pub fn index_of(&self, m: &[u32], i: usize) -> Option<usize> {
        self.index.get(&(m.to_vec(), i)).copied()
    }

    /// The generator as an element of `A # V`.
    pub fn smash_generator(&self, i: usize) -> &SmashElem {
        &self.smash[i]
    }

    /// Coordinates of an element of `A # V` in the `A`-basis `u_{m,i}` of
    /// `Q_P`, dropping the ideal `Δ^P ⊗ V`.
    pub fn jet_coordinates(&self, u: &SmashElem) -> Vec<(usize, FunctionElem)> {
        let mut acc: Vec<Option<FunctionElem>> = vec![None; self.gens.len()];
        for (f, eta) in u.pairs() {
            for (i, g) in eta.components().iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let series = jet(&f, g, self.order - 1).expect("same variety");
                for (m, c) in series.coefficients().clone() {
                    let r = self.index[&(m, i)];
                    acc[r] = Some(match acc[r].take() {
                        Some(old) => old.add(&c),
                        None => c,
                    });
                }
            }
        }
        acc.into_iter()
            .enumerate()
            .filter_map(|(r, f)| f.filter(|f| !f.is_zero()).map(|f| (r, f)))
            .collect()
    }

    /// Coordinates of `1 # η`.
    pub fn field_coordinates(&self, eta: &VectorFieldElem) -> Vec<(usize, FunctionElem)> {
        self.jet_coordinates(&SmashElem::pure(&FunctionElem::one(&self.variety), eta))
    }
}

/// `u_{m,i} = sum_{γ <= m} C(m,γ) (−x)^{m−γ} # x^γ ∂_i`
fn jet_generator(v: &Variety, m: &[u32], i: usize) -> SmashElem {
    let n = v.dim();
    let mut out = SmashElem::zero(v);
    for gamma in multi_indices_below(m) {
        let mut c = Rational::one();
        let mut left = FunctionElem::one(v);
        let mut right = FunctionElem::one(v);
        for k in 0..n {
            c *= Rational::from_integer(binomial(m[k] as i64, gamma[k] as u64));
            let x = FunctionElem::coordinate(v, k);
            left = left.mul(&x.neg().pow(m[k] - gamma[k]));
            right = right.mul(&x.pow(gamma[k]));
        }
        let eta = VectorFieldElem::from_component(right, i);
        out = out.add_scaled(&c, &SmashElem::pure(&left, &eta));
    }
    out
}

impl CochainModel for JetModel {
    type Value = TensorValue;

    fn label(&self) -> String {
        format!("Q_{}({})", self.order, self.variety.name())
    }

    fn module_label(&self) -> String {
        format!("A(x){}", self.module.label())
    }

    fn generator_count(&self) -> usize {
        self.gens.len()
    }

    fn generator_weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    fn generator_name(&self, i: usize) -> String {
        let (m, d) = &self.gens[i];
        format!("t^{m:?} d{}", d + 1)
    }

    fn generator_order(&self, i: usize) -> u32 {
        self.gens[i].0.iter().sum::<u32>() + 1
    }

    fn bracket(&self, i: usize, j: usize) -> &QVec {
        &self.table[i][j]
    }

    fn act(&self, i: usize, v: &TensorValue) -> Vec<(TensorValue, Rational)> {
        let m = TensorModuleElem::from_terms(&self.variety, [(v.clone(), Rational::one())]);
        tensor_to_values(&smash_action(&self.smash[i], &m, &self.module))
    }

    fn value_weight(&self, v: &TensorValue) -> Weight {
        tensor_value_weight(&self.module, v)
    }

    fn values_of_weight(&self, w: &Weight) -> Vec<TensorValue> {
        tensor_values_of_weight(&self.variety, &self.module, w)
    }
}

/// `V ⋉ (A ⊗ g)` with `g = L₊ / L_{>d}` (or `g = 0`), `A`-linear cochains with
/// values in `A ⊗ W`: `∂_i` acts on the `A` factor, `1 ⊗ x` through `W`.
///
/// Generators are `∂_1, …, ∂_n` followed by the basis of `g`.
#[derive(Clone, Debug)]
pub struct SemidirectModel {
    variety: Variety,
    lplus: Option<GradedLieAlgebra>,
    module: LPlusModule,
    gens: Vec<LPlusGenerator>,
    weights: Vec<Weight>,
    table: Vec<Vec<QVec>>,
}

impl SemidirectModel {
    pub fn new(variety: &Variety, lplus: Option<GradedLieAlgebra>, module: &LPlusModule) -> Result<Self> {
        let n = variety.dim();
        if module.n() != n || lplus.as_ref().is_some_and(|g| g.n() != n) {
            return Err(Error::InvalidArgument("dimension mismatch in semidirect model".into()));
        }
        if lplus.is_none() && module.acting_generators().next().is_some() {
            return Err(Error::InvalidArgument("a nontrivial W needs an L₊ factor".into()));
        }
        let gens = match &lplus {
            Some(g) => lplus_generators(g)?,
            None => Vec::new(),
        };
        let graded = variety.is_graded();
        let mut weights: Vec<Weight> = (0..n)
            .map(|i| if graded { unit_direction_weight(n, &vec![0; n], i) } else { Vec::new() })
            .collect();
        for g in &gens {
            weights.push(if graded { unit_direction_weight(n, &g.exponent, g.direction) } else { Vec::new() });
        }
        let total = n + gens.len();
        let mut table = vec![vec![QVec::zero(); total]; total];
        if let Some(g) = &lplus {
            for a in 0..gens.len() {
                for b in 0..gens.len() {
                    table[n + a][n + b] = g.bracket(a, b).remap(|r| Some(r + n));
                }
            }
        }
        Ok(Self {
            variety: variety.clone(),
            lplus,
            module: module.clone(),
            gens,
            weights,
            table,
        })
    }

    /// Index of the generator `1 ⊗ g`.
    pub fn lplus_index(&self, g: &LPlusGenerator) -> Option<usize> {
        self.gens.iter().position(|x| x == g).map(|i| i + self.variety.dim())
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn lplus(&self) -> Option<&GradedLieAlgebra> {
        self.lplus.as_ref()
    }

    pub fn module(&self) -> &LPlusModule {
        &self.module
    }
}

impl CochainModel for SemidirectModel {
    type Value = TensorValue;

    fn label(&self) -> String {
        match &self.lplus {
            Some(g) => format!("V({}) x| A(x){}", self.variety.name(), g.label()),
            None => format!("V({})", self.variety.name()),
        }
    }

    fn module_label(&self) -> String {
        format!("A(x){}", self.module.label())
    }

    fn generator_count(&self) -> usize {
        self.variety.dim() + self.gens.len()
    }

    fn generator_weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    fn generator_name(&self, i: usize) -> String {
        let n = self.variety.dim();
        if i < n {
            format!("d/d{}", self.variety.variable_name(i))
        } else {
            format!("1(x){}", self.gens[i - n])
        }
    }

    fn bracket(&self, i: usize, j: usize) -> &QVec {
        &self.table[i][j]
    }

    fn act(&self, i: usize, v: &TensorValue) -> Vec<(TensorValue, Rational)> {
        let n = self.variety.dim();
        if i < n {
            let f = FunctionElem::from_key(&self.variety, v.0.clone(), Rational::one()).derive(i);
            f.terms().iter().map(|(k, c)| ((k.clone(), v.1), c.clone())).collect()
        } else {
            self.module
                .action(&self.gens[i - n], v.1)
                .into_entries()
                .into_iter()
                .map(|(b, c)| ((v.0.clone(), b), c))
                .collect()
        }
    }

    fn value_weight(&self, v: &TensorValue) -> Weight {
        tensor_value_weight(&self.module, v)
    }

    fn values_of_weight(&self, w: &Weight) -> Vec<TensorValue> {
        tensor_values_of_weight(&self.variety, &self.module, w)
    }
}

/// Zero weight vector of the right length for a graded variety.
pub fn zero_weight(n: usize) -> Weight {
    vec![Rational::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::build_weight_slice;
    use crate::lie::build_lplus;

    #[test]
    fn generators_have_unit_coordinates() {
        for v in [VarietyKind::affine(2).unwrap(), VarietyKind::torus(1).unwrap()] {
            let w = LPlusModule::trivial(v.dim());
            let m = JetModel::new(&v, &w, 3).unwrap();
            for i in 0..m.generator_count() {
                let c = m.jet_coordinates(m.smash_generator(i));
                assert_eq!(c.len(), 1);
                assert_eq!(c[0].0, i);
                assert_eq!(c[0].1, FunctionElem::one(&v));
            }
        }
    }

    #[test]
    fn high_jets_act_trivially() {
        let v = VarietyKind::affine(1).unwrap();
        for w in [LPlusModule::weight(q(2)), LPlusModule::truncated_adjoint(1, 2).unwrap()] {
            let d = w.annihilation_degree();
            let m = JetModel::new(&v, &w, d + 3).unwrap();
            for i in 0..m.generator_count() {
                for b in 0..w.dim() {
                    let acts = !m.act(i, &(FunctionKey::Monomial(vec![2]), b)).is_empty();
                    if m.generator_order(i) > d + 1 {
                        assert!(!acts);
                    }
                }
            }
        }
    }

    #[test]
    fn order_must_cover_differentiability() {
        let v = VarietyKind::affine(1).unwrap();
        assert!(JetModel::new(&v, &LPlusModule::weight(q(1)), 1).is_err());
        assert!(JetModel::new(&v, &LPlusModule::weight(q(1)), 2).is_ok());
    }

    #[test]
    fn forms_model_has_derham_cohomology() {
        let t = VarietyKind::torus(2).unwrap();
        let m = SemidirectModel::new(&t, None, &LPlusModule::trivial(2)).unwrap();
        let dims: Vec<usize> = (0..=2)
            .map(|k| build_weight_slice(&m, k, &zero_weight(2)).unwrap().betti().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 2, 1]);
        assert!(SemidirectModel::new(&t, None, &LPlusModule::standard(2)).is_err());
    }

    #[test]
    fn semidirect_slices_are_complexes() {
        let a = VarietyKind::affine(1).unwrap();
        let w = LPlusModule::truncated_adjoint(1, 2).unwrap();
        let m = SemidirectModel::new(&a, Some(build_lplus(1, 3).unwrap()), &w).unwrap();
        for k in 0..=3 {
            for wt in -1..=2 {
                build_weight_slice(&m, k, &vec![q(wt)]).unwrap();
            }
        }
    }
}
