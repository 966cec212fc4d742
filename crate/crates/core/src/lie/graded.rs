use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{FunctionElem, FunctionKey, Variety, VarietyKind};
use crate::error::{Error, Result};
use crate::util::{multi_indices_of_degree, q};
use crate::{QVec, Rational};

use super::vector_field::{bracket_fields, VectorFieldElem};

/// `X^exponent ∂/∂X_direction` in `L₊`, of weight `|exponent| − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LPlusGenerator {
    pub exponent: Vec<u32>,
    pub direction: usize,
}

impl LPlusGenerator {
    pub fn new(exponent: Vec<u32>, direction: usize) -> Self {
        assert!(exponent.iter().sum::<u32>() >= 1, "L₊ generators have |exponent| >= 1");
        assert!(direction < exponent.len());
        Self { exponent, direction }
    }

    pub fn weight(&self) -> i64 {
        self.exponent.iter().sum::<u32>() as i64 - 1
    }

    /// The generator as a vector field on affine space.
    pub fn to_field(&self, affine: &Variety) -> VectorFieldElem {
        let e: Vec<i32> = self.exponent.iter().map(|&a| a as i32).collect();
        VectorFieldElem::from_component(
            FunctionElem::monomial(affine, &e).expect("affine exponent"),
            self.direction,
        )
    }
}

impl fmt::Display for LPlusGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{:?} d/dX{}", self.exponent, self.direction + 1)
    }
}

/// A tagged basis vector of a graded Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    LPlus(LPlusGenerator),
    /// `x^exponent ∂/∂x_direction` on the variety.
    VectorField { exponent: Vec<i32>, direction: usize },
    /// `x^monomial ⊗ g` with `g` an `L₊` generator.
    Tensor { monomial: Vec<i32>, generator: LPlusGenerator },
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LPlus(g) => write!(f, "{g}"),
            Self::VectorField { exponent, direction } => {
                write!(f, "x^{exponent:?} d/dx{}", direction + 1)
            }
            Self::Tensor { monomial, generator } => write!(f, "x^{monomial:?} (x) {generator}"),
        }
    }
}

/// A finite graded Lie algebra presentation with an eagerly computed
/// bracket table.
///
/// Closed presentations are genuine Lie algebras (for example the quotient
/// `L₊ / L_{>d}`); for the others, brackets that leave the window are cut
/// off and recorded as inexact.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    label: String,
    n: usize,
    basis: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    weights: Vec<i64>,
    table: Vec<Vec<QVec>>,
    exact: Vec<Vec<bool>>,
    truncation_degree: Option<i64>,
    closed: bool,
}

type Expansion = Vec<(BasisElement, Rational)>;

impl GradedLieAlgebra {
    fn from_rule<F: Fn(&BasisElement, &BasisElement) -> Result<(Expansion, bool)>>(
        label: String,
        n: usize,
        basis: Vec<BasisElement>,
        weight: impl Fn(&BasisElement) -> i64,
        truncation_degree: Option<i64>,
        closed: bool,
        rule: F,
    ) -> Result<Self> {
        let index: HashMap<BasisElement, usize> =
            basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let weights: Vec<i64> = basis.iter().map(&weight).collect();
        let d = basis.len();
        let mut table = vec![vec![QVec::zero(); d]; d];
        let mut exact = vec![vec![true; d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let mut kept = Vec::new();
                let (terms, mut ok) = rule(&basis[i], &basis[j])?;
                for (b, c) in terms {
                    if c.is_zero() {
                        continue;
                    }
                    match index.get(&b) {
                        Some(&k) => kept.push((k, c)),
                        None => ok = false,
                    }
                }
                let v = QVec::from_entries(kept);
                table[j][i] = v.neg();
                table[i][j] = v;
                exact[i][j] = ok;
                exact[j][i] = ok;
            }
        }
        Ok(Self {
            label,
            n,
            basis,
            index,
            weights,
            table,
            exact,
            truncation_degree,
            closed,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Dimension of the underlying space of functions and vector fields.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn truncation_degree(&self) -> Option<i64> {
        self.truncation_degree
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn bracket(&self, i: usize, j: usize) -> &QVec {
        &self.table[i][j]
    }

    /// Whether `[i, j]` was computed without cutting off terms.
    pub fn is_exact(&self, i: usize, j: usize) -> bool {
        self.exact[i][j]
    }

    pub fn bracket_vec(&self, a: &QVec, b: &QVec) -> QVec {
        let mut out = QVec::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out = out.add_scaled(&(x * y), &self.table[*i][*j]);
            }
        }
        out
    }

    fn checkable(&self, i: usize, j: usize, k: usize) -> bool {
        if self.closed {
            return true;
        }
        let ok = |a: usize, b: usize, c: usize| {
            self.exact[b][c] && self.table[b][c].iter().all(|(r, _)| self.exact[a][*r])
        };
        ok(i, j, k) && ok(j, k, i) && ok(k, i, j)
    }

    /// `[i,[j,k]] + [j,[k,i]] + [k,[i,j]]`, or `None` when a bracket involved
    /// left the window.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Option<QVec> {
        if !self.checkable(i, j, k) {
            return None;
        }
        let u = |a: usize| QVec::unit(a);
        let t1 = self.bracket_vec(&u(i), &self.table[j][k]);
        let t2 = self.bracket_vec(&u(j), &self.table[k][i]);
        let t3 = self.bracket_vec(&u(k), &self.table[i][j]);
        Some(t1.add(&t2).add(&t3))
    }

    /// All basis triples `i < j < k` violating Jacobi.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    if let Some(v) = self.jacobi_defect(i, j, k) {
                        if !v.is_zero() {
                            out.push((i, j, k));
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks `samples` random triples; returns the violations and the number
    /// of triples actually checked.
    pub fn jacobi_random<R: Rng>(&self, rng: &mut R, samples: usize) -> (Vec<(usize, usize, usize)>, usize) {
        let d = self.dim();
        let mut bad = Vec::new();
        let mut checked = 0;
        if d == 0 {
            return (bad, 0);
        }
        for _ in 0..samples {
            let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
            if let Some(v) = self.jacobi_defect(i, j, k) {
                checked += 1;
                if !v.is_zero() {
                    bad.push((i, j, k));
                }
            }
        }
        (bad, checked)
    }

    /// Indices whose bracket components all have weight `wt(i) + wt(j)`.
    pub fn weight_violations(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let w = self.weights[i] + self.weights[j];
                if self.table[i][j].iter().any(|(r, _)| self.weights[*r] != w) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn expand_field(v: &VectorFieldElem, wrap: impl Fn(Vec<i32>, usize) -> BasisElement) -> Expansion {
    let mut out = Vec::new();
    for (dir, c) in v.components().iter().enumerate() {
        for (k, coef) in c.terms() {
            if let FunctionKey::Monomial(e) = k {
                out.push((wrap(e.clone(), dir), coef.clone()));
            }
        }
    }
    out
}

/// `L₊ / L_{>max_degree}` in `n` variables; `max_degree = 0` gives `gl_n`.
pub fn build_lplus(n: usize, max_degree: u32) -> Result<GradedLieAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("L₊ needs n >= 1".into()));
    }
    let affine = VarietyKind::affine(n)?;
    let mut basis = Vec::new();
    for d in 0..=max_degree {
        for e in multi_indices_of_degree(n, d + 1) {
            for dir in 0..n {
                basis.push(BasisElement::LPlus(LPlusGenerator::new(e.clone(), dir)));
            }
        }
    }
    let weight = |b: &BasisElement| match b {
        BasisElement::LPlus(g) => g.weight(),
        _ => unreachable!(),
    };
    let rule = |a: &BasisElement, b: &BasisElement| -> Result<(Expansion, bool)> {
        let (BasisElement::LPlus(ga), BasisElement::LPlus(gb)) = (a, b) else { unreachable!() };
        let br = bracket_fields(&ga.to_field(&affine), &gb.to_field(&affine))?;
        let terms = expand_field(&br, |e, dir| {
            BasisElement::LPlus(LPlusGenerator::new(e.iter().map(|&x| x as u32).collect(), dir))
        });
        Ok((terms, true))
    };
    GradedLieAlgebra::from_rule(
        format!("lplus(n={n},deg<={max_degree})"),
        n,
        basis,
        weight,
        Some(max_degree as i64),
        true,
        rule,
    )
}

fn graded_dim(variety: &VarietyKind) -> Result<usize> {
    if !variety.is_graded() {
        return Err(Error::Unsupported(format!(
            "weight windows need a graded variety, got {}",
            variety.name()
        )));
    }
    Ok(variety.dim())
}

/// Exponent vectors allowed in the window `[lo, hi]`: every component lies in
/// `[lo, hi + 1]` (and is non-negative on affine space).
fn window_monomials(variety: &VarietyKind, lo: i64, hi: i64) -> Vec<Vec<i32>> {
    let n = variety.dim();
    let min = if matches!(variety, VarietyKind::Affine(_)) { lo.max(0) } else { lo };
    let max = hi + 1;
    let mut out: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (min..=max).map(move |e| {
                    let mut p = p.clone();
                    p.push(e as i32);
                    p
                })
            })
            .collect();
    }
    out
}

fn total(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

/// Monomial vector fields `x^a ∂_i` of weight `|a| − 1` in `[lo, hi]`.
pub fn build_vector_fields(variety: &Variety, lo: i64, hi: i64) -> Result<GradedLieAlgebra> {
    let n = graded_dim(variety)?;
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let mut basis = Vec::new();
    for e in window_monomials(variety, lo, hi) {
        let w = total(&e) - 1;
        if w >= lo && w <= hi {
            for dir in 0..n {
                basis.push(BasisElement::VectorField { exponent: e.clone(), direction: dir });
            }
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let v = variety.clone();
    let rule = move |a: &BasisElement, b: &BasisElement| -> Result<(Expansion, bool)> {
        let br = bracket_fields(&field_of(&v, a), &field_of(&v, b))?;
        let terms = expand_field(&br, |exponent, direction| BasisElement::VectorField { exponent, direction });
        Ok((terms, true))
    };
    GradedLieAlgebra::from_rule(
        format!("vector_fields({},[{lo},{hi}])", variety.name()),
        n,
        basis,
        |b| match b {
            BasisElement::VectorField { exponent, .. } => total(exponent) - 1,
            _ => unreachable!(),
        },
        None,
        false,
        rule,
    )
}

fn field_of(v: &Variety, b: &BasisElement) -> VectorFieldElem {
    match b {
        BasisElement::VectorField { exponent, direction } => VectorFieldElem::from_component(
            FunctionElem::monomial(v, exponent).expect("monomial in window"),
            *direction,
        ),
        _ => unreachable!(),
    }
}

/// `V ⋉ (A ⊗ L₊)` restricted to the weight window `[lo, hi]`: `V` acts on the
/// `A` factor by derivations and `A ⊗ L₊` is bracketed pointwise.
pub fn build_semidirect(
    vector_fields: &GradedLieAlgebra,
    lplus: &GradedLieAlgebra,
    variety: &Variety,
    lo: i64,
    hi: i64,
) -> Result<GradedLieAlgebra> {
    let n = graded_dim(variety)?;
    if vector_fields.n() != n || lplus.n() != n {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: fields n={}, lplus n={}, variety n={n}",
            vector_fields.n(),
            lplus.n()
        )));
    }
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let mut basis: Vec<BasisElement> = vector_fields
        .basis()
        .iter()
        .zip(vector_fields.weights())
        .filter(|(_, &w)| w >= lo && w <= hi)
        .map(|(b, _)| b.clone())
        .collect();
    for b in &basis {
        if !matches!(b, BasisElement::VectorField { .. }) {
            return Err(Error::InvalidArgument("first factor must consist of vector fields".into()));
        }
    }
    for m in window_monomials(variety, lo, hi) {
        for (g, &wg) in lplus.basis().iter().zip(lplus.weights()) {
            let BasisElement::LPlus(g) = g else {
                return Err(Error::InvalidArgument("second factor must be L₊".into()));
            };
            let w = total(&m) + wg;
            if w >= lo && w <= hi {
                basis.push(BasisElement::Tensor { monomial: m.clone(), generator: g.clone() });
            }
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let v = variety.clone();
    let lp = lplus.clone();
    let rule = move |a: &BasisElement, b: &BasisElement| -> Result<(Expansion, bool)> {
        use BasisElement::*;
        Ok(match (a, b) {
            (VectorField { .. }, VectorField { .. }) => {
                let br = bracket_fields(&field_of(&v, a), &field_of(&v, b))?;
                (expand_field(&br, |exponent, direction| VectorField { exponent, direction }), true)
            }
            (VectorField { exponent, direction }, Tensor { monomial, generator }) => {
                (derivation_on_tensor(exponent, *direction, monomial, generator), true)
            }
            (Tensor { monomial, generator }, VectorField { exponent, direction }) => {
                let terms = derivation_on_tensor(exponent, *direction, monomial, generator)
                    .into_iter()
                    .map(|(b, c)| (b, -c))
                    .collect();
                (terms, true)
            }
            (Tensor { monomial: ma, generator: ga }, Tensor { monomial: mb, generator: gb }) => {
                let ia = lp.index_of(&LPlus(ga.clone())).expect("generator of L₊");
                let ib = lp.index_of(&LPlus(gb.clone())).expect("generator of L₊");
                let m: Vec<i32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let terms: Expansion = lp
                    .bracket(ia, ib)
                    .iter()
                    .map(|(r, c)| {
                        let BasisElement::LPlus(g) = &lp.basis()[*r] else { unreachable!() };
                        (Tensor { monomial: m.clone(), generator: g.clone() }, c.clone())
                    })
                    .collect();
                (terms, lp.is_exact(ia, ib))
            }
            _ => unreachable!(),
        })
    };
    GradedLieAlgebra::from_rule(
        format!("semidirect({},{},[{lo},{hi}])", vector_fields.label(), lplus.label()),
        n,
        basis,
        |b| match b {
            BasisElement::VectorField { exponent, .. } => total(exponent) - 1,
            BasisElement::Tensor { monomial, generator } => total(monomial) + generator.weight(),
            _ => unreachable!(),
        },
        None,
        false,
        rule,
    )
}

/// `[x^a ∂_i, x^m ⊗ g] = m_i x^{a+m−e_i} ⊗ g`
fn derivation_on_tensor(a: &[i32], i: usize, m: &[i32], g: &LPlusGenerator) -> Expansion {
    if m[i] == 0 {
        return Vec::new();
    }
    let mut e: Vec<i32> = a.iter().zip(m).map(|(x, y)| x + y).collect();
    e[i] -= 1;
    vec![(
        BasisElement::Tensor { monomial: e, generator: g.clone() },
        q(m[i] as i64),
    )]
}
