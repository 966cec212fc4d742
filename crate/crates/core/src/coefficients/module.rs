use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{build_lplus, BasisElement, GradedLieAlgebra, LPlusGenerator};
use crate::util::multi_indices_of_degree;
use crate::{QMatrix, QVec, Rational};

/// A finite-dimensional `L₊`-module on which `L_d` acts by zero for
/// `d >= annihilation_degree`, graded by the eigenvalues of `X_i ∂/∂X_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LPlusModule {
    label: String,
    n: usize,
    weights: Vec<Vec<Rational>>,
    /// Nonzero generators only; column `b` is the image of basis vector `b`.
    actions: BTreeMap<LPlusGenerator, Vec<QVec>>,
    annihilation_degree: u32,
}

/// `E_ij = X_i ∂/∂X_j`
fn gl_generator(n: usize, i: usize, j: usize) -> LPlusGenerator {
    let mut e = vec![0; n];
    e[i] = 1;
    LPlusGenerator::new(e, j)
}

fn generator_weight(g: &LPlusGenerator) -> Vec<Rational> {
    g.exponent
        .iter()
        .enumerate()
        .map(|(i, &a)| Rational::from_integer((a as i64 - (i == g.direction) as i64).into()))
        .collect()
}

impl LPlusModule {
    /// Builds and validates a module from explicit generator actions.
    pub fn from_actions(
        label: impl Into<String>,
        n: usize,
        weights: Vec<Vec<Rational>>,
        actions: BTreeMap<LPlusGenerator, Vec<QVec>>,
    ) -> Result<Self> {
        let dim = weights.len();
        if n == 0 || weights.iter().any(|w| w.len() != n) {
            return Err(Error::InvalidArgument("weights must have n components".into()));
        }
        let mut clean = BTreeMap::new();
        let mut degree = 0;
        for (g, cols) in actions {
            if g.exponent.len() != n {
                return Err(Error::InvalidArgument(format!("generator {g} has wrong arity")));
            }
            if cols.len() != dim || cols.iter().any(|c| c.max_index().is_some_and(|m| m >= dim)) {
                return Err(Error::InvalidArgument(format!("action of {g} has wrong shape")));
            }
            if cols.iter().all(QVec::is_zero) {
                continue;
            }
            degree = degree.max(g.weight() as u32 + 1);
            clean.insert(g, cols);
        }
        let m = Self {
            label: label.into(),
            n,
            weights,
            actions: clean,
            annihilation_degree: degree,
        };
        m.check_weights()?;
        m.check_representation()?;
        Ok(m)
    }

    pub fn trivial(n: usize) -> Self {
        Self {
            label: "trivial".into(),
            n,
            weights: vec![vec![Rational::zero(); n]],
            actions: BTreeMap::new(),
            annihilation_degree: 0,
        }
    }

    /// The one-dimensional `gl_1`-module `F_λ` (`n = 1`): `X ∂_X` acts by `λ`.
    pub fn weight(lambda: Rational) -> Self {
        if lambda.is_zero() {
            let mut t = Self::trivial(1);
            t.label = "weight:0".into();
            return t;
        }
        let mut actions = BTreeMap::new();
        actions.insert(gl_generator(1, 0, 0), vec![QVec::from_entries([(0, lambda.clone())])]);
        Self {
            label: format!("weight:{lambda}"),
            n: 1,
            weights: vec![vec![lambda]],
            actions,
            annihilation_degree: 1,
        }
    }

    /// A `gl_n`-module given by the matrices `rho[i][j] = ρ(E_ij)`, extended by
    /// zero on `L_{>=1}`. The diagonal matrices must be diagonal.
    pub fn from_gl_matrices(label: impl Into<String>, n: usize, rho: &[Vec<QMatrix>]) -> Result<Self> {
        if rho.len() != n || rho.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("expected {n}x{n} matrices")));
        }
        let dim = rho[0][0].rows();
        for m in rho.iter().flatten() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidArgument("matrices must be square of equal size".into()));
            }
        }
        let mut weights = vec![vec![Rational::zero(); n]; dim];
        for (i, row) in rho.iter().enumerate() {
            let h = &row[i];
            for r in 0..dim {
                for (c, v) in h.row(r).iter() {
                    if *c != r {
                        return Err(Error::Unsupported(format!(
                            "E_{}{} is not diagonal; only semisimple weight gradings are supported",
                            i + 1,
                            i + 1
                        )));
                    }
                    weights[r][i] = v.clone();
                }
            }
        }
        let mut actions = BTreeMap::new();
        for (i, row) in rho.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                let t = m.transpose();
                actions.insert(gl_generator(n, i, j), t.row_vecs().to_vec());
            }
        }
        Self::from_actions(label, n, weights, actions)
    }

    /// The defining representation of `gl_n`.
    pub fn standard(n: usize) -> Self {
        let rho: Vec<Vec<QMatrix>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| QMatrix::from_triplets(n, n, [(i, j, Rational::one())]))
                    .collect()
            })
            .collect();
        Self::from_gl_matrices("standard", n, &rho).expect("defining representation")
    }

    /// `L₊ / L_{>=degree}` with the adjoint action; `L_{degree−1}` acts
    /// nontrivially, so the annihilation degree is `degree`.
    pub fn truncated_adjoint(n: usize, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("truncated adjoint needs degree >= 1".into()));
        }
        let g = build_lplus(n, degree - 1)?;
        let gens: Vec<LPlusGenerator> = g
            .basis()
            .iter()
            .map(|b| match b {
                BasisElement::LPlus(x) => x.clone(),
                _ => unreachable!(),
            })
            .collect();
        let weights = gens.iter().map(generator_weight).collect();
        let actions = (0..gens.len())
            .map(|a| (gens[a].clone(), (0..gens.len()).map(|b| g.bracket(a, b).clone()).collect()))
            .collect();
        Self::from_actions(format!("adjoint(<{degree})"), n, weights, actions)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Eigenvalues of `X_i ∂/∂X_i` on basis vector `b`.
    pub fn weight_of(&self, b: usize) -> &[Rational] {
        &self.weights[b]
    }

    /// Eigenvalue of the Euler element `sum_i X_i ∂/∂X_i` on basis vector `b`.
    pub fn total_weight(&self, b: usize) -> Rational {
        self.weights[b].iter().fold(Rational::zero(), |a, w| a + w)
    }

    pub fn annihilation_degree(&self) -> u32 {
        self.annihilation_degree
    }

    /// Generators acting by a nonzero operator.
    pub fn acting_generators(&self) -> impl Iterator<Item = &LPlusGenerator> {
        self.actions.keys()
    }

    pub fn action(&self, g: &LPlusGenerator, b: usize) -> QVec {
        match self.actions.get(g) {
            Some(cols) => cols[b].clone(),
            None => QVec::zero(),
        }
    }

    pub fn act_vec(&self, g: &LPlusGenerator, v: &QVec) -> QVec {
        let Some(cols) = self.actions.get(g) else { return QVec::zero() };
        let mut out = QVec::zero();
        for (b, c) in v.iter() {
            out = out.add_scaled(c, &cols[*b]);
        }
        out
    }

    /// Action of an element of a presentation of `L₊` given in its basis.
    pub fn act_element(&self, lplus: &GradedLieAlgebra, x: &QVec, v: &QVec) -> QVec {
        let mut out = QVec::zero();
        for (i, c) in x.iter() {
            if let BasisElement::LPlus(g) = &lplus.basis()[*i] {
                out = out.add_scaled(c, &self.act_vec(g, v));
            }
        }
        out
    }

    fn check_weights(&self) -> Result<()> {
        for (g, cols) in &self.actions {
            let wg = generator_weight(g);
            for (b, col) in cols.iter().enumerate() {
                for (t, _) in col.iter() {
                    let expect: Vec<Rational> =
                        self.weights[b].iter().zip(&wg).map(|(x, y)| x + y).collect();
                    if self.weights[*t] != expect {
                        return Err(Error::NotARepresentation(format!(
                            "{g} maps basis {b} to basis {t} of the wrong weight"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `x·(y·w) − y·(x·w) = [x,y]·w` for all generators that act and all basis vectors.
    pub fn check_representation(&self) -> Result<()> {
        let deg = self.annihilation_degree.max(1);
        let g = build_lplus(self.n, deg - 1)?;
        let mut gens = Vec::new();
        for d in 0..deg {
            for e in multi_indices_of_degree(self.n, d + 1) {
                for dir in 0..self.n {
                    gens.push(LPlusGenerator::new(e.clone(), dir));
                }
            }
        }
        let idx = |x: &LPlusGenerator| g.index_of(&BasisElement::LPlus(x.clone())).expect("generator");
        for x in &gens {
            for y in &gens {
                let br = g.bracket(idx(x), idx(y));
                for b in 0..self.dim() {
                    let w = QVec::unit(b);
                    let lhs = self.act_vec(x, &self.act_vec(y, &w)).sub(&self.act_vec(y, &self.act_vec(x, &w)));
                    let rhs = self.act_element(&g, br, &w);
                    if lhs != rhs {
                        return Err(Error::NotARepresentation(format!(
                            "bracket compatibility fails for {x}, {y} on basis {b}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LPlusModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, dim={})", self.label, self.n, self.dim())
    }
}
