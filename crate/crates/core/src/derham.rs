//! The algebraic de Rham complex of the coordinate ring, its cohomology on
//! finite windows, and the map `Φ` from forms to `A`-linear cochains on
//! vector fields.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{check_same, FunctionElem, FunctionKey, Variety, VarietyKind};
use crate::cochain::{Cochain, FieldContext};
use crate::coefficients::{LPlusModule, TensorModuleElem};
use crate::error::{Error, Result};
use crate::lie::VectorFieldElem;
use crate::linalg::rank;
use crate::util::{sign, sort_with_parity, subsets};
use crate::{QMatrix, Rational};

/// `sum f_I dx_I` over strictly increasing index tuples `I` of length `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormElem {
    variety: Variety,
    degree: usize,
    terms: BTreeMap<Vec<usize>, FunctionElem>,
}

impl FormElem {
    pub fn zero(v: &Variety, degree: usize) -> Self {
        Self {
            variety: v.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `f dx_{i_1} ∧ … ∧ dx_{i_k}` for indices in any order.
    pub fn term(f: &FunctionElem, indices: &[usize]) -> Self {
        let v = f.variety();
        assert!(indices.iter().all(|&i| i < v.dim()), "form index out of range");
        let mut out = Self::zero(v, indices.len());
        let mut sorted = indices.to_vec();
        if let Some(parity) = sort_with_parity(&mut sorted) {
            out.add_term(sorted, f.scale(&sign(parity)));
        }
        out
    }

    /// The function `f` as a 0-form.
    pub fn function(f: &FunctionElem) -> Self {
        Self::term(f, &[])
    }

    fn add_term(&mut self, indices: Vec<usize>, f: FunctionElem) {
        if f.is_zero() {
            return;
        }
        let s = match self.terms.remove(&indices) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !s.is_zero() {
            self.terms.insert(indices, s);
        }
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, FunctionElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        check_same(&self.variety, &other.variety).expect("forms on different varieties");
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        let mut out = self.clone();
        for (i, f) in &other.terms {
            out.add_term(i.clone(), f.scale(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::zero(&self.variety, self.degree).add_scaled(c, self)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Coordinates `(I, basis function) ↦ coefficient`.
    pub fn coordinates(&self) -> BTreeMap<(Vec<usize>, FunctionKey), Rational> {
        let mut out = BTreeMap::new();
        for (i, f) in &self.terms {
            for (k, c) in f.terms() {
                out.insert((i.clone(), k.clone()), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for FormElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, g)| {
                if idx.is_empty() {
                    format!("({g})")
                } else {
                    let dx: Vec<String> = idx.iter().map(|&i| format!("d{}", self.variety.variable_name(i))).collect();
                    format!("({g}) {}", dx.join("^"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `d(f dx_I) = sum_i ∂_i f dx_i ∧ dx_I`
pub fn d_derham(w: &FormElem) -> FormElem {
    let v = &w.variety;
    let mut out = FormElem::zero(v, w.degree + 1);
    for (idx, f) in &w.terms {
        for i in 0..v.dim() {
            let Err(pos) = idx.binary_search(&i) else { continue };
            let df = f.derive(i);
            if df.is_zero() {
                continue;
            }
            let mut j = idx.clone();
            j.insert(pos, i);
            out.add_term(j, df.scale(&sign(pos)));
        }
    }
    out
}

/// `Φ(f dx_I)(η_1, …, η_k) = f · det(η_j(x_{i_l}))`, with values in `A`
/// (the tensor module with trivial one-dimensional `W`).
pub fn phi_map(w: &FormElem, ctx: &Arc<FieldContext>) -> Cochain<FieldContext> {
    assert_eq!(ctx.module.dim(), 1, "Φ takes values in A");
    let w = w.clone();
    let variety = ctx.variety.clone();
    Cochain::new(ctx, w.degree, move |etas| {
        let mut acc = FunctionElem::zero(&variety);
        for (idx, f) in &w.terms {
            let m: Vec<Vec<FunctionElem>> = idx
                .iter()
                .map(|&i| etas.iter().map(|eta| eta.component(i).clone()).collect())
                .collect();
            acc = acc.add(&f.mul(&determinant(&variety, &m)));
        }
        TensorModuleElem::pure(&acc, 0)
    })
}

fn determinant(v: &Variety, m: &[Vec<FunctionElem>]) -> FunctionElem {
    let k = m.len();
    if k == 0 {
        return FunctionElem::one(v);
    }
    let mut acc = FunctionElem::zero(v);
    for (j, x) in m[0].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let minor: Vec<Vec<FunctionElem>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, y)| y.clone()).collect())
            .collect();
        acc = acc.add_scaled(&sign(j), &x.mul(&determinant(v, &minor)));
    }
    acc
}

/// Basis functions in the truncation window `K`: exponents in `[0, K]^n`
/// (affine) or `[−K, K]^n` (torus); `z^j` with `j <= K` and pole orders
/// `<= K` (punctured sphere).
pub fn window_keys(v: &VarietyKind, truncation: u32) -> Vec<FunctionKey> {
    let k = truncation as i32;
    match v {
        VarietyKind::Affine(n) => box_points(*n, 0, k).into_iter().map(FunctionKey::Monomial).collect(),
        VarietyKind::Torus(n) => box_points(*n, -k, k).into_iter().map(FunctionKey::Monomial).collect(),
        VarietyKind::PuncturedSphere(p) => {
            let mut out: Vec<FunctionKey> = (0..=truncation).map(FunctionKey::Power).collect();
            for i in 0..p.len() {
                out.extend((1..=truncation).map(|j| FunctionKey::Pole(i, j)));
            }
            out
        }
    }
}

fn box_points(n: usize, lo: i32, hi: i32) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeRhamBetti {
    pub k: usize,
    pub truncation: u32,
    pub dim: usize,
    /// The value at truncation `K + 1`.
    pub next_dim: usize,
    pub stabilized: bool,
}

/// Dimension of `H^k_dR` computed on the window `K`, compared against `K + 1`.
///
/// Graded varieties split into finite multidegree blocks, each closed under
/// `d`, and the window selects the blocks with multidegree in the box.
/// On punctured spheres `d` raises pole orders, so boundaries are counted
/// as `dim(d(C^{k−1}_{K+1}) ∩ C^k_K)`.
pub fn derham_betti(variety: &Variety, k: usize, truncation: u32) -> Result<DeRhamBetti> {
    if truncation < 1 {
        return Err(Error::InvalidArgument(
            "truncation must be at least 1 to contain the generators of H^*_dR".into(),
        ));
    }
    let dim = betti_at(variety, k, truncation);
    let next_dim = betti_at(variety, k, truncation + 1);
    Ok(DeRhamBetti {
        k,
        truncation,
        dim,
        next_dim,
        stabilized: dim == next_dim,
    })
}

/// `derham_betti` for every degree `0..=dim`.
pub fn derham_table(variety: &Variety, truncation: u32) -> Result<Vec<DeRhamBetti>> {
    (0..=variety.dim()).into_par_iter().map(|k| derham_betti(variety, k, truncation)).collect()
}

fn betti_at(variety: &Variety, k: usize, truncation: u32) -> usize {
    if k > variety.dim() {
        return 0;
    }
    match &**variety {
        VarietyKind::PuncturedSphere(_) => windowed_betti(variety, k, truncation),
        VarietyKind::Affine(n) | VarietyKind::Torus(n) => {
            let lo = if matches!(**variety, VarietyKind::Affine(_)) { 0 } else { -(truncation as i32) };
            box_points(*n, lo, truncation as i32)
                .par_iter()
                .map(|mu| block_betti(variety, k, mu))
                .sum()
        }
    }
}

type FormKey = (Vec<usize>, FunctionKey);

/// Basis of `Ω^k` in the multidegree block `μ`: `x^{μ − e_I} dx_I`.
fn block_basis(v: &Variety, k: usize, mu: &[i32]) -> Vec<FormKey> {
    subsets(v.dim(), k)
        .into_iter()
        .filter_map(|idx| {
            let mut a = mu.to_vec();
            for &i in &idx {
                a[i] -= 1;
            }
            if matches!(**v, VarietyKind::Affine(_)) && a.iter().any(|&x| x < 0) {
                return None;
            }
            Some((idx, FunctionKey::Monomial(a)))
        })
        .collect()
}

fn basis_form(v: &Variety, key: &FormKey) -> FormElem {
    FormElem::term(&FunctionElem::from_key(v, key.1.clone(), Rational::one()), &key.0)
}

/// Matrix of `d` from `sources`, with rows indexed by `targets`; image
/// coordinates outside `targets` are appended to `extra`.
fn d_matrix(v: &Variety, sources: &[FormKey], targets: &[FormKey], extra: &mut Vec<FormKey>) -> QMatrix {
    let mut index: HashMap<FormKey, usize> = targets.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut triplets = Vec::new();
    for (c, s) in sources.iter().enumerate() {
        for (key, x) in d_derham(&basis_form(v, s)).coordinates() {
            let r = match index.get(&key) {
                Some(&r) => r,
                None => {
                    let r = targets.len() + extra.len();
                    extra.push(key.clone());
                    index.insert(key, r);
                    r
                }
            };
            triplets.push((r, c, x));
        }
    }
    QMatrix::from_triplets(targets.len() + extra.len(), sources.len(), triplets)
}

fn block_betti(v: &Variety, k: usize, mu: &[i32]) -> usize {
    let here = block_basis(v, k, mu);
    if here.is_empty() {
        return 0;
    }
    let above = block_basis(v, k + 1, mu);
    let mut extra = Vec::new();
    let d_out = d_matrix(v, &here, &above, &mut extra);
    assert!(extra.is_empty(), "d left the multidegree block {mu:?}");
    let rank_in = if k == 0 {
        0
    } else {
        let below = block_basis(v, k - 1, mu);
        let d_in = d_matrix(v, &below, &here, &mut extra);
        assert!(extra.is_empty(), "d left the multidegree block {mu:?}");
        rank(&d_in)
    };
    here.len() - rank(&d_out) - rank_in
}

fn window_basis(v: &Variety, k: usize, truncation: u32) -> Vec<FormKey> {
    let keys = window_keys(v, truncation);
    subsets(v.dim(), k)
        .into_iter()
        .flat_map(|idx| keys.iter().map(move |f| (idx.clone(), f.clone())))
        .collect()
}

fn windowed_betti(v: &Variety, k: usize, truncation: u32) -> usize {
    let here = window_basis(v, k, truncation);
    let mut extra = Vec::new();
    let cocycles = here.len() - rank(&d_matrix(v, &here, &[], &mut extra));
    if k == 0 {
        return cocycles;
    }
    let below = window_basis(v, k - 1, truncation + 1);
    let mut outside = Vec::new();
    let d_in = d_matrix(v, &below, &here, &mut outside);
    let outside_rows: Vec<usize> = (here.len()..here.len() + outside.len()).collect();
    let boundaries = rank(&d_in) - rank(&d_in.select_rows(&outside_rows));
    cocycles - boundaries
}

/// Rank of `Φ` on the window basis of `Ω^k`, read off from the values on
/// coordinate fields, and the size of that basis.
pub fn phi_rank(variety: &Variety, k: usize, truncation: u32) -> (usize, usize) {
    let ctx = Arc::new(FieldContext {
        variety: variety.clone(),
        module: LPlusModule::trivial(variety.dim()),
    });
    let forms = window_basis(variety, k, truncation);
    let tuples = subsets(variety.dim(), k);
    let partials: Vec<_> = (0..variety.dim()).map(|i| VectorFieldElem::partial(variety, i)).collect();
    let mut index: HashMap<(usize, FunctionKey), usize> = HashMap::new();
    let mut triplets = Vec::new();
    for (r, key) in forms.iter().enumerate() {
        let phi = phi_map(&basis_form(variety, key), &ctx);
        for (t, tuple) in tuples.iter().enumerate() {
            let args: Vec<_> = tuple.iter().map(|&i| partials[i].clone()).collect();
            for ((f, _), c) in phi.eval(&args).terms() {
                let n = index.len();
                let col = *index.entry((t, f.clone())).or_insert(n);
                triplets.push((r, col, c.clone()));
            }
        }
    }
    let m = QMatrix::from_triplets(forms.len(), index.len(), triplets);
    (rank(&m), forms.len())
}
