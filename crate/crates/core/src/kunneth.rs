//! The star product of cochains, its Leibniz identity, and the assembly and
//! comparison of both sides of the decomposition
//! `H^*_GF(V, A ⊗ W) ≅ H^*_dR(X) ⊗ H^*(L₊, W)`.

use num_traits::One;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{FunctionElem, FunctionKey, Variety};
use crate::cochain::{
    cohomology_dim, eval_on_coordinates, CochainModel, stabilized_gf_cohomology, zero_weight, CochainVec, Engine, LPlusModel,
    SemidirectModel, StabilizedCohomology, TensorValue,
};
use crate::coefficients::{LPlusModule, TensorModuleElem};
use crate::derham::derham_betti;
use crate::error::{Error, Result};
use crate::lie::{build_lplus, GradedLieAlgebra};
use crate::sampling::{random_cochain, random_key};
use crate::util::{q, sign};
use crate::Rational;

/// The three complexes joined by the star product: `A`-linear forms on `V`,
/// cochains of `g = L₊ / L_{>d}` with values in `W`, and `A`-linear cochains
/// of `V ⋉ (A ⊗ g)` with values in `A ⊗ W`.
pub struct StarSetup {
    pub forms: SemidirectModel,
    pub lie: LPlusModel,
    pub total: SemidirectModel,
}

impl StarSetup {
    pub fn new(variety: &Variety, g: GradedLieAlgebra, module: &LPlusModule) -> Result<Self> {
        let n = variety.dim();
        Ok(Self {
            forms: SemidirectModel::new(variety, None, &LPlusModule::trivial(n))?,
            lie: LPlusModel::new(g.clone(), module.clone())?,
            total: SemidirectModel::new(variety, Some(g), module)?,
        })
    }

    /// `(α ∗ β)(v_1..v_k, f_1⊗x_1..f_m⊗x_m) = f_1⋯f_m α(v_1..v_k) ⊗ β(x_1..x_m)`,
    /// zero on tuples with a different number of arguments from `V`.
    pub fn star(&self, alpha: &CochainVec<TensorValue>, beta: &CochainVec<usize>) -> CochainVec<TensorValue> {
        let n = self.forms.variety().dim();
        let mut out = CochainVec::zero(alpha.degree + beta.degree);
        for ((a_args, (f, _)), a) in &alpha.terms {
            for ((b_args, w), b) in &beta.terms {
                let mut args = a_args.clone();
                args.extend(b_args.iter().map(|x| x + n));
                out.add_term(args, (f.clone(), *w), a * b);
            }
        }
        out
    }

    /// `d(α ∗ β) − dα ∗ β − (−1)^k α ∗ dβ`
    pub fn leibniz_defect(&self, alpha: &CochainVec<TensorValue>, beta: &CochainVec<usize>) -> CochainVec<TensorValue> {
        let lhs = Engine::new(&self.total).apply(&self.star(alpha, beta));
        let d_alpha = Engine::new(&self.forms).apply(alpha);
        let d_beta = Engine::new(&self.lie).apply(beta);
        lhs.sub(&self.star(&d_alpha, beta))
            .add_scaled(&-sign(alpha.degree), &self.star(alpha, &d_beta))
    }
}

/// Argument tuple for an `A`-linear cochain: each argument as `sum f_r u_r`.
pub type LinearArgs = Vec<Vec<(FunctionElem, usize)>>;

/// Checks `d(α ∗ β) = dα ∗ β + (−1)^k α ∗ dβ` by evaluating both sides on
/// every sample tuple (of length `deg α + deg β + 1`).
pub fn verify_star_leibniz(
    setup: &StarSetup,
    alpha: &CochainVec<TensorValue>,
    beta: &CochainVec<usize>,
    samples: &[LinearArgs],
) -> bool {
    let defect = setup.leibniz_defect(alpha, beta);
    let v = setup.total.variety();
    samples
        .iter()
        .all(|s| eval_on_coordinates(v, &defect, s.clone()).is_zero())
}

/// Evaluates an `A`-linear cochain of the total complex.
pub fn evaluate(setup: &StarSetup, psi: &CochainVec<TensorValue>, args: &LinearArgs) -> TensorModuleElem {
    eval_on_coordinates(setup.total.variety(), psi, args.clone())
}

/// Cohomology dimensions by degree, with a stabilization flag per entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub label: String,
    pub dims: Vec<usize>,
    pub stabilized: Vec<bool>,
}

impl BettiTable {
    pub fn new(label: impl Into<String>, dims: Vec<usize>, stabilized: Vec<bool>) -> Self {
        assert_eq!(dims.len(), stabilized.len());
        Self {
            label: label.into(),
            dims,
            stabilized,
        }
    }

    pub fn get(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn all_stabilized(&self) -> bool {
        self.stabilized.iter().all(|&s| s)
    }
}

/// Graded Künneth convolution `dims[k] = sum_{i+j=k} a_i b_j` for `k <= k_max`.
/// Entries past the end of a table are zero. An entry is flagged stabilized
/// when every factor entry it uses is.
pub fn convolve(a: &BettiTable, b: &BettiTable, k_max: usize) -> BettiTable {
    let flag = |t: &BettiTable, i: usize| t.stabilized.get(i).copied().unwrap_or(true);
    let mut dims = vec![0; k_max + 1];
    let mut stabilized = vec![true; k_max + 1];
    for k in 0..=k_max {
        for i in 0..=k {
            dims[k] += a.get(i) * b.get(k - i);
            stabilized[k] &= flag(a, i) && flag(b, k - i);
        }
    }
    BettiTable::new(format!("{} (x) {}", a.label, b.label), dims, stabilized)
}

/// The truncation degree `lplus_table` uses: at least `min_truncation` and
/// at least the largest total weight of `W`.
pub fn lplus_truncation(module: &LPlusModule, min_truncation: u32) -> u32 {
    let top = (0..module.dim())
        .map(|b| module.total_weight(b).ceil().to_integer())
        .max()
        .unwrap_or_default();
    min_truncation.max(u32::try_from(top).unwrap_or(0))
}

/// `dim H^k(L₊, W)` at weight zero for `k <= k_max`, at a truncation
/// covering the weights of `W`, flagged stabilized when the truncation
/// raised by two gives the same value.
pub fn lplus_table(module: &LPlusModule, k_max: usize, min_truncation: u32) -> Result<BettiTable> {
    let t = lplus_truncation(module, min_truncation);
    let at = |d: u32| -> Result<Vec<usize>> {
        let model = LPlusModel::new(build_lplus(module.n(), d)?, module.clone())?;
        let w = vec![q(0)];
        (0..=k_max).into_par_iter().map(|k| cohomology_dim(&model, k, &w)).collect()
    };
    let dims = at(t)?;
    let again = at(t + 2)?;
    let stabilized = dims.iter().zip(&again).map(|(a, b)| a == b).collect();
    Ok(BettiTable::new(format!("H(L+,{})", module.label()), dims, stabilized))
}

pub fn derham_as_table(variety: &Variety, truncation: u32) -> Result<BettiTable> {
    let rows: Vec<_> = (0..=variety.dim())
        .into_par_iter()
        .map(|k| derham_betti(variety, k, truncation))
        .collect::<Result<_>>()?;
    Ok(BettiTable::new(
        format!("H_dR({})", variety.name()),
        rows.iter().map(|r| r.dim).collect(),
        rows.iter().map(|r| r.stabilized).collect(),
    ))
}

/// The theorem side `H_dR(X) ⊛ H(L₊, W)` in degrees `0..=k_max`.
pub fn assemble_rhs(variety: &Variety, module: &LPlusModule, k_max: usize, truncation: u32) -> Result<BettiTable> {
    if module.n() != variety.dim() {
        return Err(Error::InvalidArgument("module and variety dimensions differ".into()));
    }
    let dr = derham_as_table(variety, truncation)?;
    let lp = lplus_table(module, k_max, 3)?;
    Ok(convolve(&dr, &lp, k_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EqualStabilized,
    EqualNotStabilized,
    Different,
    RhsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub k: usize,
    pub rhs: usize,
    pub rhs_stabilized: bool,
    pub direct: Option<StabilizedCohomology>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub variety: String,
    pub module: String,
    pub k_max: usize,
    pub p_max: u32,
    pub rhs: BettiTable,
    pub rows: Vec<ComparisonRow>,
}

impl MainTheoremReport {
    /// No row disagrees.
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.verdict != Verdict::Different)
    }

    /// Every row is an equality confirmed by stabilized computations.
    pub fn confirmed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::EqualStabilized)
    }
}

/// Computes the direct (Gelfand-Fuks) side at multidegree zero for graded
/// varieties and compares it with `assemble_rhs` degree by degree.
/// Punctured spheres get the theorem side only.
pub fn compare_main_theorem(
    variety: &Variety,
    module: &LPlusModule,
    k_max: usize,
    p_max: u32,
    truncation: u32,
) -> Result<MainTheoremReport> {
    let rhs = assemble_rhs(variety, module, k_max, truncation)?;
    let direct: Vec<Option<StabilizedCohomology>> = if variety.is_graded() {
        (0..=k_max)
            .into_par_iter()
            .map(|k| stabilized_gf_cohomology(variety, module, k, &zero_weight(variety.dim()), p_max).map(Some))
            .collect::<Result<_>>()?
    } else {
        vec![None; k_max + 1]
    };
    let rows = direct
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            let r = rhs.get(k);
            let rs = rhs.stabilized[k];
            let verdict = match &d {
                None => Verdict::RhsOnly,
                Some(s) if s.value() != r => Verdict::Different,
                Some(s) if s.stabilized && rs => Verdict::EqualStabilized,
                Some(_) => Verdict::EqualNotStabilized,
            };
            ComparisonRow {
                k,
                rhs: r,
                rhs_stabilized: rs,
                direct: d,
                verdict,
            }
        })
        .collect();
    Ok(MainTheoremReport {
        variety: variety.name(),
        module: module.label().to_string(),
        k_max,
        p_max,
        rhs,
        rows,
    })
}

/// A random pair `(α, β)` for the star identity: `α` a form cochain with
/// values in monomials of bounded degree, `β` a cochain on `g`.
pub fn random_star_pair<R: Rng>(
    rng: &mut R,
    setup: &StarSetup,
    k: usize,
    m: usize,
    max_degree: u32,
) -> (CochainVec<TensorValue>, CochainVec<usize>) {
    let v = setup.forms.variety().clone();
    let dim = setup.lie.module().dim();
    let alpha = random_cochain(rng, &setup.forms, k, u32::MAX, 2, |r| {
        (random_key(r, &v, max_degree), 0)
    });
    let beta = random_cochain(rng, &setup.lie, m, u32::MAX, 2, |r| r.gen_range(0..dim));
    (alpha, beta)
}

/// Random argument tuples `sum f_r u_r` of the total algebra.
pub fn random_linear_args<R: Rng>(rng: &mut R, setup: &StarSetup, len: usize, max_degree: u32) -> LinearArgs {
    let v = setup.total.variety();
    let g = setup.total.generator_count();
    (0..len)
        .map(|_| {
            (0..rng.gen_range(1..=3))
                .map(|_| {
                    let f = FunctionElem::from_key(v, random_key(rng, v, max_degree), Rational::one());
                    (f, rng.gen_range(0..g))
                })
                .collect()
        })
        .collect()
}

/// `1 ⊗ w_b` as a value of the total complex.
pub fn unit_value(variety: &Variety, b: usize) -> TensorValue {
    (FunctionKey::constant(variety), b)
}
