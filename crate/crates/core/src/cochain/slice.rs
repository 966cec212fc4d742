use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{quotient_dim, rank};
use crate::util::subsets;
use crate::{QMatrix, Rational};

use super::model::{CochainKey, CochainModel, Engine, Weight};

/// One weight component of one degree of a cochain complex, with the
/// incoming and outgoing differentials restricted to the slice.
#[derive(Clone, Debug)]
pub struct WeightSlice<V> {
    pub degree: usize,
    pub weight: Weight,
    pub basis: Vec<CochainKey<V>>,
    /// Rows indexed by `basis`, columns by the degree `k − 1` slice.
    pub d_in: QMatrix,
    /// Rows indexed by the degree `k + 1` slice, columns by `basis`.
    pub d_out: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub algebra: String,
    pub module: String,
    pub k: usize,
    pub weight: Vec<String>,
    pub order: Option<u32>,
    pub dim_cocycles: usize,
    pub rank_boundaries: usize,
    pub betti: usize,
}

fn weight_sum(model: &impl CochainModel, args: &[usize], base: &Weight) -> Weight {
    let mut w = base.clone();
    for &a in args {
        for (x, y) in w.iter_mut().zip(model.generator_weight(a)) {
            *x += y;
        }
    }
    w
}

/// All cochain keys of degree `k` and weight `w`, where a key `(args, v)` has
/// weight `wt(v) − sum wt(args)`.
pub fn enumerate_keys<M: CochainModel>(model: &M, k: usize, w: &Weight) -> Vec<CochainKey<M::Value>> {
    let mut out = Vec::new();
    for args in subsets(model.generator_count(), k) {
        let target = weight_sum(model, &args, w);
        for v in model.values_of_weight(&target) {
            out.push((args.clone(), v));
        }
    }
    out
}

/// Matrix of the differential from `sources` to `targets`; every image key
/// must lie in `targets`.
pub fn differential_matrix<M: CochainModel>(
    engine: &Engine<'_, M>,
    sources: &[CochainKey<M::Value>],
    targets: &[CochainKey<M::Value>],
) -> QMatrix {
    let index: HashMap<&CochainKey<M::Value>, usize> = targets.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let columns: Vec<BTreeMap<CochainKey<M::Value>, Rational>> = sources
        .par_iter()
        .map(|(args, v)| {
            let mut out = BTreeMap::new();
            engine.push_differential(args, v, &Rational::one(), &mut out);
            out
        })
        .collect();
    let mut triplets = Vec::new();
    for (c, col) in columns.into_iter().enumerate() {
        for (key, x) in col {
            let r = *index
                .get(&key)
                .unwrap_or_else(|| panic!("differential left the weight slice at {key:?}"));
            triplets.push((r, c, x));
        }
    }
    QMatrix::from_triplets(targets.len(), sources.len(), triplets)
}

/// Builds the degree-`k`, weight-`w` slice and checks `d_out · d_in = 0`.
pub fn build_weight_slice<M: CochainModel>(model: &M, k: usize, w: &Weight) -> Result<WeightSlice<M::Value>> {
    let engine = Engine::new(model);
    build_with_engine(&engine, k, w)
}

pub(crate) fn build_with_engine<M: CochainModel>(
    engine: &Engine<'_, M>,
    k: usize,
    w: &Weight,
) -> Result<WeightSlice<M::Value>> {
    let model = engine.model();
    let basis = enumerate_keys(model, k, w);
    let above = enumerate_keys(model, k + 1, w);
    let below = if k == 0 { Vec::new() } else { enumerate_keys(model, k - 1, w) };
    let d_in = differential_matrix(engine, &below, &basis);
    let d_out = differential_matrix(engine, &basis, &above);
    if !d_out.mul(&d_in).is_zero() {
        return Err(Error::NotAComplex {
            context: format!("{} with {}, degree {k}, weight {w:?}", model.label(), model.module_label()),
        });
    }
    Ok(WeightSlice {
        degree: k,
        weight: w.clone(),
        basis,
        d_in,
        d_out,
    })
}

impl<V> WeightSlice<V> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_cocycles(&self) -> usize {
        self.basis.len() - rank(&self.d_out)
    }

    pub fn rank_boundaries(&self) -> usize {
        rank(&self.d_in)
    }

    pub fn betti(&self) -> Result<usize> {
        quotient_dim(self.dim_cocycles(), &self.d_in)
    }

    pub fn report(&self, algebra: &str, module: &str, order: Option<u32>) -> Result<SliceReport> {
        let dim_cocycles = self.dim_cocycles();
        let rank_boundaries = self.rank_boundaries();
        let betti = dim_cocycles
            .checked_sub(rank_boundaries)
            .ok_or(Error::InconsistentComplex { cocycles: dim_cocycles, rank: rank_boundaries })?;
        Ok(SliceReport {
            algebra: algebra.to_string(),
            module: module.to_string(),
            k: self.degree,
            weight: self.weight.iter().map(|x| x.to_string()).collect(),
            order,
            dim_cocycles,
            rank_boundaries,
            betti,
        })
    }
}

/// `dim H^k` of the weight-`w` slice.
pub fn cohomology_dim<M: CochainModel>(model: &M, k: usize, w: &Weight) -> Result<usize> {
    build_weight_slice(model, k, w)?.betti()
}

/// Slice reports for degrees `0..=k_max` at weight `w`.
pub fn slice_reports<M: CochainModel>(model: &M, k_max: usize, w: &Weight) -> Result<Vec<SliceReport>> {
    let engine = Engine::new(model);
    (0..=k_max)
        .into_par_iter()
        .map(|k| build_with_engine(&engine, k, w)?.report(&model.label(), &model.module_label(), None))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::LPlusModule;
    use crate::cochain::{CochainVec, LPlusModel};
    use crate::lie::build_lplus;
    use crate::util::q;

    fn lplus(n: usize, d: u32, w: LPlusModule) -> LPlusModel {
        LPlusModel::new(build_lplus(n, d).unwrap(), w).unwrap()
    }

    fn modules() -> Vec<LPlusModule> {
        vec![
            LPlusModule::trivial(1),
            LPlusModule::weight(q(1)),
            LPlusModule::weight(q(-1)),
            LPlusModule::weight(q(2)),
            LPlusModule::truncated_adjoint(1, 3).unwrap(),
        ]
    }

    #[test]
    fn trivial_slices() {
        let m = lplus(1, 4, LPlusModule::trivial(1));
        assert!(build_weight_slice(&m, 2, &vec![q(0)]).unwrap().basis.is_empty());
        let s1 = build_weight_slice(&m, 1, &vec![q(0)]).unwrap();
        assert_eq!(s1.basis, vec![(vec![0], 0)]);
        let dims: Vec<usize> = (0..4).map(|k| cohomology_dim(&m, k, &vec![q(0)]).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 0, 0]);
        // weights of keys are at most 0 here, so positive weights are empty
        assert!(enumerate_keys(&m, 2, &vec![q(1)]).is_empty());
    }

    #[test]
    fn degree_zero_differential() {
        for lam in [1, -2, 5] {
            let m = lplus(1, 3, LPlusModule::weight(q(lam)));
            let mut phi = CochainVec::zero(0);
            phi.add_term(vec![], 0, q(1));
            let d = Engine::new(&m).apply(&phi);
            assert_eq!(d.value_on(&[0]).get(&0), Some(&q(-lam)));
            assert_eq!(d.terms.len(), 1);
        }
    }

    #[test]
    fn every_slice_is_a_complex() {
        for w in modules() {
            let m = lplus(1, 5, w);
            for k in 0..=4 {
                for wt in -4..=4 {
                    let s = build_weight_slice(&m, k, &vec![q(wt)]).unwrap();
                    assert!(s.d_out.mul(&s.d_in).is_zero());
                }
            }
        }
        let m = lplus(2, 2, LPlusModule::standard(2));
        for k in 0..=3 {
            for wt in -2..=2 {
                build_weight_slice(&m, k, &vec![q(wt)]).unwrap();
            }
        }
    }

    #[test]
    fn cohomology_concentrates_in_weight_zero() {
        for w in modules() {
            let m = lplus(1, 6, w);
            for k in 0..=3 {
                for wt in [-3, -2, -1, 1, 2, 3] {
                    assert_eq!(cohomology_dim(&m, k, &vec![q(wt)]).unwrap(), 0, "{} k={k} w={wt}", m.module_label());
                }
            }
        }
        let m = lplus(2, 3, LPlusModule::standard(2));
        for k in 0..=2 {
            for wt in [-2, -1, 1, 2] {
                assert_eq!(cohomology_dim(&m, k, &vec![q(wt)]).unwrap(), 0);
            }
        }
    }

    #[test]
    fn weight_zero_dims_survive_larger_truncation() {
        for w in modules() {
            let at = |d: u32| -> Vec<usize> {
                let m = lplus(1, d, w.clone());
                (0..=3).map(|k| cohomology_dim(&m, k, &vec![q(0)]).unwrap()).collect()
            };
            assert_eq!(at(4), at(6), "{}", w.label());
        }
    }

    #[test]
    fn known_lplus_cohomology() {
        let at = |w: LPlusModule| -> Vec<usize> {
            let m = lplus(1, 5, w);
            (0..=3).map(|k| cohomology_dim(&m, k, &vec![q(0)]).unwrap()).collect()
        };
        assert_eq!(at(LPlusModule::weight(q(1))), vec![0, 1, 1, 0]);
        assert_eq!(at(LPlusModule::weight(q(-1))), vec![0, 0, 0, 0]);
        let m = lplus(2, 2, LPlusModule::trivial(2));
        assert_eq!(cohomology_dim(&m, 1, &vec![q(0)]).unwrap(), 1);
    }

    #[test]
    fn reports_serialize() {
        let m = lplus(1, 3, LPlusModule::trivial(1));
        let r = slice_reports(&m, 2, &vec![q(0)]).unwrap();
        assert_eq!(r.iter().map(|s| s.betti).collect::<Vec<_>>(), vec![1, 1, 0]);
        assert_eq!(r[1].dim_cocycles, 1);
        assert_eq!(r[1].weight, vec!["0".to_string()]);
    }
}
