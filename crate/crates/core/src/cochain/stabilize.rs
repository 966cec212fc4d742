use serde::Serialize;

use crate::algebra::Variety;
use crate::coefficients::LPlusModule;
use crate::error::{Error, Result};
use crate::linalg::rank;

use super::model::{CochainModel, Weight};
use super::models::JetModel;
use super::slice::{build_weight_slice, SliceReport};

/// `dim H^k` of the finite-order complexes `p = 1..=p_max`, with cocycles of
/// order `p` and boundaries of any order up to `p_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizedCohomology {
    pub k: usize,
    pub weight: Vec<String>,
    pub p_max: u32,
    pub dims: Vec<usize>,
    pub stabilized: bool,
    pub reports: Vec<SliceReport>,
}

impl StabilizedCohomology {
    /// The value at `p_max`.
    pub fn value(&self) -> usize {
        *self.dims.last().expect("p_max >= 1")
    }
}

pub fn stabilized_gf_cohomology(
    variety: &Variety,
    module: &LPlusModule,
    k: usize,
    w: &Weight,
    p_max: u32,
) -> Result<StabilizedCohomology> {
    if p_max < 2 {
        return Err(Error::InvalidArgument("p_max must be at least 2".into()));
    }
    if !variety.is_graded() {
        return Err(Error::Unsupported(format!(
            "direct computation needs a graded variety, got {}",
            variety.name()
        )));
    }
    let model = JetModel::new(variety, module, p_max)?;
    stabilized_on_model(&model, k, w)
}

pub fn stabilized_on_model(model: &JetModel, k: usize, w: &Weight) -> Result<StabilizedCohomology> {
    let p_max = model.order();
    let slice = build_weight_slice(model, k, w)?;
    let order_of = |args: &[usize]| args.iter().map(|&a| model.generator_order(a)).max().unwrap_or(1);
    let rank_in = rank(&slice.d_in);
    let mut dims = Vec::new();
    let mut reports = Vec::new();
    for p in 1..=p_max {
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            (0..slice.dim()).partition(|&i| order_of(&slice.basis[i].0) <= p);
        let cocycles = inside.len() - rank(&slice.d_out.select_cols(&inside));
        let boundaries = rank_in - rank(&slice.d_in.select_rows(&outside));
        let betti = cocycles
            .checked_sub(boundaries)
            .ok_or(Error::InconsistentComplex { cocycles, rank: boundaries })?;
        dims.push(betti);
        reports.push(SliceReport {
            algebra: model.label(),
            module: model.module_label(),
            k,
            weight: w.iter().map(|x| x.to_string()).collect(),
            order: Some(p),
            dim_cocycles: cocycles,
            rank_boundaries: boundaries,
            betti,
        });
    }
    let n = dims.len();
    Ok(StabilizedCohomology {
        k,
        weight: w.iter().map(|x| x.to_string()).collect(),
        p_max,
        stabilized: dims[n - 1] == dims[n - 2],
        dims,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarietyKind;
    use crate::cochain::zero_weight;
    use crate::util::q;

    fn dims(v: &Variety, w: &LPlusModule, k: usize) -> StabilizedCohomology {
        stabilized_gf_cohomology(v, w, k, &zero_weight(v.dim()), 5).unwrap()
    }

    #[test]
    fn trivial_coefficients() {
        let a = VarietyKind::affine(1).unwrap();
        let t = VarietyKind::torus(1).unwrap();
        let w = LPlusModule::trivial(1);
        assert_eq!(dims(&a, &w, 0).dims, vec![1; 5]);
        let h1 = dims(&a, &w, 1);
        assert!(h1.stabilized);
        assert_eq!(h1.value(), 1);
        let h2 = dims(&t, &w, 2);
        assert!(h2.stabilized);
        assert_eq!(h2.value(), 1);
        assert_eq!(dims(&t, &w, 1).value(), 2);
    }

    #[test]
    fn weight_module_on_the_line() {
        let a = VarietyKind::affine(1).unwrap();
        let w = LPlusModule::weight(q(1));
        let got: Vec<usize> = (0..=2).map(|k| dims(&a, &w, k).value()).collect();
        assert_eq!(got, vec![0, 1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        let a = VarietyKind::affine(1).unwrap();
        let w = LPlusModule::trivial(1);
        assert!(stabilized_gf_cohomology(&a, &w, 0, &zero_weight(1), 1).is_err());
        let s = VarietyKind::punctured_sphere(vec![q(0)]).unwrap();
        assert!(stabilized_gf_cohomology(&s, &w, 0, &vec![], 3).is_err());
    }
}
