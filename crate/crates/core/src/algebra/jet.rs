use std::collections::BTreeMap;

use crate::error::Result;
use crate::util::{inv_multi_factorial, multi_indices_of_degree};

use super::function::{check_same, FunctionElem, Variety};

/// Truncated jet series `sum_m c_m(x) t^m` with `|m| <= truncation`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetSeries {
    variety: Variety,
    truncation: u32,
    coeffs: BTreeMap<Vec<u32>, FunctionElem>,
}

impl JetSeries {
    pub fn zero(variety: &Variety, truncation: u32) -> Self {
        Self {
            variety: variety.clone(),
            truncation,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, FunctionElem> {
        &self.coeffs
    }

    pub fn coefficient(&self, m: &[u32]) -> FunctionElem {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| FunctionElem::zero(&self.variety))
    }

    pub(crate) fn add_term(&mut self, m: Vec<u32>, c: FunctionElem) {
        if m.iter().sum::<u32>() > self.truncation || c.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry(m.clone())
            .or_insert_with(|| FunctionElem::zero(&self.variety));
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    /// Product truncated at the smaller of the two truncations.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.variety, self.truncation.min(other.truncation));
        for (a, fa) in &self.coeffs {
            for (b, fb) in &other.coeffs {
                let m: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, fa.mul(fb));
            }
        }
        out
    }
}

/// `sum_{|m| <= truncation} (1/m!) g * ∂^m f * t^m`
pub fn jet(g: &FunctionElem, f: &FunctionElem, truncation: u32) -> Result<JetSeries> {
    check_same(g.variety(), f.variety())?;
    let v = g.variety();
    let n = v.dim();
    let mut out = JetSeries::zero(v, truncation);
    for d in 0..=truncation {
        for m in multi_indices_of_degree(n, d) {
            let c = g.mul(&f.derive_multi(&m)).scale(&inv_multi_factorial(&m));
            out.add_term(m, c);
        }
    }
    Ok(out)
}
