use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};

use crate::util::sign;
use crate::{QVec, Rational};

/// Multigrading: one rational component per grading direction.
pub type Weight = Vec<Rational>;

/// A Lie algebra (or a Lie algebroid free over `A`, with cochains taken
/// `A`-linear) together with a coefficient module, presented by generators
/// with constant structure constants and a graded value basis.
///
/// Cochains are determined by their values on strictly increasing tuples of
/// generators; `act` includes the anchor for algebroids.
pub trait CochainModel: Sync {
    type Value: Clone + Ord + Hash + Debug + Send + Sync;

    fn label(&self) -> String;
    fn module_label(&self) -> String;
    fn generator_count(&self) -> usize;
    fn generator_weight(&self, i: usize) -> &Weight;
    fn generator_name(&self, i: usize) -> String;

    /// Smallest finiteness order `p` whose complex contains this generator.
    fn generator_order(&self, _i: usize) -> u32 {
        0
    }

    fn bracket(&self, i: usize, j: usize) -> &QVec;
    fn act(&self, i: usize, v: &Self::Value) -> Vec<(Self::Value, Rational)>;
    fn value_weight(&self, v: &Self::Value) -> Weight;
    /// Finite list of value basis elements of the given weight.
    fn values_of_weight(&self, w: &Weight) -> Vec<Self::Value>;
}

pub type CochainKey<V> = (Vec<usize>, V);

/// A finitely supported cochain: values on sorted generator tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainVec<V: Ord> {
    pub degree: usize,
    pub terms: BTreeMap<CochainKey<V>, Rational>,
}

impl<V: Ord + Clone> CochainVec<V> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, args: Vec<usize>, v: V, c: Rational) {
        debug_assert_eq!(args.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let key = (args, v);
        let s = self.terms.remove(&key).map_or(c.clone(), |old| old + c);
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for ((a, v), x) in &other.terms {
            out.add_term(a.clone(), v.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-Rational::one(), other)
    }

    /// Value on an arbitrary ordered tuple, using antisymmetry.
    pub fn value_on(&self, args: &[usize]) -> BTreeMap<V, Rational> {
        let mut sorted = args.to_vec();
        let Some(parity) = crate::util::sort_with_parity(&mut sorted) else {
            return BTreeMap::new();
        };
        let s = sign(parity);
        self.terms
            .iter()
            .filter(|((a, _), _)| *a == sorted)
            .map(|((_, v), c)| (v.clone(), c * &s))
            .collect()
    }
}

/// Precomputed bracket data of a model: for each generator `r`, the pairs
/// `a < b` with `[a, b]` containing `r`.
pub struct Engine<'m, M: CochainModel> {
    model: &'m M,
    by_target: Vec<Vec<(usize, usize, Rational)>>,
}

impl<'m, M: CochainModel> Engine<'m, M> {
    pub fn new(model: &'m M) -> Self {
        let g = model.generator_count();
        let mut by_target = vec![Vec::new(); g];
        for a in 0..g {
            for b in a + 1..g {
                for (r, c) in model.bracket(a, b).iter() {
                    by_target[*r].push((a, b, c.clone()));
                }
            }
        }
        Self { model, by_target }
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    /// Adds `c · d(e_{args, v})` to `out`, with the differential
    /// `dφ(u_1..u_{k+1}) = sum_{s<t} (−1)^{s+t−1} φ([u_s,u_t], ..) + sum_s (−1)^s u_s·φ(.., û_s, ..)`
    /// (positions counted from 1, so that `dφ(u) = −u·φ` in degree zero).
    pub fn push_differential(
        &self,
        args: &[usize],
        v: &M::Value,
        c: &Rational,
        out: &mut BTreeMap<CochainKey<M::Value>, Rational>,
    ) {
        let mut add = |key: CochainKey<M::Value>, x: Rational| {
            if x.is_zero() {
                return;
            }
            let s = out.remove(&key).map_or(x.clone(), |old| old + x);
            if !s.is_zero() {
                out.insert(key, s);
            }
        };
        let g = self.model.generator_count();
        for gen in 0..g {
            let Err(s) = args.binary_search(&gen) else { continue };
            let action = self.model.act(gen, v);
            if action.is_empty() {
                continue;
            }
            let mut j = args.to_vec();
            j.insert(s, gen);
            let sg = sign(s + 1);
            for (v2, a) in action {
                add((j.clone(), v2), &sg * &a * c);
            }
        }
        for (pos_r, &r) in args.iter().enumerate() {
            let rest: Vec<usize> = args.iter().copied().filter(|&x| x != r).collect();
            for (a, b, coef) in &self.by_target[r] {
                let (Err(sa), Err(sb)) = (rest.binary_search(a), rest.binary_search(b)) else {
                    continue;
                };
                // positions of a and b in the merged tuple (a < b)
                let s = sa;
                let t = sb + 1;
                let mut j = rest.clone();
                j.insert(sb, *b);
                j.insert(sa, *a);
                debug_assert_eq!(j[s], *a);
                debug_assert_eq!(j[t], *b);
                let sg = sign(s + t + 1 + pos_r);
                add((j, v.clone()), sg * coef * c);
            }
        }
    }

    pub fn apply(&self, phi: &CochainVec<M::Value>) -> CochainVec<M::Value> {
        let mut out = BTreeMap::new();
        for ((args, v), c) in &phi.terms {
            self.push_differential(args, v, c, &mut out);
        }
        CochainVec {
            degree: phi.degree + 1,
            terms: out,
        }
    }
}
