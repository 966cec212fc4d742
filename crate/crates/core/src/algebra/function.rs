use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::util::{binomial, q, rpow};
use crate::Rational;

/// The coordinate ring families in scope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarietyKind {
    /// Affine space with `k[x_1, ..., x_n]`.
    Affine(usize),
    /// Torus with Laurent polynomials `k[x_1^±1, ..., x_n^±1]`.
    Torus(usize),
    /// Projective line minus `infinity` and the listed finite points, with
    /// functions `k[z, (z - a_1)^-1, ..., (z - a_m)^-1]`.
    PuncturedSphere(Vec<Rational>),
}

pub type Variety = Arc<VarietyKind>;

impl VarietyKind {
    pub fn affine(n: usize) -> Result<Variety> {
        Self::Affine(n).validated()
    }

    pub fn torus(n: usize) -> Result<Variety> {
        Self::Torus(n).validated()
    }

    pub fn punctured_sphere(punctures: Vec<Rational>) -> Result<Variety> {
        Self::PuncturedSphere(punctures).validated()
    }

    pub fn validated(self) -> Result<Variety> {
        match &self {
            Self::Affine(0) | Self::Torus(0) => {
                return Err(Error::InvalidVariety("dimension must be at least 1".into()))
            }
            Self::PuncturedSphere(p) => {
                if p.is_empty() {
                    return Err(Error::InvalidVariety("at least one finite puncture required".into()));
                }
                for (i, a) in p.iter().enumerate() {
                    if p[..i].contains(a) {
                        return Err(Error::InvalidVariety(format!("repeated puncture {a}")));
                    }
                }
            }
            _ => {}
        }
        Ok(Arc::new(self))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Affine(n) | Self::Torus(n) => *n,
            Self::PuncturedSphere(_) => 1,
        }
    }

    /// Affine space and the torus carry a `Z^n` grading by exponent.
    pub fn is_graded(&self) -> bool {
        !matches!(self, Self::PuncturedSphere(_))
    }

    pub fn punctures(&self) -> &[Rational] {
        match self {
            Self::PuncturedSphere(p) => p,
            _ => &[],
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Affine(n) => format!("affine{n}"),
            Self::Torus(n) => format!("torus{n}"),
            Self::PuncturedSphere(p) => format!(
                "sphere[{}]",
                p.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    pub fn variable_name(&self, i: usize) -> String {
        match self {
            Self::PuncturedSphere(_) => "z".to_string(),
            _ if self.dim() == 1 => "x".to_string(),
            _ => format!("x{}", i + 1),
        }
    }
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A basis element of the coordinate ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionKey {
    /// `x^a` on affine space (`a >= 0`) or the torus (`a` arbitrary).
    Monomial(Vec<i32>),
    /// `z^k` on a punctured sphere.
    Power(u32),
    /// `(z - a_i)^-k`, `k >= 1`, on a punctured sphere.
    Pole(usize, u32),
}

impl FunctionKey {
    pub fn constant(v: &VarietyKind) -> Self {
        match v {
            VarietyKind::PuncturedSphere(_) => Self::Power(0),
            _ => Self::Monomial(vec![0; v.dim()]),
        }
    }

    /// Exponent vector for graded varieties.
    pub fn multidegree(&self) -> Option<&[i32]> {
        match self {
            Self::Monomial(a) => Some(a),
            _ => None,
        }
    }

    pub(crate) fn render(&self, v: &VarietyKind) -> String {
        match self {
            Self::Monomial(a) => {
                let parts: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        let x = v.variable_name(i);
                        if e == 1 {
                            x
                        } else {
                            format!("{x}^{e}")
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            }
            Self::Power(0) => "1".into(),
            Self::Power(1) => "z".into(),
            Self::Power(k) => format!("z^{k}"),
            Self::Pole(i, k) => {
                let a = &v.punctures()[*i];
                let shift = if a.is_zero() {
                    "z".to_string()
                } else if a.is_negative() {
                    format!("(z+{})", -a)
                } else {
                    format!("(z-{a})")
                };
                if shift == "z" {
                    format!("z^-{k}")
                } else {
                    format!("{shift}^-{k}")
                }
            }
        }
    }
}

/// An element of the coordinate ring, stored over the canonical basis
/// (partial-fraction normal form on punctured spheres).
#[derive(Clone, Debug)]
pub struct FunctionElem {
    variety: Variety,
    terms: BTreeMap<FunctionKey, Rational>,
}

impl PartialEq for FunctionElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.variety, &other.variety) || self.variety == other.variety)
            && self.terms == other.terms
    }
}

impl Eq for FunctionElem {}

pub(crate) fn check_same(a: &Variety, b: &Variety) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::VarietyMismatch {
            left: a.name(),
            right: b.name(),
        })
    }
}

impl FunctionElem {
    pub fn zero(v: &Variety) -> Self {
        Self {
            variety: v.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(v: &Variety, c: Rational) -> Self {
        Self::from_key(v, FunctionKey::constant(v), c)
    }

    pub fn one(v: &Variety) -> Self {
        Self::constant(v, Rational::one())
    }

    /// Single basis element with coefficient `c`. Panics if the key does not
    /// belong to the variety's basis.
    pub fn from_key(v: &Variety, key: FunctionKey, c: Rational) -> Self {
        assert!(key_is_valid(v, &key), "key {key:?} not in basis of {}", v.name());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Self {
            variety: v.clone(),
            terms,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (FunctionKey, Rational)>>(v: &Variety, it: I) -> Self {
        let mut out = Self::zero(v);
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn monomial(v: &Variety, exponents: &[i32]) -> Result<Self> {
        let key = FunctionKey::Monomial(exponents.to_vec());
        if !key_is_valid(v, &key) {
            return Err(Error::InvalidArgument(format!(
                "exponent {exponents:?} not allowed on {}",
                v.name()
            )));
        }
        Ok(Self::from_key(v, key, Rational::one()))
    }

    /// The `i`-th uniformizing parameter (`z` on a punctured sphere).
    pub fn coordinate(v: &Variety, i: usize) -> Self {
        assert!(i < v.dim(), "coordinate index out of range");
        match &**v {
            VarietyKind::PuncturedSphere(_) => Self::from_key(v, FunctionKey::Power(1), Rational::one()),
            _ => {
                let mut e = vec![0; v.dim()];
                e[i] = 1;
                Self::from_key(v, FunctionKey::Monomial(e), Rational::one())
            }
        }
    }

    /// `(z - a_i)^-k` on a punctured sphere.
    pub fn pole(v: &Variety, i: usize, k: u32) -> Result<Self> {
        let key = FunctionKey::Pole(i, k);
        if !key_is_valid(v, &key) {
            return Err(Error::InvalidArgument(format!("no pole ({i}, {k}) on {}", v.name())));
        }
        Ok(Self::from_key(v, key, Rational::one()))
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn terms(&self) -> &BTreeMap<FunctionKey, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &FunctionKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` if this is the constant function `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        let c = FunctionKey::constant(&self.variety);
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&c).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, key: FunctionKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(key_is_valid(&self.variety, &key));
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-Rational::one(), other)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        check_same(&self.variety, &other.variety).expect("add across varieties");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.variety);
        }
        Self {
            variety: self.variety.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Ring product, failing on mismatched varieties.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same(&self.variety, &other.variety)?;
        let mut out = Self::zero(&self.variety);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let c = ca * cb;
                for (k, v) in mul_keys(&self.variety, ka, kb) {
                    out.add_term(k, v * &c);
                }
            }
        }
        Ok(out)
    }

    /// Ring product; panics on mismatched varieties.
    pub fn mul(&self, other: &Self) -> Self {
        self.multiply(other).expect("product across varieties")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.variety);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative along the `direction`-th uniformizing parameter
    /// (0-based).
    pub fn derive(&self, direction: usize) -> Self {
        assert!(direction < self.variety.dim(), "direction out of range");
        let mut out = Self::zero(&self.variety);
        for (k, c) in &self.terms {
            match k {
                FunctionKey::Monomial(a) => {
                    if a[direction] != 0 {
                        let mut b = a.clone();
                        b[direction] -= 1;
                        out.add_term(FunctionKey::Monomial(b), c * q(a[direction] as i64));
                    }
                }
                FunctionKey::Power(0) => {}
                FunctionKey::Power(e) => out.add_term(FunctionKey::Power(e - 1), c * q(*e as i64)),
                FunctionKey::Pole(i, e) => out.add_term(FunctionKey::Pole(*i, e + 1), c * q(-(*e as i64))),
            }
        }
        out
    }

    /// `∂^m f` for a multi-index `m`.
    pub fn derive_multi(&self, m: &[u32]) -> Self {
        let mut out = self.clone();
        for (i, &k) in m.iter().enumerate() {
            for _ in 0..k {
                out = out.derive(i);
            }
        }
        out
    }

    /// Value at a point; `None` at a pole.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        assert_eq!(point.len(), self.variety.dim());
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            let v = match k {
                FunctionKey::Monomial(a) => {
                    let mut v = Rational::one();
                    for (x, &e) in point.iter().zip(a) {
                        if e < 0 && x.is_zero() {
                            return None;
                        }
                        v *= rpow(x, e as i64);
                    }
                    v
                }
                FunctionKey::Power(e) => rpow(&point[0], *e as i64),
                FunctionKey::Pole(i, e) => {
                    let d = &point[0] - &self.variety.punctures()[*i];
                    if d.is_zero() {
                        return None;
                    }
                    rpow(&d, -(*e as i64))
                }
            };
            acc += c * v;
        }
        Some(acc)
    }

    /// Common exponent vector if the element is homogeneous for the `Z^n`
    /// grading; `None` for zero, inhomogeneous or ungraded elements.
    pub fn multidegree(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.multidegree()?.to_vec();
        for k in it {
            if k.multidegree()? != first.as_slice() {
                return None;
            }
        }
        Some(first)
    }
}

impl fmt::Display for FunctionElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let body = k.render(&self.variety);
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if body == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn key_is_valid(v: &VarietyKind, key: &FunctionKey) -> bool {
    match (v, key) {
        (VarietyKind::Affine(n), FunctionKey::Monomial(a)) => a.len() == *n && a.iter().all(|&e| e >= 0),
        (VarietyKind::Torus(n), FunctionKey::Monomial(a)) => a.len() == *n,
        (VarietyKind::PuncturedSphere(_), FunctionKey::Power(_)) => true,
        (VarietyKind::PuncturedSphere(p), FunctionKey::Pole(i, k)) => *i < p.len() && *k >= 1,
        _ => false,
    }
}

/// Product of two basis elements, expanded in the basis.
fn mul_keys(v: &VarietyKind, a: &FunctionKey, b: &FunctionKey) -> Vec<(FunctionKey, Rational)> {
    use FunctionKey::*;
    match (a, b) {
        (Monomial(x), Monomial(y)) => vec![(
            Monomial(x.iter().zip(y).map(|(p, q)| p + q).collect()),
            Rational::one(),
        )],
        (Power(k), Power(l)) => vec![(Power(k + l), Rational::one())],
        (Pole(i, k), Pole(j, l)) if i == j => vec![(Pole(*i, k + l), Rational::one())],
        (Pole(i, k), Pole(j, l)) => {
            let (ai, aj) = (&v.punctures()[*i], &v.punctures()[*j]);
            let mut out = Vec::new();
            // principal part at a_i of (z - a_j)^-l, times (z - a_i)^-k
            for qq in 0..*k {
                let c = Rational::from_integer(binomial(-(*l as i64), qq as u64))
                    * rpow(&(ai - aj), -(*l as i64) - qq as i64);
                out.push((Pole(*i, k - qq), c));
            }
            for qq in 0..*l {
                let c = Rational::from_integer(binomial(-(*k as i64), qq as u64))
                    * rpow(&(aj - ai), -(*k as i64) - qq as i64);
                out.push((Pole(*j, l - qq), c));
            }
            out
        }
        (Power(k), Pole(i, l)) | (Pole(i, l), Power(k)) => {
            let a = &v.punctures()[*i];
            let mut out = Vec::new();
            // z^k = sum_r C(k,r) a^(k-r) (z-a)^r
            for r in 0..=*k {
                let c = Rational::from_integer(binomial(*k as i64, r as u64)) * rpow(a, (k - r) as i64);
                if r < *l {
                    out.push((Pole(*i, l - r), c));
                } else {
                    // (z-a)^(r-l) = sum_s C(r-l,s) z^s (-a)^(r-l-s)
                    let e = r - l;
                    for s in 0..=e {
                        let cc = Rational::from_integer(binomial(e as i64, s as u64))
                            * rpow(&-a.clone(), (e - s) as i64);
                        out.push((Power(s), &c * cc));
                    }
                }
            }
            out
        }
        _ => panic!("incompatible basis keys {a:?} and {b:?}"),
    }
}
