use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sparse::SparseMatrix;
use super::{elimination, fraction_free};

/// An exact field usable as the scalar of the sparse linear algebra layer.
///
/// Floating-point types deliberately do not implement this trait: every rank
/// and kernel computed here backs an integer-valued claim.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Rank over the field. Implementations may override the elimination
    /// strategy; the result must equal [`elimination::rank_by_elimination`].
    fn rank_of(m: &SparseMatrix<Self>) -> usize {
        elimination::rank_by_elimination(m)
    }
}

impl Field for BigRational {
    fn rank_of(m: &SparseMatrix<Self>) -> usize {
        fraction_free::rank(m)
    }
}

/// Integers modulo a prime `P < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField<const P: u64>(u64);

impl<const P: u64> PrimeField<P> {
    pub fn new(v: i64) -> Self {
        Self(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Self(acc)
    }

    pub fn inverse(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> Zero for PrimeField<P> {
    fn zero() -> Self {
        Self(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for PrimeField<P> {
    fn one() -> Self {
        Self(1 % P)
    }
}

impl<const P: u64> Add for PrimeField<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for PrimeField<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for PrimeField<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0 % P)
    }
}

impl<const P: u64> Div for PrimeField<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u64> Neg for PrimeField<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Self((P - self.0) % P)
    }
}

impl<const P: u64> Field for PrimeField<P> {}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = PrimeField<7>;

    #[test]
    fn prime_field_inverse() {
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.inverse().unwrap(), F7::one());
        }
        assert!(F7::new(0).inverse().is_none());
        assert_eq!(F7::new(-1), F7::new(6));
    }
}
