//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` for integer `n` (possibly negative) and `k >= 0`.
pub fn binomial(n: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    num / factorial(k)
}

/// `1 / m!` for a multi-index.
pub fn inv_multi_factorial(m: &[u32]) -> Rational {
    let d = m
        .iter()
        .fold(BigInt::one(), |acc, &k| acc * factorial(k as u64));
    Rational::new(BigInt::one(), d)
}

/// Integer power of a rational with possibly negative exponent. Panics on `0^-k`.
pub fn rpow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        assert!(!base.is_zero(), "zero raised to a negative power");
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn sign(parity: usize) -> Rational {
    if parity.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// All multi-indices in `Z_+^n` with total degree exactly `d`, in lexicographic
/// order (first component largest first).
pub fn multi_indices_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(n - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// All multi-indices `m` with `m <= bound` componentwise.
pub fn multi_indices_below(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=b).map(move |v| {
                    let mut p = p.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Strictly increasing `k`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sorts `items` in place and returns the parity of the sorting permutation,
/// or `None` when two items coincide.
pub fn sort_with_parity<T: Ord>(items: &mut [T]) -> Option<usize> {
    let mut parity = 0;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1] > items[j] {
            items.swap(j - 1, j);
            parity += 1;
            j -= 1;
        }
    }
    if items.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(parity % 2)
    }
}
