//! Fraction-free rank over the rationals.
//!
//! Every row is scaled to a primitive integer vector; eliminating column `c`
//! from row `r` with pivot row `p` is the cross-multiplication
//! `r <- p[c] * r - r[c] * p`, followed by division by the content. Entries
//! therefore stay integral and coprime, which keeps coefficient growth in
//! check. Pivoting follows the same documented rule as the generic path.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elimination::{choose_pivot, column_counts, row_order};
use super::sparse::SparseMatrix;

type IntRow = Vec<(usize, BigInt)>;

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
    row
}

fn to_integer_row(row: &[(usize, BigRational)]) -> IntRow {
    let mut l = BigInt::one();
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    primitive(
        row.iter()
            .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
            .collect(),
    )
}

fn get(row: &IntRow, c: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&c, |(i, _)| *i)
        .ok()
        .map(|pos| &row[pos].1)
}

/// `a * r - b * p`
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rank(m: &SparseMatrix<BigRational>) -> usize {
    let counts = column_counts(m);
    let mut pivots: Vec<(usize, IntRow)> = Vec::new();
    let mut pivot_of_col: HashMap<usize, usize> = HashMap::new();
    for i in row_order(m.row_vecs(), |r| r.nnz()) {
        let mut row = to_integer_row(m.row(i).entries());
        loop {
            let next = row
                .iter()
                .filter_map(|(c, _)| pivot_of_col.get(c).map(|&pi| (pi, *c)))
                .min_by_key(|(pi, _)| *pi);
            let Some((pi, c)) = next else { break };
            let (_, prow) = &pivots[pi];
            let a = get(prow, c).expect("pivot entry").clone();
            let b = get(&row, c).expect("row entry").clone();
            let g = a.gcd(&b);
            row = primitive(combine(&(&a / &g), &row, &(&b / &g), prow));
        }
        if row.is_empty() {
            continue;
        }
        let c = choose_pivot(row.iter().map(|(c, _)| c), &counts);
        pivot_of_col.insert(c, pivots.len());
        pivots.push((c, row));
    }
    pivots.len()
}
