//! Sparse Gaussian elimination over an arbitrary [`Field`].
//!
//! Pivoting rule (fixed, so results never depend on scheduling): rows are
//! processed in order of increasing nonzero count, ties broken by row index.
//! A surviving row takes as pivot the column with the smallest column count
//! in the input matrix, ties broken by column index.

use std::collections::HashMap;


use super::field::Field;
use super::sparse::{SparseMatrix, SparseVec};

pub(crate) fn column_counts<F: Field>(m: &SparseMatrix<F>) -> Vec<usize> {
    let mut counts = vec![0usize; m.cols()];
    for row in m.row_vecs() {
        for (c, _) in row.iter() {
            counts[*c] += 1;
        }
    }
    counts
}

pub(crate) fn row_order<T, N: Fn(&T) -> usize>(rows: &[T], nnz: N) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| (nnz(&rows[i]), i));
    order
}

pub(crate) fn choose_pivot<'a, I: Iterator<Item = &'a usize>>(cols: I, counts: &[usize]) -> usize {
    cols.min_by_key(|&&c| (counts[c], c))
        .copied()
        .expect("choose_pivot on empty row")
}

/// Row echelon data: pivot rows normalized to 1 at their pivot column, listed
/// in insertion order. Row `i` contains no pivot column of rows `j < i`.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub cols: usize,
    pub pivots: Vec<(usize, SparseVec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Fully reduces the pivot rows so that each pivot column appears in
    /// exactly one row.
    pub fn reduce(&mut self) {
        for i in (0..self.pivots.len()).rev() {
            let mut row = self.pivots[i].1.clone();
            for (c, p) in self.pivots[i + 1..].iter() {
                let coef = row.get(*c);
                if !coef.is_zero() {
                    row = row.add_scaled(&(-coef), p);
                }
            }
            self.pivots[i].1 = row;
        }
    }
}

/// Reduces `row` against the pivots, always eliminating the earliest-inserted
/// pivot present.
fn reduce_row<F: Field>(
    mut row: SparseVec<F>,
    pivots: &[(usize, SparseVec<F>)],
    pivot_of_col: &HashMap<usize, usize>,
) -> SparseVec<F> {
    loop {
        let next = row
            .iter()
            .filter_map(|(c, v)| pivot_of_col.get(c).map(|&pi| (pi, v.clone())))
            .min_by_key(|(pi, _)| *pi);
        match next {
            None => return row,
            Some((pi, coef)) => row = row.add_scaled(&(-coef), &pivots[pi].1),
        }
    }
}

pub fn echelon<F: Field>(m: &SparseMatrix<F>) -> Echelon<F> {
    let counts = column_counts(m);
    let mut pivots: Vec<(usize, SparseVec<F>)> = Vec::new();
    let mut pivot_of_col: HashMap<usize, usize> = HashMap::new();
    for i in row_order(m.row_vecs(), SparseVec::nnz) {
        let row = reduce_row(m.row(i).clone(), &pivots, &pivot_of_col);
        if row.is_zero() {
            continue;
        }
        let c = choose_pivot(row.iter().map(|(c, _)| c), &counts);
        let inv = F::one() / row.get(c);
        pivot_of_col.insert(c, pivots.len());
        pivots.push((c, row.scale(&inv)));
    }
    Echelon {
        cols: m.cols(),
        pivots,
    }
}

/// Rank by plain field elimination (no fraction-free tricks).
pub fn rank_by_elimination<F: Field>(m: &SparseMatrix<F>) -> usize {
    echelon(m).rank()
}

pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    let mut e = echelon(m);
    e.reduce();
    let mut is_pivot = vec![false; m.cols()];
    for (c, _) in &e.pivots {
        is_pivot[*c] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut entries = vec![(f, F::one())];
            for (c, row) in &e.pivots {
                let v = row.get(f);
                if !v.is_zero() {
                    entries.push((*c, -v));
                }
            }
            SparseVec::from_entries(entries)
        })
        .collect()
}
