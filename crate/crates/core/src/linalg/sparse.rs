use std::collections::BTreeMap;

use super::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> Self {
        Self { entries: vec![(index, F::one())] }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats
    /// and dropping zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, F)>>(it: I) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in it {
            if v.is_zero() {
                continue;
            }
            match acc.get_mut(&i) {
                Some(slot) => *slot = slot.clone() + v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        Self {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from entries already sorted by strictly increasing index with no zeros.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        Self { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn get(&self, index: usize) -> F {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb.clone() * c.clone()));
                        b.next();
                    } else {
                        let s = va.clone() + vb.clone() * c.clone();
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb.clone() * c.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&(-F::one()), other)
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-F::one()))
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (&self.entries[i], &other.entries[j]);
            if a.0 < b.0 {
                i += 1;
            } else if b.0 < a.0 {
                j += 1;
            } else {
                acc = acc + a.1.clone() * b.1.clone();
                i += 1;
                j += 1;
            }
        }
        acc
    }

    /// Keeps only entries whose index satisfies `keep`, reindexed through `map`.
    pub fn remap<M: Fn(usize) -> Option<usize>>(&self, map: M) -> Self {
        Self::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![SparseVec::zero(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// Panics if any row has an index `>= cols`.
    pub fn from_rows(cols: usize, data: Vec<SparseVec<F>>) -> Self {
        for r in &data {
            if let Some(m) = r.max_index() {
                assert!(m < cols, "row index {m} out of range for {cols} columns");
            }
        }
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, F)>>(
        rows: usize,
        cols: usize,
        it: I,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (r, c, v) in it {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        Self {
            rows,
            cols,
            data: buckets.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| SparseVec::from_entries(r.iter().cloned().enumerate()))
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec<F> {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec<F>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r].get(c)
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                buckets[*c].push((r, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data: buckets
                .into_iter()
                .map(SparseVec::from_sorted_unchecked)
                .collect(),
        }
    }

    /// `self * v` for `v` indexed by columns.
    pub fn mul_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        SparseVec::from_entries(
            self.data
                .iter()
                .enumerate()
                .map(|(r, row)| (r, row.dot(v))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::zero();
                for (k, v) in row.iter() {
                    acc = acc.add_scaled(v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Self {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        Self {
            rows: keep.len(),
            cols: self.cols,
            data: keep.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    /// Restricts to the listed columns, renumbered in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> Self {
        let mut map = vec![None; self.cols];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        Self {
            rows: self.rows,
            cols: keep.len(),
            data: self.data.iter().map(|r| r.remap(|c| map[c])).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn from_entries_normalizes() {
        let v = SparseVec::from_entries(vec![(3, q(1)), (1, q(2)), (3, q(-1)), (0, q(0))]);
        assert_eq!(v.entries(), &[(1, q(2))]);
    }

    #[test]
    fn transpose_and_product() {
        let a = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(0), q(3)]]);
        let t = a.transpose();
        assert_eq!(t.get(1, 0), q(2));
        let p = a.mul(&SparseMatrix::identity(2));
        assert_eq!(p, a);
        let v = a.mul_vec(&SparseVec::from_entries(vec![(1, q(1))]));
        assert_eq!(v.entries(), &[(0, q(2)), (1, q(3))]);
    }

    #[test]
    #[should_panic]
    fn rows_out_of_range_panic() {
        SparseMatrix::from_rows(1, vec![SparseVec::<Rational>::unit(1)]);
    }
}
