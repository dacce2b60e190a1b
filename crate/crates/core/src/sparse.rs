//! Column-compressed sparse matrices with exact entries.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Sorts, merges duplicates, and drops zeros.
pub fn normalize<K: Field>(k: &K, mut v: Vec<(usize, K::Elem)>) -> SparseVec<K::Elem> {
    if v.len() > 1 {
        v.sort_by_key(|e| e.0);
    }
    let mut out: SparseVec<K::Elem> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = k.add(acc, &c),
            _ => {
                if let Some((_, acc)) = out.last() {
                    if k.is_zero(acc) {
                        out.pop();
                    }
                }
                out.push((i, c));
            }
        }
    }
    if let Some((_, acc)) = out.last() {
        if k.is_zero(acc) {
            out.pop();
        }
    }
    out
}

/// `a*x + b*y` for sorted sparse vectors.
pub fn lin_comb<K: Field>(
    k: &K,
    a: &K::Elem,
    x: &[(usize, K::Elem)],
    b: &K::Elem,
    y: &[(usize, K::Elem)],
) -> SparseVec<K::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, k.mul(a, &x[i].1)));
            i += 1;
        } else if take_y {
            out.push((y[j].0, k.mul(b, &y[j].1)));
            j += 1;
        } else {
            let v = k.add(&k.mul(a, &x[i].1), &k.mul(b, &y[j].1));
            if !k.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec<K: Field>(k: &K, a: &K::Elem, x: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
    if k.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, c)| (*i, k.mul(a, c))).collect()
}

pub fn dense_to_sparse<K: Field>(k: &K, v: &[K::Elem]) -> SparseVec<K::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !k.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense<K: Field>(k: &K, v: &[(usize, K::Elem)], len: usize) -> Vec<K::Elem> {
    let mut out = vec![k.zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Exact sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq + Send + Sync> SparseMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Columns must already be normalized and in range.
    pub fn from_normalized_columns(rows: usize, cols: Vec<SparseVec<E>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < rows)));
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols.len())
    }

    pub fn col(&self, j: usize) -> &[(usize, E)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec<E>> {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.cols[c]
            .binary_search_by_key(&r, |e| e.0)
            .ok()
            .map(|p| &self.cols[c][p].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t: Vec<SparseVec<E>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                t[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols: t }
    }

    /// Row-major view: `rows()[i]` lists `(col, value)` pairs of row `i`.
    pub fn row_vectors(&self) -> Vec<SparseVec<E>> {
        self.transpose().cols
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        SparseMatrix { rows: self.rows, cols: idx.iter().map(|&j| self.cols[j].clone()).collect() }
    }
}

impl<E: Clone + PartialEq + Send + Sync> SparseMatrix<E> {
    pub fn from_columns<K: Field<Elem = E>>(k: &K, rows: usize, cols: Vec<Vec<(usize, E)>>) -> Result<Self> {
        let cols: Vec<SparseVec<E>> = cols.into_iter().map(|c| normalize(k, c)).collect();
        if let Some((j, (i, _))) = cols
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.last().filter(|(i, _)| *i >= rows).map(|e| (j, e)))
        {
            return Err(Error::OutOfRange(format!("entry ({i}, {j}) outside {rows} rows")));
        }
        Ok(SparseMatrix { rows, cols })
    }

    pub fn identity<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i, k.one())]).collect() }
    }

    pub fn scalar<K: Field<Elem = E>>(k: &K, n: usize, c: &E) -> Self {
        if k.is_zero(c) {
            return Self::zero(n, n);
        }
        SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// Dense row-major integer input; handy for tests and fixtures.
    pub fn from_rows_i64<K: Field<Elem = E>>(k: &K, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    cols[j].push((i, k.from_i64(*v)));
                }
            }
        }
        SparseMatrix { rows: nrows, cols }
    }

    pub fn to_dense<K: Field<Elem = E>>(&self, k: &K) -> Vec<Vec<E>> {
        let mut out = vec![vec![k.zero(); self.cols.len()]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn mul_vec<K: Field<Elem = E>>(&self, k: &K, v: &[(usize, E)]) -> SparseVec<E> {
        let mut acc = Vec::new();
        for (j, c) in v {
            for (i, a) in &self.cols[*j] {
                acc.push((*i, k.mul(a, c)));
            }
        }
        normalize(k, acc)
    }

    /// `self * other`.
    pub fn mul<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self> {
        if self.cols.len() != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols.len(),
                other.rows,
                other.cols.len()
            )));
        }
        let cols = other.cols.par_iter().map(|c| self.mul_vec(k, c)).collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    fn combine<K: Field<Elem = E>>(&self, k: &K, a: &E, other: &Self, b: &E) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                other.shape()
            )));
        }
        let cols = self
            .cols
            .par_iter()
            .zip(other.cols.par_iter())
            .map(|(x, y)| lin_comb(k, a, x, b, y))
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self> {
        self.combine(k, &k.one(), other, &k.one())
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Result<Self> {
        self.combine(k, &k.one(), other, &k.from_i64(-1))
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, a: &E) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|c| scale_vec(k, a, c)).collect() }
    }

    pub fn neg<K: Field<Elem = E>>(&self, k: &K) -> Self {
        self.scale(k, &k.from_i64(-1))
    }

    pub fn pow<K: Field<Elem = E>>(&self, k: &K, e: u32) -> Result<Self> {
        if self.rows != self.cols.len() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(k, self.rows);
        for _ in 0..e {
            acc = self.mul(k, &acc)?;
        }
        Ok(acc)
    }

    /// Block matrix from a grid of optional blocks; `None` is a zero block.
    /// Row heights and column widths are given explicitly.
    pub fn from_blocks(heights: &[usize], widths: &[usize], blocks: &[Vec<Option<&Self>>]) -> Result<Self> {
        let rows: usize = heights.iter().sum();
        let mut cols: Vec<SparseVec<E>> = Vec::with_capacity(widths.iter().sum());
        let mut row_off = vec![0; heights.len()];
        for r in 1..heights.len() {
            row_off[r] = row_off[r - 1] + heights[r - 1];
        }
        for (bc, &w) in widths.iter().enumerate() {
            for j in 0..w {
                let mut col = Vec::new();
                for (br, &h) in heights.iter().enumerate() {
                    if let Some(block) = blocks[br][bc] {
                        if block.shape() != (h, w) {
                            return Err(Error::DimensionMismatch(format!(
                                "block ({br},{bc}) is {:?}, expected {:?}",
                                block.shape(),
                                (h, w)
                            )));
                        }
                        col.extend(block.cols[j].iter().map(|(i, v)| (i + row_off[br], v.clone())));
                    }
                }
                cols.push(col);
            }
        }
        Ok(SparseMatrix { rows, cols })
    }
}

/// Builds a matrix column by column in parallel. `f(j)` returns the raw,
/// possibly unsorted and duplicated, entries of column `j`.
pub fn build_columns<K, F>(k: &K, rows: usize, ncols: usize, f: F) -> SparseMatrix<K::Elem>
where
    K: Field,
    F: Fn(usize) -> Vec<(usize, K::Elem)> + Sync + Send,
{
    let cols: Vec<SparseVec<K::Elem>> = (0..ncols)
        .into_par_iter()
        .with_min_len(64)
        .map(|j| {
            let c = normalize(k, f(j));
            debug_assert!(c.last().is_none_or(|(i, _)| *i < rows));
            c
        })
        .collect();
    SparseMatrix::from_normalized_columns(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};

    #[test]
    fn normalize_merges_and_drops() {
        let k = Rationals;
        let v = vec![(3, Rational::from_int(1)), (1, Rational::from_int(2)), (3, Rational::from_int(-1))];
        assert_eq!(normalize(&k, v), vec![(1, Rational::from_int(2))]);
    }

    #[test]
    fn multiply_and_transpose() {
        let k = Rationals;
        let a = SparseMatrix::from_rows_i64(&k, &[vec![1, 2], vec![0, 1], vec![3, 0]]);
        let b = SparseMatrix::from_rows_i64(&k, &[vec![1, 0, 1], vec![1, 1, 0]]);
        let ab = a.mul(&k, &b).unwrap();
        let expect = SparseMatrix::from_rows_i64(&k, &[vec![3, 2, 1], vec![1, 1, 0], vec![3, 0, 3]]);
        assert_eq!(ab, expect);
        assert_eq!(ab.transpose().transpose(), ab);
        let bt_at = b.transpose().mul(&k, &a.transpose()).unwrap();
        assert_eq!(bt_at, ab.transpose());
        assert!(a.mul(&k, &a).is_err());
    }

    #[test]
    fn cancellation_leaves_no_zeros() {
        let k = PrimeField::new(2).unwrap();
        let a = SparseMatrix::from_rows_i64(&k, &[vec![1, 1], vec![1, 1]]);
        let sq = a.mul(&k, &a).unwrap();
        assert!(sq.is_zero());
        assert_eq!(sq.nnz(), 0);
    }

    #[test]
    fn blocks_assemble() {
        let k = Rationals;
        let i2 = SparseMatrix::identity(&k, 2);
        let z = SparseMatrix::from_rows_i64(&k, &[vec![5, 6]]);
        let m = SparseMatrix::from_blocks(&[2, 1], &[2], &[vec![Some(&i2)], vec![Some(&z)]]).unwrap();
        assert_eq!(m, SparseMatrix::from_rows_i64(&k, &[vec![1, 0], vec![0, 1], vec![5, 6]]));
    }
}
