//! Exact sparse elimination: rank, kernel, image, solves, and subspaces.
//!
//! Everything funnels through [`Echelon`], an incrementally built echelon basis
//! whose vectors are normalized to a leading 1 at their pivot (their smallest
//! index). Vectors are reduced with a dense scratch buffer plus a min-heap of
//! live indices, so each reduction touches only the entries it actually changes.
//! Inputs are fed in order of increasing support size, ties broken by position,
//! which keeps fill-in low on the very sparse operators built in this crate.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rational};
use crate::sparse::{normalize, SparseMatrix, SparseVec};

struct Scratch<E> {
    vals: Vec<Option<E>>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl<E: Clone> Scratch<E> {
    fn new(dim: usize) -> Self {
        Scratch { vals: vec![None; dim], queued: vec![false; dim], heap: BinaryHeap::new() }
    }
}

/// An echelon basis of a subspace of `K^dim`.
///
/// Optionally tracks, for every basis vector, the combination of inserted
/// inputs that produced it; this is what makes [`Solver`] possible.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    dim: usize,
    basis: Vec<SparseVec<K::Elem>>,
    pivots: Vec<usize>,
    pivot_of: Vec<Option<u32>>,
    tracks: Option<Vec<SparseVec<K::Elem>>>,
    reduced: bool,
}

impl<K: Field> Echelon<K> {
    pub fn new(dim: usize, track: bool) -> Self {
        Echelon {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
            pivot_of: vec![None; dim],
            tracks: track.then(Vec::new),
            reduced: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[SparseVec<K::Elem>] {
        &self.basis
    }

    /// Reduces `v` against the basis. Returns the residual and the
    /// coefficients `(basis id, c)` with `v = residual + sum c * basis[id]`.
    fn reduce(
        &self,
        k: &K,
        v: &[(usize, K::Elem)],
        s: &mut Scratch<K::Elem>,
    ) -> (SparseVec<K::Elem>, Vec<(usize, K::Elem)>) {
        for (i, c) in v {
            s.vals[*i] = Some(c.clone());
            s.queued[*i] = true;
            s.heap.push(Reverse(*i));
        }
        let mut residual = Vec::new();
        let mut coeffs = Vec::new();
        while let Some(Reverse(i)) = s.heap.pop() {
            s.queued[i] = false;
            let Some(val) = s.vals[i].take() else { continue };
            if k.is_zero(&val) {
                continue;
            }
            match self.pivot_of[i] {
                Some(b) => {
                    let b = b as usize;
                    for (j, x) in self.basis[b].iter().skip(1) {
                        let prod = k.mul(&val, x);
                        let slot = &mut s.vals[*j];
                        *slot = Some(match slot.take() {
                            Some(old) => k.sub(&old, &prod),
                            None => k.neg(&prod),
                        });
                        if !s.queued[*j] {
                            s.queued[*j] = true;
                            s.heap.push(Reverse(*j));
                        }
                    }
                    coeffs.push((b, val));
                }
                None => residual.push((i, val)),
            }
        }
        (residual, coeffs)
    }

    /// Inserts `v`; returns true if it enlarged the span. `tag` is the index
    /// recorded in the tracking vector (ignored when not tracking).
    fn insert_with(&mut self, k: &K, v: &[(usize, K::Elem)], tag: usize, s: &mut Scratch<K::Elem>) -> bool {
        let (residual, coeffs) = self.reduce(k, v, s);
        if residual.is_empty() {
            return false;
        }
        let lead_inv = k.inv(&residual[0].1);
        let pivot = residual[0].0;
        let vec: SparseVec<K::Elem> = residual.into_iter().map(|(i, c)| (i, k.mul(&lead_inv, &c))).collect();
        if let Some(tracks) = self.tracks.as_mut() {
            let mut t = vec![(tag, lead_inv.clone())];
            for (b, c) in &coeffs {
                let f = k.neg(&k.mul(c, &lead_inv));
                t.extend(tracks[*b].iter().map(|(i, x)| (*i, k.mul(&f, x))));
            }
            tracks.push(normalize(k, t));
        }
        self.pivot_of[pivot] = Some(self.basis.len() as u32);
        self.pivots.push(pivot);
        self.basis.push(vec);
        self.reduced = false;
        true
    }

    /// Inserts vectors in the given order.
    pub fn extend<'a, I>(&mut self, k: &K, vectors: I)
    where
        I: IntoIterator<Item = (usize, &'a [(usize, K::Elem)])>,
    {
        let mut s = Scratch::new(self.dim);
        for (tag, v) in vectors {
            self.insert_with(k, v, tag, &mut s);
        }
    }

    pub fn insert(&mut self, k: &K, v: &[(usize, K::Elem)]) -> bool {
        let mut s = Scratch::new(self.dim);
        let tag = self.basis.len();
        self.insert_with(k, v, tag, &mut s)
    }

    /// Brings the basis to reduced row echelon form: every basis vector is
    /// zero at every other pivot. Basis order becomes increasing pivot order.
    pub fn make_reduced(&mut self, k: &K) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.basis.len()).collect();
        order.sort_by_key(|&b| Reverse(self.pivots[b]));
        for &b in &order {
            let p = self.pivots[b];
            let mut terms: Vec<(usize, K::Elem)> = Vec::new();
            let mut track_terms: Vec<(usize, K::Elem)> = Vec::new();
            let mut touched = false;
            for (q, c) in self.basis[b].iter().skip(1) {
                if let Some(other) = self.pivot_of[*q] {
                    let other = other as usize;
                    debug_assert!(self.pivots[other] > p);
                    let f = k.neg(c);
                    terms.extend(self.basis[other].iter().map(|(i, x)| (*i, k.mul(&f, x))));
                    if let Some(tracks) = &self.tracks {
                        track_terms.extend(tracks[other].iter().map(|(i, x)| (*i, k.mul(&f, x))));
                    }
                    touched = true;
                }
            }
            if touched {
                terms.extend(self.basis[b].iter().cloned());
                self.basis[b] = normalize(k, terms);
                if let Some(tracks) = self.tracks.as_mut() {
                    track_terms.extend(tracks[b].iter().cloned());
                    tracks[b] = normalize(k, track_terms);
                }
            }
        }
        // renumber by pivot
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by_key(|&b| self.pivots[b]);
        let basis = idx.iter().map(|&b| std::mem::take(&mut self.basis[b])).collect();
        let pivots: Vec<usize> = idx.iter().map(|&b| self.pivots[b]).collect();
        if let Some(tracks) = self.tracks.as_mut() {
            *tracks = idx.iter().map(|&b| std::mem::take(&mut tracks[b])).collect();
        }
        self.basis = basis;
        for (b, &p) in pivots.iter().enumerate() {
            self.pivot_of[p] = Some(b as u32);
        }
        self.pivots = pivots;
        self.reduced = true;
    }

    pub fn contains(&self, k: &K, v: &[(usize, K::Elem)]) -> bool {
        let mut s = Scratch::new(self.dim);
        self.reduce(k, v, &mut s).0.is_empty()
    }
}

fn by_sparsity<E>(vectors: &[SparseVec<E>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&i| vectors[i].len());
    order
}

fn echelon_of<K: Field>(k: &K, dim: usize, vectors: &[SparseVec<K::Elem>]) -> Echelon<K> {
    let mut e = Echelon::new(dim, false);
    let order = by_sparsity(vectors);
    e.extend(k, order.iter().map(|&i| (i, vectors[i].as_slice())));
    e
}

/// Exact rank.
pub fn rank<K: Field>(k: &K, m: &SparseMatrix<K::Elem>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    if m.rows() < m.cols() {
        let rows = m.row_vectors();
        echelon_of(k, m.cols(), &rows).rank()
    } else {
        echelon_of(k, m.rows(), m.columns()).rank()
    }
}

/// Rank of a rational matrix reduced mod `p`; `None` if some denominator
/// vanishes mod `p`. A lower bound for the rational rank.
pub fn modular_rank(m: &SparseMatrix<Rational>, p: u64) -> Result<Option<usize>> {
    let fp = PrimeField::new(p)?;
    let mut cols = Vec::with_capacity(m.cols());
    for c in m.columns() {
        let mut out = Vec::with_capacity(c.len());
        for (i, v) in c {
            match fp.from_rational(v) {
                Ok(x) => out.push((*i, x)),
                Err(_) => return Ok(None),
            }
        }
        cols.push(out);
    }
    let reduced = SparseMatrix::from_columns(&fp, m.rows(), cols)?;
    Ok(Some(rank(&fp, &reduced)))
}

/// Reduced row echelon basis of the row space of `m`.
pub fn row_space<K: Field>(k: &K, m: &SparseMatrix<K::Elem>) -> Echelon<K> {
    let rows = m.row_vectors();
    let mut e = echelon_of(k, m.cols(), &rows);
    e.make_reduced(k);
    e
}

/// Basis of the null space: one vector per free column, equal to 1 there and
/// 0 at every other free column. Ordered by free column.
pub fn kernel_basis<K: Field>(k: &K, m: &SparseMatrix<K::Elem>) -> Vec<SparseVec<K::Elem>> {
    let n = m.cols();
    let rref = row_space(k, m);
    let mut by_col: Vec<Vec<(usize, K::Elem)>> = vec![Vec::new(); n];
    for (vec, &p) in rref.basis().iter().zip(rref.pivots()) {
        for (j, c) in vec.iter().skip(1) {
            by_col[*j].push((p, k.neg(c)));
        }
    }
    let is_pivot = {
        let mut flags = vec![false; n];
        for &p in rref.pivots() {
            flags[p] = true;
        }
        flags
    };
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = std::mem::take(&mut by_col[f]);
            v.push((f, k.one()));
            normalize(k, v)
        })
        .collect()
}

/// Reduced echelon basis of the column space, ordered by pivot.
pub fn image_basis<K: Field>(k: &K, m: &SparseMatrix<K::Elem>) -> Vec<SparseVec<K::Elem>> {
    let mut e = echelon_of(k, m.rows(), m.columns());
    e.make_reduced(k);
    e.basis
}

/// Order in which a [`Solver`] feeds columns to elimination. Different orders
/// select different particular solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    Sparsest,
    Reversed,
}

/// Repeated exact solves of `m x = v` against one factorization of `m`.
#[derive(Clone, Debug)]
pub struct Solver<K: Field> {
    rows: usize,
    cols: usize,
    echelon: Echelon<K>,
}

impl<K: Field> Solver<K> {
    pub fn new(k: &K, m: &SparseMatrix<K::Elem>) -> Self {
        Self::with_order(k, m, PivotOrder::Sparsest)
    }

    pub fn with_order(k: &K, m: &SparseMatrix<K::Elem>, order: PivotOrder) -> Self {
        let mut echelon = Echelon::new(m.rows(), true);
        let mut idx = by_sparsity(m.columns());
        if order == PivotOrder::Reversed {
            idx.reverse();
        }
        echelon.extend(k, idx.iter().map(|&j| (j, m.col(j))));
        Solver { rows: m.rows(), cols: m.cols(), echelon }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn solve(&self, k: &K, v: &[(usize, K::Elem)]) -> Result<Option<SparseVec<K::Elem>>> {
        if let Some((i, _)) = v.last() {
            if *i >= self.rows {
                return Err(Error::DimensionMismatch(format!(
                    "right-hand side index {i} but matrix has {} rows",
                    self.rows
                )));
            }
        }
        let mut s = Scratch::new(self.rows);
        let (residual, coeffs) = self.echelon.reduce(k, v, &mut s);
        if !residual.is_empty() {
            return Ok(None);
        }
        let tracks = self.echelon.tracks.as_ref().expect("solver tracks");
        let mut x = Vec::new();
        for (b, c) in coeffs {
            x.extend(tracks[b].iter().map(|(i, t)| (*i, k.mul(&c, t))));
        }
        let x = normalize(k, x);
        debug_assert!(x.last().is_none_or(|(i, _)| *i < self.cols));
        Ok(Some(x))
    }
}

/// Solves `m x = v`; `None` when `v` is not in the image.
pub fn solve<K: Field>(k: &K, m: &SparseMatrix<K::Elem>, v: &[(usize, K::Elem)]) -> Result<Option<SparseVec<K::Elem>>> {
    Solver::new(k, m).solve(k, v)
}

/// Dense-length variant of [`solve`] with the length precondition checked.
pub fn solve_dense<K: Field>(k: &K, m: &SparseMatrix<K::Elem>, v: &[K::Elem]) -> Result<Option<Vec<K::Elem>>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for {} rows", v.len(), m.rows())));
    }
    let sv = crate::sparse::dense_to_sparse(k, v);
    Ok(solve(k, m, &sv)?.map(|x| crate::sparse::sparse_to_dense(k, &x, m.cols())))
}

/// A subspace in reduced echelon form, with its canonical complement spanned
/// by the standard basis vectors at non-pivot positions.
#[derive(Clone, Debug)]
pub struct Subspace<K: Field> {
    ambient: usize,
    basis: Vec<SparseVec<K::Elem>>,
    pivots: Vec<usize>,
    pivot_slot: Vec<Option<usize>>,
    complement: Vec<usize>,
    complement_slot: Vec<Option<usize>>,
}

impl<K: Field> Subspace<K> {
    pub fn spanned_by(k: &K, ambient: usize, vectors: &[SparseVec<K::Elem>]) -> Self {
        let mut e = echelon_of(k, ambient, vectors);
        e.make_reduced(k);
        Self::from_reduced(ambient, e.basis, e.pivots)
    }

    pub fn image_of(k: &K, m: &SparseMatrix<K::Elem>) -> Self {
        Self::spanned_by(k, m.rows(), m.columns())
    }

    pub fn kernel_of(k: &K, m: &SparseMatrix<K::Elem>) -> Self {
        let kb = kernel_basis(k, m);
        Self::spanned_by(k, m.cols(), &kb)
    }

    fn from_reduced(ambient: usize, basis: Vec<SparseVec<K::Elem>>, pivots: Vec<usize>) -> Self {
        let mut pivot_slot = vec![None; ambient];
        for (b, &p) in pivots.iter().enumerate() {
            pivot_slot[p] = Some(b);
        }
        let complement: Vec<usize> = (0..ambient).filter(|&i| pivot_slot[i].is_none()).collect();
        let mut complement_slot = vec![None; ambient];
        for (s, &i) in complement.iter().enumerate() {
            complement_slot[i] = Some(s);
        }
        Subspace { ambient, basis, pivots, pivot_slot, complement, complement_slot }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<K::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Positions of the standard basis vectors spanning the complement.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Matrix whose columns are the basis vectors (the inclusion map).
    pub fn basis_matrix(&self) -> SparseMatrix<K::Elem> {
        SparseMatrix::from_normalized_columns(self.ambient, self.basis.clone())
    }

    /// `v` minus its component along the subspace; zero at every pivot.
    pub fn residual(&self, k: &K, v: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        let mut terms: Vec<(usize, K::Elem)> = v.to_vec();
        for (i, c) in v {
            if let Some(b) = self.pivot_slot[*i] {
                let f = k.neg(c);
                terms.extend(self.basis[b].iter().map(|(j, x)| (*j, k.mul(&f, x))));
            }
        }
        normalize(k, terms)
    }

    pub fn contains(&self, k: &K, v: &[(usize, K::Elem)]) -> bool {
        self.residual(k, v).is_empty()
    }

    /// Coordinates in the subspace basis, or `None` if `v` is not in it.
    pub fn coords(&self, k: &K, v: &[(usize, K::Elem)]) -> Option<SparseVec<K::Elem>> {
        if !self.contains(k, v) {
            return None;
        }
        Some(
            v.iter()
                .filter_map(|(i, c)| self.pivot_slot[*i].map(|b| (b, c.clone())))
                .collect::<Vec<_>>(),
        )
        .map(|mut c| {
            c.sort_by_key(|e| e.0);
            c
        })
    }

    /// Coordinates of the class of `v` in the quotient, in the complement basis.
    pub fn quotient_coords(&self, k: &K, v: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        self.residual(k, v)
            .into_iter()
            .map(|(i, c)| (self.complement_slot[i].expect("residual lives on the complement"), c))
            .collect()
    }

    /// Projection onto the quotient, as a `complement x ambient` matrix.
    pub fn projection(&self, k: &K) -> SparseMatrix<K::Elem> {
        crate::sparse::build_columns(k, self.complement.len(), self.ambient, |j| {
            self.quotient_coords(k, &[(j, k.one())])
        })
    }

    /// Inclusion of the complement, as an `ambient x complement` matrix.
    pub fn complement_inclusion(&self, k: &K) -> SparseMatrix<K::Elem> {
        SparseMatrix::from_normalized_columns(self.ambient, self.complement.iter().map(|&i| vec![(i, k.one())]).collect())
    }
}
