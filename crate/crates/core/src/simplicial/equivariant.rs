//! Equivariant maps `B_n -> ℋ^n` and their identification with cochains.

use rayon::prelude::*;

use super::families::{build_bar_family, build_coefficient_family, build_simplicial_algebra, CoefficientKind};
use super::{Radix, SimplicialFamily};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::kernel_basis;
use crate::sparse::{normalize, SparseMatrix, SparseVec};
use crate::structure::Triple;
use crate::tensor::{TensorOps, TensorShape};

/// A basis of `Hom_{A_n}(B_n, ℋ^n)`, each map a `dim ℋ^n × dim B_n` matrix.
#[derive(Clone, Debug)]
pub struct EquivariantHom<K: Field> {
    pub n: usize,
    pub basis: Vec<SparseMatrix<K::Elem>>,
    pub source_dim: usize,
    pub target_dim: usize,
}

/// Solves `F(u·x) = u·F(x)` over all basis `u ∈ A_n`, `x ∈ B_n`.
pub fn equivariant_hom_basis<K: Field>(t: &Triple<K>, n: usize, cap: u128) -> Result<EquivariantHom<K>> {
    let k = t.field();
    let (bar, bar_act) = build_bar_family(t, n, cap)?;
    let (h, h_act) = build_coefficient_family(t, None, CoefficientKind::H, n, cap)?;
    let alg = build_simplicial_algebra(t, n, cap)?;
    let (db, dh, da) = (bar.dim(n), h.dim(n), alg.dim(n));
    let unknowns = (db as u128) * (dh as u128);
    if unknowns > cap {
        return Err(Error::DegreeTooLarge { dim: unknowns, cap });
    }
    let var = |hh: usize, y: usize| hh * db + y;
    let equations: Vec<SparseVec<K::Elem>> = (0..da)
        .into_par_iter()
        .flat_map_iter(|u| {
            let hu: Vec<SparseVec<K::Elem>> = (0..dh).map(|hh| h_act.act(n, u, hh)).collect();
            let mut eqs = Vec::new();
            for x in 0..db {
                let ux = bar_act.act(n, u, x);
                let mut rows: Vec<Vec<(usize, K::Elem)>> = vec![Vec::new(); dh];
                for (hh, row) in rows.iter_mut().enumerate() {
                    row.extend(ux.iter().map(|(y, c)| (var(hh, *y), c.clone())));
                }
                for (h2, col) in hu.iter().enumerate() {
                    for (hh, c) in col {
                        rows[*hh].push((var(h2, x), k.neg(c)));
                    }
                }
                eqs.extend(rows.into_iter().map(|r| normalize(k, r)).filter(|r| !r.is_empty()));
            }
            eqs
        })
        .collect();
    let system = SparseMatrix::from_normalized_columns(unknowns as usize, equations).transpose();
    let basis = kernel_basis(k, &system)
        .into_iter()
        .map(|v| {
            let mut cols = vec![Vec::new(); db];
            for (idx, c) in v {
                cols[idx % db].push((idx / db, c));
            }
            SparseMatrix::from_normalized_columns(dh, cols)
        })
        .collect();
    Ok(EquivariantHom { n, basis, source_dim: db, target_dim: dh })
}

/// Dimension of `Hom_{A_n}(B_n, ℋ^n)`.
pub fn equivariant_hom_dim<K: Field>(t: &Triple<K>, n: usize, cap: u128) -> Result<usize> {
    Ok(equivariant_hom_basis(t, n, cap)?.basis.len())
}

/// `Ψ_n(F)` as a cochain on `A^{⊗(n+1)} ⊗ B^{⊗n(n+1)/2}`:
/// `F` is evaluated on the bar element with units at positions `0` and
/// `n + 1` and on the pairs touching them, then read at
/// `a_0 ⊗ b_{0,1} ⊗ … ⊗ b_{0,n}`.
pub fn psi<K: Field>(t: &Triple<K>, n: usize, f: &SparseMatrix<K::Elem>) -> Result<SparseVec<K::Elem>> {
    let k = t.field();
    let ops = TensorOps::new(t);
    let (src, bar): (TensorShape, TensorShape) = (ops.shape(n + 1), ops.shape(n + 2));
    let dc = src.dim(u128::MAX)?;
    let db = bar.dim(u128::MAX)?;
    let mut radices = vec![t.dim_a()];
    radices.extend(std::iter::repeat_n(t.dim_b(), n));
    let l = Radix::new(radices, u128::MAX)?;
    if f.shape() != (l.size(), db) {
        return Err(Error::DimensionMismatch(format!("Ψ_{n} of a {:?} matrix", f.shape())));
    }
    let p = n + 2;
    let out: Vec<(usize, K::Elem)> = (0..dc)
        .into_par_iter()
        .filter_map(|c| {
            let x = src.decode_unchecked(c);
            let mut slots: Vec<SparseVec<K::Elem>> = Vec::with_capacity(p + bar.n_pairs());
            for q in 0..p {
                slots.push(if q == 0 || q == p - 1 { t.a.unit().to_vec() } else { vec![(x.a[q], k.one())] });
            }
            for i in 0..p {
                for j in i + 1..p {
                    slots.push(if i == 0 || j == p - 1 { t.b.unit().to_vec() } else { vec![(x.pair(i, j), k.one())] });
                }
            }
            let refs: Vec<&[(usize, K::Elem)]> = slots.iter().map(|v| v.as_slice()).collect();
            let mut v = Vec::new();
            bar.expand_into(k, &k.one(), &refs, &mut v);
            let w = f.mul_vec(k, &normalize(k, v));
            let mut at = vec![x.a[0]];
            at.extend((1..=n).map(|j| x.pair(0, j)));
            let target = l.encode(&at);
            w.into_iter().find(|(i, _)| *i == target).map(|(_, coef)| (c, coef))
        })
        .collect();
    Ok(normalize(k, out))
}

/// `∂F = Σ_i (-1)^i δ^i_ℋ F δ_i^ℬ` for `F: B_n -> ℋ^n`. Both families must
/// reach degree `n + 1`.
pub fn coboundary_of_equivariant<K: Field>(
    k: &K,
    bar: &SimplicialFamily<K>,
    h: &SimplicialFamily<K>,
    n: usize,
    f: &SparseMatrix<K::Elem>,
) -> Result<SparseMatrix<K::Elem>> {
    let mut acc = SparseMatrix::zero(h.dim(n + 1), bar.dim(n + 1));
    for i in 0..=n + 1 {
        let coface = h.face(n, i).ok_or_else(|| Error::OutOfRange(format!("no coface ({n}, {i})")))?;
        let face = bar.face(n + 1, i).ok_or_else(|| Error::OutOfRange(format!("no face ({}, {i})", n + 1)))?;
        let term = coface.mul(k, &f.mul(k, face)?)?;
        acc = if i % 2 == 0 { acc.add(k, &term)? } else { acc.sub(k, &term)? };
    }
    Ok(acc)
}
