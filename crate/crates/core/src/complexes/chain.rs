use crate::error::Result;
use crate::field::Field;
use crate::sparse::{build_columns, SparseMatrix, SparseVec};
use crate::structure::{Bimodule, Triple};
use crate::tensor::{TensorOps, TensorShape};

use super::{geometric_sum, one_minus, ChainComplex, Direction};

fn sign<K: Field>(k: &K, i: usize) -> K::Elem {
    if i.is_multiple_of(2) {
        k.one()
    } else {
        k.neg(&k.one())
    }
}

/// Operators on `C_n = A^{⊗(n+1)} ⊗ B^{⊗n(n+1)/2}`.
pub struct ChainOps<'t, K: Field> {
    ops: TensorOps<'t, K>,
    cap: u128,
}

impl<'t, K: Field> ChainOps<'t, K> {
    pub fn new(t: &'t Triple<K>, cap: u128) -> Self {
        ChainOps { ops: TensorOps::new(t), cap }
    }

    fn k(&self) -> &K {
        self.ops.triple.field()
    }

    pub fn shape(&self, n: usize) -> TensorShape {
        self.ops.shape(n + 1)
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        self.shape(n).dim(self.cap)
    }

    fn faces(&self, n: usize, wrap: bool) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let cols = self.dim(n)?;
        if n == 0 {
            return Ok(SparseMatrix::zero(0, cols));
        }
        let rows = self.dim(n - 1)?;
        let shape = self.shape(n);
        Ok(build_columns(k, rows, cols, |j| {
            let t = shape.decode_unchecked(j);
            let mut out = Vec::new();
            for i in 0..n {
                self.ops.merge_into(&t, i, i + 1, false, &sign(k, i), &mut out);
            }
            if wrap {
                self.ops.merge_into(&t, 0, n, true, &sign(k, n), &mut out);
            }
            out
        }))
    }

    /// `b: C_n -> C_{n-1}`.
    pub fn b(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.faces(n, true)
    }

    /// `b′`: the terms of `b` without the wrap-around face.
    pub fn b_prime(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.faces(n, false)
    }

    /// Signed cyclic relabeling: position 0 receives old position `n`.
    pub fn lambda(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let d = self.dim(n)?;
        let shape = self.shape(n);
        let perm: Vec<usize> = (0..=n).map(|q| (q + n) % (n + 1)).collect();
        let s = sign(k, n);
        Ok(build_columns(k, d, d, |j| {
            let t = shape.decode_unchecked(j);
            vec![(shape.encode_unchecked(&self.ops.permute(&t, &perm)), s.clone())]
        }))
    }

    /// `N = 1 + λ + ... + λ^n`.
    pub fn norm(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        geometric_sum(self.k(), &self.lambda(n)?, n)
    }

    /// `t: C_{n-1} -> C_n`, prepending a unit position.
    pub fn t_shift(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let (rows, cols) = (self.dim(n)?, self.dim(n - 1)?);
        let shape = self.shape(n - 1);
        Ok(build_columns(k, rows, cols, |j| {
            let mut out = Vec::new();
            self.ops.insert_unit_into(&shape.decode_unchecked(j), 0, &k.one(), &mut out);
            out
        }))
    }

    /// `N t (1 - λ): C_n -> C_{n+1}`, as printed.
    pub fn connes_b(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let l = one_minus(k, &self.lambda(n)?)?;
        self.norm(n + 1)?.mul(k, &self.t_shift(n + 1)?)?.mul(k, &l)
    }

    /// `(1 - λ) t N: C_n -> C_{n+1}`.
    pub fn connes_b_reversed(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let l = one_minus(k, &self.lambda(n + 1)?)?;
        l.mul(k, &self.t_shift(n + 1)?)?.mul(k, &self.norm(n)?)
    }

    /// `(C_•, b)` in degrees `0..=top`.
    pub fn complex(&self, top: usize) -> Result<ChainComplex<K>> {
        self.complex_with(top, true)
    }

    /// `(C_•, b′)` in degrees `0..=top`.
    pub fn prime_complex(&self, top: usize) -> Result<ChainComplex<K>> {
        self.complex_with(top, false)
    }

    fn complex_with(&self, top: usize, wrap: bool) -> Result<ChainComplex<K>> {
        let dims = (0..=top).map(|n| self.dim(n)).collect::<Result<Vec<_>>>()?;
        let maps = (1..=top).map(|n| self.faces(n, wrap)).collect::<Result<Vec<_>>>()?;
        let label = if wrap { "C_•(A,B,ε), b" } else { "C_•(A,B,ε), b′" };
        let c = ChainComplex::new(self.k(), Direction::Homological, label, dims, maps)?;
        c.ensure_d_squared_zero()?;
        Ok(c)
    }
}

/// `(C_•(A,B,ε), b)` through degree `top`; `d∘d = 0` is checked.
pub fn triple_chain_complex<K: Field>(t: &Triple<K>, top: usize, cap: u128) -> Result<ChainComplex<K>> {
    ChainOps::new(t, cap).complex(top)
}

fn b_product<K: Field>(t: &Triple<K>, idx: impl Iterator<Item = usize>) -> SparseVec<K::Elem> {
    let mut acc = t.b.unit().to_vec();
    for i in idx {
        acc = t.b.mul_sparse(&acc, &[(i, t.field().one())]);
    }
    acc
}

/// The secondary chain complex `M ⊗ A^{⊗n} ⊗ B^{⊗n(n-1)/2}` with basis index
/// `tensor * dim M + m`, through degree `top`.
pub fn secondary_chain_complex<K: Field>(t: &Triple<K>, m: &Bimodule<K>, top: usize, cap: u128) -> Result<ChainComplex<K>> {
    let k = t.field();
    let ops = TensorOps::new(t);
    let dm = m.dim();
    let dim = |n: usize| -> Result<usize> {
        let d = ops.shape(n).dim(cap)?;
        let total = d as u128 * dm as u128;
        if total > cap {
            return Err(crate::error::Error::DegreeTooLarge { dim: total, cap });
        }
        Ok(total as usize)
    };
    let dims = (0..=top).map(dim).collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(top);
    for n in 1..=top {
        let shape = ops.shape(n);
        let lower = ops.shape(n - 1);
        let mat = build_columns(k, dims[n - 1], dims[n], |col| {
            let (j, mi) = (col / dm, col % dm);
            let x = shape.decode_unchecked(j);
            let e = [(mi, k.one())];
            let mut out = Vec::new();
            // m a_0 ε(b_{0,1} ... b_{0,n-1}) ⊗ positions 1..n
            let first = t.a.mul_sparse(&[(x.a[0], k.one())], &t.epsilon_of(&b_product(t, (1..n).map(|q| x.pair(0, q)))));
            let rest = lower.encode_unchecked(&ops.restrict(&x, 1, n)) * dm;
            for (mo, c) in m.act_right(&e, &first) {
                out.push((rest + mo, c));
            }
            // interior merges
            let mut merged = Vec::new();
            for i in 1..n {
                ops.merge_into(&x, i - 1, i, false, &sign(k, i), &mut merged);
            }
            for (v, c) in merged {
                out.push((v * dm + mi, c));
            }
            // (-1)^n a_{n-1} m ε(b_{0,n-1} ... b_{n-2,n-1}) ⊗ positions 0..n-1
            let eps = t.epsilon_of(&b_product(t, (0..n - 1).map(|q| x.pair(q, n - 1))));
            let lm = m.act_right(&m.act_left(&[(x.a[n - 1], k.one())], &e), &eps);
            let head = lower.encode_unchecked(&ops.restrict(&x, 0, n - 1)) * dm;
            let s = sign(k, n);
            for (mo, c) in lm {
                out.push((head + mo, k.mul(&s, &c)));
            }
            out
        });
        maps.push(mat);
    }
    let c = ChainComplex::new(k, Direction::Homological, "C_•((A,B,ε);M)", dims, maps)?;
    c.ensure_d_squared_zero()?;
    Ok(c)
}
