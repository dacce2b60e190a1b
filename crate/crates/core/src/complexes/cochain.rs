use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::{build_columns, SparseMatrix, SparseVec};
use crate::structure::{Bimodule, Triple};
use crate::tensor::TensorShape;

use super::{geometric_sum, ChainComplex, Direction};

/// The triangular-matrix picture of a tensor: `cell(i, i)` is the `A` entry
/// `a_i`, `cell(i, j)` for `i < j` the `B` entry `b_{i,j}`. Entries are
/// vectors, so rows and columns can be merged.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<E> {
    size: usize,
    cells: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> Grid<E> {
    fn at(size: usize, i: usize, j: usize) -> usize {
        i * size + j
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn cell(&self, i: usize, j: usize) -> &[(usize, E)] {
        &self.cells[Self::at(self.size, i, j)]
    }

    fn blank(size: usize) -> Self {
        Grid { size, cells: vec![Vec::new(); size * size] }
    }

    fn set(&mut self, i: usize, j: usize, v: SparseVec<E>) {
        let s = self.size;
        self.cells[Self::at(s, i, j)] = v;
    }
}

impl<E: Clone + PartialEq> Grid<E> {
    pub fn from_basis<K: Field<Elem = E>>(k: &K, shape: &TensorShape, idx: usize) -> Self {
        let t = shape.decode_unchecked(idx);
        let size = shape.positions();
        let mut g = Grid::blank(size);
        for i in 0..size {
            g.set(i, i, vec![(t.a[i], k.one())]);
            for j in i + 1..size {
                g.set(i, j, vec![(t.pair(i, j), k.one())]);
            }
        }
        g
    }

    /// Rows and columns `from..to`.
    pub fn block(&self, from: usize, to: usize) -> Self {
        let mut g = Grid::blank(to - from);
        for i in from..to {
            for j in i..to {
                g.set(i - from, j - from, self.cell(i, j).to_vec());
            }
        }
        g
    }

    /// Merges row/column `r + 1` into `r`: the diagonal becomes
    /// `a_r a_{r+1} ε(b_{r,r+1})`, entries above it `b_{q,r} b_{q,r+1}`,
    /// entries to its right `b_{r,q} b_{r+1,q}`.
    pub fn merge_adjacent<K: Field<Elem = E>>(&self, t: &Triple<K>, r: usize) -> Self {
        let n = self.size;
        let old = |q: usize| if q <= r { q } else { q + 1 };
        let mut g = Grid::blank(n - 1);
        for i in 0..n - 1 {
            for j in i..n - 1 {
                let v = if i == r && j == r {
                    let prod = t.a.mul_sparse(self.cell(r, r), self.cell(r + 1, r + 1));
                    t.a.mul_sparse(&prod, &t.epsilon_of(self.cell(r, r + 1)))
                } else if j == r {
                    t.b.mul_sparse(self.cell(i, r), self.cell(i, r + 1))
                } else if i == r {
                    t.b.mul_sparse(self.cell(r, old(j)), self.cell(r + 1, old(j)))
                } else {
                    self.cell(old(i), old(j)).to_vec()
                };
                g.set(i, j, v);
            }
        }
        g
    }

    /// The wrap-around face: the last row/column folds into the first, giving
    /// `a_last a_0 ε(b_{0,last})` and first-row entries `b_{i,last} b_{0,i}`.
    pub fn wrap<K: Field<Elem = E>>(&self, t: &Triple<K>) -> Self {
        let n = self.size;
        let last = n - 1;
        let mut g = self.block(0, last);
        let a = t.a.mul_sparse(self.cell(last, last), self.cell(0, 0));
        g.set(0, 0, t.a.mul_sparse(&a, &t.epsilon_of(self.cell(0, last))));
        for i in 1..last {
            g.set(0, i, t.b.mul_sparse(self.cell(i, last), self.cell(0, i)));
        }
        g
    }

    /// The cyclic rotation: the last row/column moves to the front.
    pub fn rotate(&self) -> Self {
        let n = self.size;
        let last = n - 1;
        let mut g = Grid::blank(n);
        g.set(0, 0, self.cell(last, last).to_vec());
        for j in 1..n {
            g.set(0, j, self.cell(j - 1, last).to_vec());
            for i in 1..=j {
                g.set(i, j, self.cell(i - 1, j - 1).to_vec());
            }
        }
        g
    }

    /// Appends a last row/column of units.
    pub fn append_unit<K: Field<Elem = E>>(&self, t: &Triple<K>) -> Self {
        let n = self.size;
        let mut g = Grid::blank(n + 1);
        for i in 0..n {
            for j in i..n {
                g.set(i, j, self.cell(i, j).to_vec());
            }
            g.set(i, n, t.b.unit().to_vec());
        }
        g.set(n, n, t.a.unit().to_vec());
        g
    }

    /// Product of the entries `b_{i,j}` over the given pairs, in `B`.
    pub fn b_product<K: Field<Elem = E>>(&self, t: &Triple<K>, pairs: impl Iterator<Item = (usize, usize)>) -> SparseVec<E> {
        let mut acc = t.b.unit().to_vec();
        for (i, j) in pairs {
            acc = t.b.mul_sparse(&acc, self.cell(i, j));
        }
        acc
    }

    /// Expands the grid into canonical tensor coordinates, scaled by `c`.
    pub fn flatten_into<K: Field<Elem = E>>(&self, k: &K, shape: &TensorShape, c: &E, out: &mut Vec<(usize, E)>) {
        let n = self.size;
        let mut slots: Vec<&[(usize, E)]> = (0..n).map(|i| self.cell(i, i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                slots.push(self.cell(i, j));
            }
        }
        shape.expand_into(k, c, &slots, out);
    }
}

fn sign<K: Field>(k: &K, i: usize) -> K::Elem {
    if i.is_multiple_of(2) {
        k.one()
    } else {
        k.neg(&k.one())
    }
}

/// Builds a `rows x cols` matrix whose row `r` is returned by `row(r)`.
fn by_rows<K, F>(k: &K, rows: usize, cols: usize, row: F) -> SparseMatrix<K::Elem>
where
    K: Field,
    F: Fn(usize) -> Vec<(usize, K::Elem)> + Sync + Send,
{
    build_columns(k, cols, rows, row).transpose()
}

/// Operators on `C^n = Hom(A^{⊗(n+1)} ⊗ B^{⊗n(n+1)/2}, k)`, written against
/// the functional: `(Xφ)(T)` for each basis tensor `T`.
pub struct CochainOps<'t, K: Field> {
    t: &'t Triple<K>,
    cap: u128,
}

impl<'t, K: Field> CochainOps<'t, K> {
    pub fn new(t: &'t Triple<K>, cap: u128) -> Self {
        CochainOps { t, cap }
    }

    fn k(&self) -> &K {
        self.t.field()
    }

    pub fn shape(&self, n: usize) -> TensorShape {
        TensorShape::new(n + 1, self.t.dim_a(), self.t.dim_b())
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        self.shape(n).dim(self.cap)
    }

    fn coboundary(&self, n: usize, wrap: bool) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let (src, dst) = (self.shape(n), self.shape(n + 1));
        let (cols, rows) = (self.dim(n)?, self.dim(n + 1)?);
        Ok(by_rows(k, rows, cols, |r| {
            let g = Grid::from_basis(k, &dst, r);
            let mut out = Vec::new();
            for i in 0..=n {
                g.merge_adjacent(self.t, i).flatten_into(k, &src, &sign(k, i), &mut out);
            }
            if wrap {
                g.wrap(self.t).flatten_into(k, &src, &sign(k, n + 1), &mut out);
            }
            out
        }))
    }

    /// `b: C^n -> C^{n+1}`.
    pub fn b(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.coboundary(n, true)
    }

    /// `b′`: the first `n + 1` terms of `b`.
    pub fn b_prime(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.coboundary(n, false)
    }

    /// `(λφ)(T) = (-1)^n φ(rotated T)`.
    pub fn lambda(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let shape = self.shape(n);
        let d = self.dim(n)?;
        let s = sign(k, n);
        Ok(by_rows(k, d, d, |r| {
            let mut out = Vec::new();
            Grid::from_basis(k, &shape, r).rotate().flatten_into(k, &shape, &s, &mut out);
            out
        }))
    }

    /// The right action `φλ = λ^n φ`.
    pub fn lambda_right(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.lambda(n)?.pow(self.k(), n as u32)
    }

    /// `N = 1 + λ + ... + λ^n`.
    pub fn norm(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        geometric_sum(self.k(), &self.lambda(n)?, n)
    }

    /// `(s_n f)(T) = (-1)^{n-1} f(T with a unit row and column appended)`,
    /// `s_n: C^n -> C^{n-1}`.
    pub fn s_homotopy(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        if n == 0 {
            return Err(Error::InvalidOperator("s_homotopy starts at degree 1".into()));
        }
        let k = self.k();
        let (src, dst) = (self.shape(n), self.shape(n - 1));
        let (cols, rows) = (self.dim(n)?, self.dim(n - 1)?);
        let s = sign(k, n - 1);
        Ok(by_rows(k, rows, cols, |r| {
            let mut out = Vec::new();
            Grid::from_basis(k, &dst, r).append_unit(self.t).flatten_into(k, &src, &s, &mut out);
            out
        }))
    }

    /// `(C^•, b)` in degrees `0..=top`.
    pub fn complex(&self, top: usize) -> Result<ChainComplex<K>> {
        self.complex_with(top, true)
    }

    /// `(C^•, b′)` in degrees `0..=top`.
    pub fn prime_complex(&self, top: usize) -> Result<ChainComplex<K>> {
        self.complex_with(top, false)
    }

    fn complex_with(&self, top: usize, wrap: bool) -> Result<ChainComplex<K>> {
        let dims = (0..=top).map(|n| self.dim(n)).collect::<Result<Vec<_>>>()?;
        let maps = (0..top).map(|n| self.coboundary(n, wrap)).collect::<Result<Vec<_>>>()?;
        let label = if wrap { "C^•(A,B,ε), b" } else { "C^•(A,B,ε), b′" };
        let c = ChainComplex::new(self.k(), Direction::Cohomological, label, dims, maps)?;
        c.ensure_d_squared_zero()?;
        Ok(c)
    }
}

/// `(C^•(A,B,ε), b)` in degrees `0..=top`; `d∘d = 0` is checked.
pub fn triple_cochain_complex<K: Field>(t: &Triple<K>, top: usize, cap: u128) -> Result<ChainComplex<K>> {
    CochainOps::new(t, cap).complex(top)
}

/// The secondary cochain complex `Hom(A^{⊗n} ⊗ B^{⊗n(n-1)/2}, M)` with basis
/// index `tensor * dim M + m`, in degrees `0..=top`.
pub fn secondary_cochain_complex<K: Field>(t: &Triple<K>, m: &Bimodule<K>, top: usize, cap: u128) -> Result<ChainComplex<K>> {
    let k = t.field();
    let dm = m.dim();
    let shape = |n: usize| TensorShape::new(n, t.dim_a(), t.dim_b());
    let dim = |n: usize| -> Result<usize> {
        let total = shape(n).dim(cap)? as u128 * dm as u128;
        if total > cap {
            return Err(Error::DegreeTooLarge { dim: total, cap });
        }
        Ok(total as usize)
    };
    let dims = (0..=top).map(dim).collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(top);
    for n in 0..top {
        let (src, dst) = (shape(n), shape(n + 1));
        let mat = by_rows(k, dims[n + 1], dims[n], |row| {
            let (r, mo) = (row / dm, row % dm);
            let g = Grid::from_basis(k, &dst, r);
            let mut out = Vec::new();
            // a_0 ε(b_{0,1} ... b_{0,n}) f(rows 1..=n)
            let x = t.a.mul_sparse(g.cell(0, 0), &t.epsilon_of(&g.b_product(t, (1..=n).map(|j| (0, j)))));
            let mut tail = Vec::new();
            g.block(1, n + 1).flatten_into(k, &src, &k.one(), &mut tail);
            let (tail_idx, _) = tail[0].clone();
            for mi in 0..dm {
                if let Some((_, c)) = m.act_left(&x, &[(mi, k.one())]).into_iter().find(|(o, _)| *o == mo) {
                    out.push((tail_idx * dm + mi, c));
                }
            }
            // Σ (-1)^i f(rows i-1 and i merged)
            for i in 1..=n {
                let mut merged = Vec::new();
                g.merge_adjacent(t, i - 1).flatten_into(k, &src, &sign(k, i), &mut merged);
                out.extend(merged.into_iter().map(|(v, c)| (v * dm + mo, c)));
            }
            // (-1)^{n+1} f(rows 0..n) a_n ε(b_{0,n} ... b_{n-1,n})
            let y = t.a.mul_sparse(g.cell(n, n), &t.epsilon_of(&g.b_product(t, (0..n).map(|i| (i, n)))));
            let mut head = Vec::new();
            g.block(0, n).flatten_into(k, &src, &k.one(), &mut head);
            let (head_idx, _) = head[0].clone();
            let s = sign(k, n + 1);
            for mi in 0..dm {
                if let Some((_, c)) = m.act_right(&[(mi, k.one())], &y).into_iter().find(|(o, _)| *o == mo) {
                    out.push((head_idx * dm + mi, k.mul(&s, &c)));
                }
            }
            out
        });
        maps.push(mat);
    }
    let c = ChainComplex::new(k, Direction::Cohomological, "C^•((A,B,ε);M)", dims, maps)?;
    c.ensure_d_squared_zero()?;
    Ok(c)
}
