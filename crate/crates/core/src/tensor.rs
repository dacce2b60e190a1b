//! Bases of the triangular tensor spaces `A^{⊗p} ⊗ B^{⊗p(p-1)/2}`.
//!
//! A basis tensor has one `A` index per position `0..p` and one `B` index per
//! unordered pair of positions. The canonical linear order is mixed radix with
//! the `A` indices most significant (`a_0` first), followed by the `B` indices
//! with pairs in lexicographic order.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::SparseVec;
use crate::structure::Triple;

/// Default refusal threshold for the dimension of a single space.
pub const DEFAULT_CAP: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorShape {
    p: usize,
    dim_a: usize,
    dim_b: usize,
    /// `weights[s]` is the place value of slot `s` (a-slots first, then pairs).
    weights: Vec<u128>,
    dim: u128,
}

/// A basis tensor: `a[i]` indexes `A` at position `i`, `b[pair_index(i, j)]`
/// indexes `B` at pair `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorIndex {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Number of unordered pairs of `p` positions.
pub fn pair_count(p: usize) -> usize {
    p * p.saturating_sub(1) / 2
}

impl TensorShape {
    pub fn new(p: usize, dim_a: usize, dim_b: usize) -> Self {
        let slots = p + pair_count(p);
        let mut weights = vec![0u128; slots];
        let mut w: u128 = 1;
        let mut overflow = false;
        for s in (0..slots).rev() {
            weights[s] = w;
            let radix = if s < p { dim_a } else { dim_b } as u128;
            w = match w.checked_mul(radix) {
                Some(v) => v,
                None => {
                    overflow = true;
                    u128::MAX
                }
            };
        }
        TensorShape { p, dim_a, dim_b, weights, dim: if overflow { u128::MAX } else { w } }
    }

    pub fn positions(&self) -> usize {
        self.p
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn n_pairs(&self) -> usize {
        pair_count(self.p)
    }

    /// All pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n_pairs());
        for i in 0..self.p {
            for j in i + 1..self.p {
                out.push((i, j));
            }
        }
        out
    }

    /// Index of the unordered pair `{i, j}` in lexicographic order.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        debug_assert!(j < self.p && i != j);
        i * self.p - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Exact dimension, saturating at `u128::MAX`.
    pub fn dim_exact(&self) -> u128 {
        self.dim
    }

    /// Dimension, refusing shapes above `cap`.
    pub fn dim(&self, cap: u128) -> Result<usize> {
        if self.dim > cap || self.dim > usize::MAX as u128 {
            return Err(Error::DegreeTooLarge { dim: self.dim, cap });
        }
        Ok(self.dim as usize)
    }

    fn check_dim(&self) -> Result<usize> {
        if self.dim > usize::MAX as u128 {
            return Err(Error::DegreeTooLarge { dim: self.dim, cap: usize::MAX as u128 });
        }
        Ok(self.dim as usize)
    }

    /// Place value of slot `s`.
    pub fn weight(&self, slot: usize) -> usize {
        self.weights[slot] as usize
    }

    pub fn encode(&self, t: &TensorIndex) -> Result<usize> {
        self.check_dim()?;
        if t.a.len() != self.p || t.b.len() != self.n_pairs() {
            return Err(Error::DimensionMismatch(format!(
                "index with {} A-slots and {} B-slots for a shape with {} and {}",
                t.a.len(),
                t.b.len(),
                self.p,
                self.n_pairs()
            )));
        }
        if let Some(x) = t.a.iter().find(|&&x| x >= self.dim_a) {
            return Err(Error::OutOfRange(format!("A index {x} >= {}", self.dim_a)));
        }
        if let Some(x) = t.b.iter().find(|&&x| x >= self.dim_b) {
            return Err(Error::OutOfRange(format!("B index {x} >= {}", self.dim_b)));
        }
        Ok(self.encode_unchecked(t))
    }

    pub fn encode_unchecked(&self, t: &TensorIndex) -> usize {
        let mut n = 0;
        for (s, &x) in t.a.iter().chain(t.b.iter()).enumerate() {
            n += x * self.weights[s] as usize;
        }
        n
    }

    pub fn decode(&self, n: usize) -> Result<TensorIndex> {
        let d = self.check_dim()?;
        if n >= d {
            return Err(Error::OutOfRange(format!("index {n} in a space of dimension {d}")));
        }
        Ok(self.decode_unchecked(n))
    }

    pub fn decode_unchecked(&self, mut n: usize) -> TensorIndex {
        let mut a = vec![0; self.p];
        let mut b = vec![0; self.n_pairs()];
        for s in 0..self.weights.len() {
            let w = self.weights[s] as usize;
            let digit = n / w;
            n %= w;
            if s < self.p {
                a[s] = digit;
            } else {
                b[s - self.p] = digit;
            }
        }
        TensorIndex { a, b }
    }

    /// Expands a product of per-slot vectors (a-slots, then pairs) into a
    /// sparse vector in this space. Terms are appended to `out` scaled by `c`.
    pub fn expand_into<K: Field>(&self, k: &K, c: &K::Elem, slots: &[&[(usize, K::Elem)]], out: &mut Vec<(usize, K::Elem)>) {
        debug_assert_eq!(slots.len(), self.weights.len());
        if slots.iter().any(|s| s.is_empty()) || k.is_zero(c) {
            return;
        }
        // depth-first over the cartesian product
        let mut stack: Vec<(usize, usize, K::Elem)> = vec![(0, 0, c.clone())];
        while let Some((s, idx, coef)) = stack.pop() {
            if s == slots.len() {
                out.push((idx, coef));
                continue;
            }
            let w = self.weights[s] as usize;
            for (x, v) in slots[s] {
                stack.push((s + 1, idx + x * w, k.mul(&coef, v)));
            }
        }
    }
}

/// `dimA^p · dimB^{p(p-1)/2}`, refused above `cap`.
pub fn space_dim(shape: &TensorShape, cap: u128) -> Result<usize> {
    shape.dim(cap)
}

impl TensorIndex {
    pub fn zero(p: usize) -> Self {
        TensorIndex { a: vec![0; p], b: vec![0; pair_count(p)] }
    }

    pub fn positions(&self) -> usize {
        self.a.len()
    }

    /// The `B` index at the unordered pair `{i, j}`.
    pub fn pair(&self, i: usize, j: usize) -> usize {
        let p = self.a.len();
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.b[i * p - i * (i + 1) / 2 + (j - i - 1)]
    }
}

/// Position-level operations on basis tensors of a triple.
pub struct TensorOps<'t, K: Field> {
    pub triple: &'t Triple<K>,
}

impl<'t, K: Field> TensorOps<'t, K> {
    pub fn new(triple: &'t Triple<K>) -> Self {
        TensorOps { triple }
    }

    pub fn shape(&self, p: usize) -> TensorShape {
        TensorShape::new(p, self.triple.dim_a(), self.triple.dim_b())
    }

    fn k(&self) -> &K {
        self.triple.field()
    }

    /// Merges position `absorb` into position `keep`, appending the result,
    /// scaled by `c`, to `out` in the shape with one fewer position.
    ///
    /// The merged `A` entry is `a_keep a_absorb ε(b_{keep,absorb})`, or
    /// `a_absorb a_keep ε(b_{keep,absorb})` when `absorb_on_left`. Every other
    /// position `q` gets `b_{q,keep} b_{q,absorb}` at its pair with `keep`.
    pub fn merge_into(
        &self,
        t: &TensorIndex,
        keep: usize,
        absorb: usize,
        absorb_on_left: bool,
        c: &K::Elem,
        out: &mut Vec<(usize, K::Elem)>,
    ) {
        let k = self.k();
        let tr = self.triple;
        let p = t.positions();
        debug_assert!(keep != absorb && keep < p && absorb < p);
        let target = self.shape(p - 1);
        let (x, y) = if absorb_on_left { (t.a[absorb], t.a[keep]) } else { (t.a[keep], t.a[absorb]) };
        let merged = tr.a.mul_sparse(tr.a.basis_product(x, y), tr.epsilon(t.pair(keep, absorb)));
        // old position of each new position
        let old: Vec<usize> = (0..p).filter(|&q| q != absorb).collect();
        let unit_b = |i: usize| -> SparseVec<K::Elem> { vec![(i, k.one())] };
        let mut a_slots: Vec<SparseVec<K::Elem>> = Vec::with_capacity(p - 1);
        for &o in &old {
            a_slots.push(if o == keep { merged.clone() } else { vec![(t.a[o], k.one())] });
        }
        let mut b_slots: Vec<SparseVec<K::Elem>> = Vec::with_capacity(target.n_pairs());
        for i in 0..p - 1 {
            for j in i + 1..p - 1 {
                let (oi, oj) = (old[i], old[j]);
                b_slots.push(if oi == keep || oj == keep {
                    let other = if oi == keep { oj } else { oi };
                    tr.b.basis_product(t.pair(other, keep), t.pair(other, absorb)).to_vec()
                } else {
                    unit_b(t.pair(oi, oj))
                });
            }
        }
        let slots: Vec<&[(usize, K::Elem)]> = a_slots.iter().chain(b_slots.iter()).map(|v| v.as_slice()).collect();
        target.expand_into(k, c, &slots, out);
    }

    /// Inserts a new position at `pos` carrying the unit of `A`, with the unit
    /// of `B` on every pair involving it.
    pub fn insert_unit_into(&self, t: &TensorIndex, pos: usize, c: &K::Elem, out: &mut Vec<(usize, K::Elem)>) {
        let k = self.k();
        let tr = self.triple;
        let p = t.positions();
        debug_assert!(pos <= p);
        let target = self.shape(p + 1);
        // old position of each new position, None for the inserted one
        let old: Vec<Option<usize>> =
            (0..=p).map(|q| if q == pos { None } else if q < pos { Some(q) } else { Some(q - 1) }).collect();
        let mut slots: Vec<SparseVec<K::Elem>> = Vec::with_capacity(p + 1 + target.n_pairs());
        for o in &old {
            slots.push(match o {
                Some(o) => vec![(t.a[*o], k.one())],
                None => tr.a.unit().to_vec(),
            });
        }
        for i in 0..=p {
            for j in i + 1..=p {
                slots.push(match (old[i], old[j]) {
                    (Some(x), Some(y)) => vec![(t.pair(x, y), k.one())],
                    _ => tr.b.unit().to_vec(),
                });
            }
        }
        let refs: Vec<&[(usize, K::Elem)]> = slots.iter().map(|v| v.as_slice()).collect();
        target.expand_into(k, c, &refs, out);
    }

    /// Relabels positions: new position `q` carries old position `perm[q]`,
    /// with `B` entries following their unordered pairs.
    pub fn permute(&self, t: &TensorIndex, perm: &[usize]) -> TensorIndex {
        let p = t.positions();
        let a = perm.iter().map(|&o| t.a[o]).collect();
        let mut b = Vec::with_capacity(pair_count(p));
        for i in 0..p {
            for j in i + 1..p {
                b.push(t.pair(perm[i], perm[j]));
            }
        }
        TensorIndex { a, b }
    }

    /// Restriction to a contiguous run of positions `from..to`, with the
    /// dropped positions' entries discarded.
    pub fn restrict(&self, t: &TensorIndex, from: usize, to: usize) -> TensorIndex {
        let a = t.a[from..to].to_vec();
        let mut b = Vec::with_capacity(pair_count(to - from));
        for i in from..to {
            for j in i + 1..to {
                b.push(t.pair(i, j));
            }
        }
        TensorIndex { a, b }
    }
}
