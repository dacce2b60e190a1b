//! Graded complexes, chain maps, and the builders for every complex and
//! operator attached to a triple.
//!
//! Chain-side matrices are assembled column by column from position-level
//! tensor operations; cochain-side matrices are assembled row by row from the
//! triangular-matrix picture of a basis tensor. The two routes share only the
//! basis enumeration, so agreement between them is a genuine cross-check.

mod chain;
mod cochain;
mod cyclic;

pub use chain::{secondary_chain_complex, triple_chain_complex, ChainOps};
pub use cochain::{secondary_cochain_complex, triple_cochain_complex, CochainOps, Grid};
pub use cyclic::{
    cyclic_bicomplex, cyclic_quotient_complex, cyclic_subcomplex, quotient_by, restrict_to, Bicomplex, CandidateOutcome,
    CyclicBicomplex, QuotientComplex, SubComplex,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::sparse::SparseMatrix;
use crate::structure::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `d: C_n -> C_{n-1}`
    Homological,
    /// `d: C^n -> C^{n+1}`
    Cohomological,
}

/// A finite window of a complex: spaces in degrees `0..=top` and every
/// differential between them.
#[derive(Clone, Debug)]
pub struct ChainComplex<K: Field> {
    k: K,
    pub direction: Direction,
    pub label: String,
    dims: Vec<usize>,
    /// `maps[i]` joins degrees `i` and `i + 1`: `C_{i+1} -> C_i` when
    /// homological, `C^i -> C^{i+1}` when cohomological.
    maps: Vec<SparseMatrix<K::Elem>>,
    /// The spaces beyond `top` are zero, so no degree is cut off.
    closed: bool,
}

impl<K: Field> ChainComplex<K> {
    /// `maps[i]` joins degrees `i` and `i + 1` in the complex's direction.
    pub fn new(k: &K, direction: Direction, label: impl Into<String>, dims: Vec<usize>, maps: Vec<SparseMatrix<K::Elem>>) -> Result<Self> {
        let label = label.into();
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch(format!("{label}: {} spaces but {} maps", dims.len(), maps.len())));
        }
        for (i, m) in maps.iter().enumerate() {
            let want = match direction {
                Direction::Homological => (dims[i], dims[i + 1]),
                Direction::Cohomological => (dims[i + 1], dims[i]),
            };
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!("{label}: map {i} is {:?}, expected {:?}", m.shape(), want)));
            }
        }
        Ok(ChainComplex { k: k.clone(), direction, label, dims, maps, closed: false })
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    /// Declares the complex complete: the spaces past `top` are zero.
    pub fn closed(mut self) -> Self {
        self.closed = true;
        self
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.k.spec()
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// The map joining degrees `i` and `i + 1`.
    pub fn link(&self, i: usize) -> Option<&SparseMatrix<K::Elem>> {
        self.maps.get(i)
    }

    /// Differential leaving degree `n`, if it lies inside the window. Degree 0
    /// of a homological complex maps to the zero space.
    pub fn d_out(&self, n: usize) -> Option<SparseMatrix<K::Elem>> {
        match self.direction {
            Direction::Homological if n == 0 => Some(SparseMatrix::zero(0, self.dim(0))),
            Direction::Homological => self.maps.get(n - 1).cloned(),
            Direction::Cohomological if n == self.top() && self.closed => Some(SparseMatrix::zero(0, self.dim(n))),
            Direction::Cohomological => self.maps.get(n).cloned(),
        }
    }

    /// Differential arriving at degree `n`, if it lies inside the window.
    pub fn d_in(&self, n: usize) -> Option<SparseMatrix<K::Elem>> {
        match self.direction {
            Direction::Homological if n == self.top() && self.closed => Some(SparseMatrix::zero(self.dim(n), 0)),
            Direction::Homological => self.maps.get(n).cloned(),
            Direction::Cohomological if n == 0 => Some(SparseMatrix::zero(self.dim(0), 0)),
            Direction::Cohomological => self.maps.get(n - 1).cloned(),
        }
    }

    /// Whether both differentials at `n` are inside the window, so that the
    /// homology there is exact rather than a bound.
    pub fn windowed(&self, n: usize) -> bool {
        n <= self.top() && self.d_out(n).is_some() && self.d_in(n).is_some()
    }

    /// Degrees at which a composite `d ∘ d` fails to vanish.
    pub fn d_squared_failures(&self) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for i in 0..self.maps.len().saturating_sub(1) {
            let comp = match self.direction {
                Direction::Homological => self.maps[i].mul(&self.k, &self.maps[i + 1])?,
                Direction::Cohomological => self.maps[i + 1].mul(&self.k, &self.maps[i])?,
            };
            if !comp.is_zero() {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    pub fn ensure_d_squared_zero(&self) -> Result<()> {
        let bad = self.d_squared_failures()?;
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Internal(format!("{}: d∘d ≠ 0 through degree(s) {bad:?}", self.label)))
        }
    }

    /// Replaces one map; used to inject faults in tests and suites.
    pub fn with_link(mut self, i: usize, m: SparseMatrix<K::Elem>) -> Result<Self> {
        if self.maps.get(i).map(|x| x.shape()) != Some(m.shape()) {
            return Err(Error::DimensionMismatch(format!("replacement for map {i} has the wrong shape")));
        }
        self.maps[i] = m;
        Ok(self)
    }

    /// Restriction to degrees `0..=top`.
    pub fn truncate(&self, top: usize) -> Self {
        let top = top.min(self.top());
        ChainComplex {
            k: self.k.clone(),
            direction: self.direction,
            label: self.label.clone(),
            dims: self.dims[..=top].to_vec(),
            maps: self.maps[..top].to_vec(),
            closed: false,
        }
    }
}

/// A degree-preserving family of matrices `f_n: X_n -> Y_n`.
#[derive(Clone, Debug)]
pub struct ChainMap<K: Field> {
    pub label: String,
    /// `maps[n]` is `f_n`.
    pub maps: Vec<SparseMatrix<K::Elem>>,
    /// `d_Y f = sign · f d_X`.
    pub sign: i8,
}

impl<K: Field> ChainMap<K> {
    pub fn new(label: impl Into<String>, maps: Vec<SparseMatrix<K::Elem>>) -> Self {
        ChainMap { label: label.into(), maps, sign: 1 }
    }

    pub fn identity(c: &ChainComplex<K>) -> Self {
        let k = c.field();
        ChainMap::new("identity", c.dims().iter().map(|&d| SparseMatrix::identity(k, d)).collect())
    }

    pub fn zero(x: &ChainComplex<K>, y: &ChainComplex<K>) -> Self {
        let top = x.top().min(y.top());
        ChainMap::new("zero", (0..=top).map(|n| SparseMatrix::zero(y.dim(n), x.dim(n))).collect())
    }

    pub fn top(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }

    /// Checks shapes and commutation with the differentials at every degree
    /// where both sides are defined.
    pub fn verify(&self, x: &ChainComplex<K>, y: &ChainComplex<K>) -> Result<()> {
        let k = x.field();
        if x.direction != y.direction {
            return Err(Error::NotAChainMap(format!("{}: source and target run in opposite directions", self.label)));
        }
        for (n, f) in self.maps.iter().enumerate() {
            if f.shape() != (y.dim(n), x.dim(n)) {
                return Err(Error::NotAChainMap(format!(
                    "{}: map at degree {n} is {:?}, expected {:?}",
                    self.label,
                    f.shape(),
                    (y.dim(n), x.dim(n))
                )));
            }
        }
        for i in 0..self.maps.len().saturating_sub(1) {
            let (Some(dx), Some(dy)) = (x.link(i), y.link(i)) else { continue };
            let (lhs, rhs) = match x.direction {
                Direction::Homological => (dy.mul(k, &self.maps[i + 1])?, self.maps[i].mul(k, dx)?),
                Direction::Cohomological => (dy.mul(k, &self.maps[i])?, self.maps[i + 1].mul(k, dx)?),
            };
            let rhs = if self.sign < 0 { rhs.neg(k) } else { rhs };
            if lhs != rhs {
                return Err(Error::NotAChainMap(format!("{}: fails to commute between degrees {i} and {}", self.label, i + 1)));
            }
        }
        Ok(())
    }

    pub fn compose(&self, k: &K, after: &ChainMap<K>) -> Result<ChainMap<K>> {
        let top = self.top().min(after.top());
        let maps = (0..=top).map(|n| after.maps[n].mul(k, &self.maps[n])).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { label: format!("{} ∘ {}", after.label, self.label), maps, sign: self.sign * after.sign })
    }
}

/// Which side an operator lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Chain,
    Cochain,
}

/// Named operators on the triple complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    /// The Hochschild differential `b`.
    B,
    BPrime,
    Lambda,
    N,
    SHomotopy,
    TShift,
    BConnes,
}

/// Matrix of a named operator at degree `n` in the canonical basis.
///
/// Chain side: `b, b′: C_n -> C_{n-1}`, `λ, N: C_n -> C_n`,
/// `t: C_{n-1} -> C_n`, `B = N t (1-λ): C_n -> C_{n+1}`.
/// Cochain side: `b, b′: C^n -> C^{n+1}`, `λ, N: C^n -> C^n`,
/// `s: C^n -> C^{n-1}`.
pub fn operator_matrix<K: Field>(t: &Triple<K>, kind: OperatorKind, n: usize, side: Side, cap: u128) -> Result<SparseMatrix<K::Elem>> {
    match side {
        Side::Chain => {
            let ops = ChainOps::new(t, cap);
            match kind {
                OperatorKind::B => ops.b(n),
                OperatorKind::BPrime => ops.b_prime(n),
                OperatorKind::Lambda => ops.lambda(n),
                OperatorKind::N => ops.norm(n),
                OperatorKind::TShift if n >= 1 => ops.t_shift(n),
                OperatorKind::BConnes => ops.connes_b(n),
                OperatorKind::TShift => Err(Error::InvalidOperator("t_shift starts at degree 1".into())),
                OperatorKind::SHomotopy => Err(Error::InvalidOperator("s_homotopy lives on the cochain side".into())),
            }
        }
        Side::Cochain => {
            let ops = CochainOps::new(t, cap);
            match kind {
                OperatorKind::B => ops.b(n),
                OperatorKind::BPrime => ops.b_prime(n),
                OperatorKind::Lambda => ops.lambda(n),
                OperatorKind::N => ops.norm(n),
                OperatorKind::SHomotopy if n >= 1 => ops.s_homotopy(n),
                OperatorKind::SHomotopy => Err(Error::InvalidOperator("s_homotopy starts at degree 1".into())),
                OperatorKind::TShift | OperatorKind::BConnes => {
                    Err(Error::InvalidOperator(format!("{kind:?} lives on the chain side")))
                }
            }
        }
    }
}

/// `1 - m` for a square matrix.
pub fn one_minus<K: Field>(k: &K, m: &SparseMatrix<K::Elem>) -> Result<SparseMatrix<K::Elem>> {
    SparseMatrix::identity(k, m.rows()).sub(k, m)
}

/// `1 + m + ... + m^e`.
pub fn geometric_sum<K: Field>(k: &K, m: &SparseMatrix<K::Elem>, e: usize) -> Result<SparseMatrix<K::Elem>> {
    let mut acc = SparseMatrix::identity(k, m.rows());
    let mut pow = SparseMatrix::identity(k, m.rows());
    for _ in 0..e {
        pow = m.mul(k, &pow)?;
        acc = acc.add(k, &pow)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
