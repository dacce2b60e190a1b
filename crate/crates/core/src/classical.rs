//! Classical Hochschild and cyclic (co)chain complexes of a single algebra.
//!
//! Written against plain words `a_0 ⊗ ... ⊗ a_n` with no triangular
//! bookkeeping, so that it can serve as an independent reference for the
//! triple complexes when `B = k`. Basis words are indexed in mixed radix with
//! `a_0` most significant; coefficient spaces use `word * dim M + m`.

use serde::{Deserialize, Serialize};

use crate::complexes::{quotient_by, restrict_to, ChainComplex, ChainMap, Direction, QuotientComplex, SubComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{check_exactness, les_from_ses, ExactnessReport, ShortExactSequence};
use crate::linalg::{kernel_basis, Subspace};
use crate::sparse::{build_columns, SparseMatrix};
use crate::structure::{Algebra, Bimodule};

fn sign<K: Field>(k: &K, i: usize) -> K::Elem {
    if i.is_multiple_of(2) {
        k.one()
    } else {
        k.neg(&k.one())
    }
}

/// Words of a fixed length over `0..base`.
#[derive(Clone, Copy, Debug)]
struct Words {
    base: usize,
    len: usize,
}

impl Words {
    fn count(&self, cap: u128) -> Result<usize> {
        let mut d: u128 = 1;
        for _ in 0..self.len {
            d = d.saturating_mul(self.base as u128);
        }
        if d > cap {
            return Err(Error::DegreeTooLarge { dim: d, cap });
        }
        Ok(d as usize)
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.len];
        for slot in w.iter_mut().rev() {
            *slot = idx % self.base;
            idx /= self.base;
        }
        w
    }

    fn encode(&self, w: &[usize]) -> usize {
        debug_assert_eq!(w.len(), self.len);
        w.iter().fold(0, |acc, &x| acc * self.base + x)
    }
}

/// Operators on `A^{⊗(n+1)}` and its dual for a single algebra.
pub struct ClassicalOps<'a, K: Field> {
    a: &'a Algebra<K>,
    cap: u128,
}

impl<'a, K: Field> ClassicalOps<'a, K> {
    pub fn new(a: &'a Algebra<K>, cap: u128) -> Self {
        ClassicalOps { a, cap }
    }

    fn k(&self) -> &K {
        self.a.field()
    }

    fn words(&self, len: usize) -> Words {
        Words { base: self.a.dim(), len }
    }

    /// `dim A^{⊗ len}`.
    pub fn word_count(&self, len: usize) -> Result<usize> {
        self.words(len).count(self.cap)
    }

    /// Terms of `Σ_{i<n} (-1)^i (..., a_i a_{i+1}, ...)` for a word of length
    /// `n + 1`, plus the wrap-around `(-1)^n (a_n a_0, a_1, ..., a_{n-1})`.
    fn face_terms(&self, w: &[usize], wrap: bool, out: &mut Vec<(Vec<usize>, K::Elem)>) {
        let k = self.k();
        let n = w.len() - 1;
        for i in 0..n {
            for (x, c) in self.a.basis_product(w[i], w[i + 1]) {
                let mut v = Vec::with_capacity(n);
                v.extend_from_slice(&w[..i]);
                v.push(*x);
                v.extend_from_slice(&w[i + 2..]);
                out.push((v, k.mul(&sign(k, i), c)));
            }
        }
        if wrap && n > 0 {
            for (x, c) in self.a.basis_product(w[n], w[0]) {
                let mut v = Vec::with_capacity(n);
                v.push(*x);
                v.extend_from_slice(&w[1..n]);
                out.push((v, k.mul(&sign(k, n), c)));
            }
        }
    }

    fn chain_faces(&self, n: usize, wrap: bool) -> Result<SparseMatrix<K::Elem>> {
        let (src, dst) = (self.words(n + 1), self.words(n));
        let cols = src.count(self.cap)?;
        if n == 0 {
            return Ok(SparseMatrix::zero(0, cols));
        }
        let rows = dst.count(self.cap)?;
        Ok(build_columns(self.k(), rows, cols, |j| {
            let mut terms = Vec::new();
            self.face_terms(&src.decode(j), wrap, &mut terms);
            terms.into_iter().map(|(v, c)| (dst.encode(&v), c)).collect()
        }))
    }

    /// `b: C_n(A,A) -> C_{n-1}(A,A)`.
    pub fn chain_b(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.chain_faces(n, true)
    }

    /// `b′: C_n(A,A) -> C_{n-1}(A,A)`.
    pub fn chain_b_prime(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.chain_faces(n, false)
    }

    /// `λ(a_0 ⊗ ... ⊗ a_n) = (-1)^n a_n ⊗ a_0 ⊗ ... ⊗ a_{n-1}`.
    pub fn chain_lambda(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let w = self.words(n + 1);
        let d = w.count(self.cap)?;
        let s = sign(self.k(), n);
        Ok(build_columns(self.k(), d, d, |j| {
            let x = w.decode(j);
            let mut y = Vec::with_capacity(n + 1);
            y.push(x[n]);
            y.extend_from_slice(&x[..n]);
            vec![(w.encode(&y), s.clone())]
        }))
    }

    /// Builds a cochain operator `C^n -> C^{m}` from the rule
    /// `(Tf)(y) = Σ c f(x)`, given per target word `y`.
    fn by_target<F>(&self, n_src: usize, n_dst: usize, rule: F) -> Result<SparseMatrix<K::Elem>>
    where
        F: Fn(&[usize]) -> Vec<(Vec<usize>, K::Elem)> + Sync + Send,
    {
        let (src, dst) = (self.words(n_src + 1), self.words(n_dst + 1));
        let (ds, dd) = (src.count(self.cap)?, dst.count(self.cap)?);
        let rows = build_columns(self.k(), ds, dd, |y| {
            rule(&dst.decode(y)).into_iter().map(|(x, c)| (src.encode(&x), c)).collect()
        });
        Ok(rows.transpose())
    }

    /// `(bf)(a_0, ..., a_{n+1}) = Σ_{i≤n} (-1)^i f(..., a_i a_{i+1}, ...) + (-1)^{n+1} f(a_{n+1} a_0, a_1, ..., a_n)`.
    pub fn cochain_b(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.by_target(n, n + 1, |y| {
            let mut t = Vec::new();
            self.face_terms(y, true, &mut t);
            t
        })
    }

    /// `b′` on cochains: the sum without the last term.
    pub fn cochain_b_prime(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        self.by_target(n, n + 1, |y| {
            let mut t = Vec::new();
            self.face_terms(y, false, &mut t);
            t
        })
    }

    /// `(λf)(a_0, ..., a_n) = (-1)^n f(a_n, a_0, ..., a_{n-1})`.
    pub fn cochain_lambda(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let s = sign(self.k(), n);
        self.by_target(n, n, |y| {
            let mut x = Vec::with_capacity(n + 1);
            x.push(y[n]);
            x.extend_from_slice(&y[..n]);
            vec![(x, s.clone())]
        })
    }

    /// `(λf)(a_0, ..., a_n) = (-1)^n f(a_n, ..., a_0)`, the order-reversing
    /// variant. Kept for comparison; it does not intertwine `b` and `b′`.
    pub fn cochain_reversal(&self, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let s = sign(self.k(), n);
        self.by_target(n, n, |y| vec![(y.iter().rev().copied().collect(), s.clone())])
    }

    /// `1 + λ + ... + λ^n` for a degree-`n` cyclic operator.
    pub fn norm(&self, lambda: &SparseMatrix<K::Elem>, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let mut acc = SparseMatrix::identity(k, lambda.rows());
        let mut p = SparseMatrix::identity(k, lambda.rows());
        for _ in 0..n {
            p = p.mul(k, lambda)?;
            acc = acc.add(k, &p)?;
        }
        Ok(acc)
    }

    /// Face `δ_i: A^{⊗(n+2)} -> A^{⊗(n+1)}` of the bar resolution.
    pub fn bar_face(&self, n: usize, i: usize) -> Result<SparseMatrix<K::Elem>> {
        let (src, dst) = (self.words(n + 2), self.words(n + 1));
        let (cols, rows) = (src.count(self.cap)?, dst.count(self.cap)?);
        Ok(build_columns(self.k(), rows, cols, |j| {
            let w = src.decode(j);
            self.a
                .basis_product(w[i], w[i + 1])
                .iter()
                .map(|(x, c)| {
                    let mut v = w[..i].to_vec();
                    v.push(*x);
                    v.extend_from_slice(&w[i + 2..]);
                    (dst.encode(&v), c.clone())
                })
                .collect()
        }))
    }

    /// Degeneracy `σ_i: A^{⊗(n+2)} -> A^{⊗(n+3)}`, inserting `1` after `a_i`.
    pub fn bar_degeneracy(&self, n: usize, i: usize) -> Result<SparseMatrix<K::Elem>> {
        let (src, dst) = (self.words(n + 2), self.words(n + 3));
        let (cols, rows) = (src.count(self.cap)?, dst.count(self.cap)?);
        Ok(build_columns(self.k(), rows, cols, |j| {
            let w = src.decode(j);
            self.a
                .unit()
                .iter()
                .map(|(u, c)| {
                    let mut v = w[..=i].to_vec();
                    v.push(*u);
                    v.extend_from_slice(&w[i + 1..]);
                    (dst.encode(&v), c.clone())
                })
                .collect()
        }))
    }

    /// Hochschild coboundary on `Hom(A^{⊗n}, M)`:
    /// `(δf)(a_1, ..., a_{n+1}) = a_1 f(a_2, ...) + Σ (-1)^i f(..., a_i a_{i+1}, ...) + (-1)^{n+1} f(a_1, ..., a_n) a_{n+1}`.
    pub fn coefficient_coboundary(&self, m: &Bimodule<K>, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let dm = m.dim();
        let (src, dst) = (self.words(n), self.words(n + 1));
        let ds = src.count(self.cap)? * dm;
        let dd = dst.count(self.cap)? * dm;
        let rows = build_columns(k, ds, dd, |row| {
            let (y, mo) = (dst.decode(row / dm), row % dm);
            let mut out = Vec::new();
            let head = src.encode(&y[1..]) * dm;
            let tail = src.encode(&y[..n]) * dm;
            for mi in 0..dm {
                let e = [(mi, k.one())];
                for (x, c) in m.act_left(&[(y[0], k.one())], &e) {
                    if x == mo {
                        out.push((head + mi, c));
                    }
                }
                for (x, c) in m.act_right(&e, &[(y[n], k.one())]) {
                    if x == mo {
                        out.push((tail + mi, k.mul(&sign(k, n + 1), &c)));
                    }
                }
            }
            for i in 0..n {
                for (x, c) in self.a.basis_product(y[i], y[i + 1]) {
                    let mut v = y[..i].to_vec();
                    v.push(*x);
                    v.extend_from_slice(&y[i + 2..]);
                    out.push((src.encode(&v) * dm + mo, k.mul(&sign(k, i + 1), c)));
                }
            }
            out
        });
        Ok(rows.transpose())
    }

    /// Hochschild boundary on `M ⊗ A^{⊗n}`:
    /// `b(m, a_1, ..., a_n) = (m a_1, a_2, ...) + Σ (-1)^i (m, ..., a_i a_{i+1}, ...) + (-1)^n (a_n m, a_1, ..., a_{n-1})`.
    pub fn coefficient_boundary(&self, m: &Bimodule<K>, n: usize) -> Result<SparseMatrix<K::Elem>> {
        let k = self.k();
        let dm = m.dim();
        let (src, dst) = (self.words(n), self.words(n - 1));
        let ds = src.count(self.cap)? * dm;
        let dd = dst.count(self.cap)? * dm;
        Ok(build_columns(k, dd, ds, |col| {
            let (x, mi) = (src.decode(col / dm), col % dm);
            let e = [(mi, k.one())];
            let mut out: Vec<(usize, K::Elem)> = Vec::new();
            let head = dst.encode(&x[1..]) * dm;
            for (mo, c) in m.act_right(&e, &[(x[0], k.one())]) {
                out.push((head + mo, c));
            }
            for i in 1..n {
                for (p, c) in self.a.basis_product(x[i - 1], x[i]) {
                    let mut v = x[..i - 1].to_vec();
                    v.push(*p);
                    v.extend_from_slice(&x[i + 1..]);
                    out.push((dst.encode(&v) * dm + mi, k.mul(&sign(k, i), c)));
                }
            }
            let tail = dst.encode(&x[..n - 1]) * dm;
            for (mo, c) in m.act_left(&[(x[n - 1], k.one())], &e) {
                out.push((tail + mo, k.mul(&sign(k, n), &c)));
            }
            out
        }))
    }
}

/// The classical complexes of one algebra through a degree window.
#[derive(Clone, Debug)]
pub struct ClassicalComplexSet<K: Field> {
    /// `(C^•(A, A*), b)` on `Hom(A^{⊗(n+1)}, k)`.
    pub cochain: ChainComplex<K>,
    pub cochain_prime: ChainComplex<K>,
    pub cochain_lambda: Vec<SparseMatrix<K::Elem>>,
    /// `C^•_λ = Ker(1 - λ)`.
    pub cochain_cyclic: Option<SubComplex<K>>,
    /// `(C_•(A, A), b)` on `A^{⊗(n+1)}`.
    pub chain: ChainComplex<K>,
    pub chain_prime: ChainComplex<K>,
    pub chain_lambda: Vec<SparseMatrix<K::Elem>>,
    /// `C^λ_• = C_• / Im(1 - λ)`.
    pub chain_cyclic: Option<QuotientComplex<K>>,
    /// `C^•(A, M)` when a module is supplied.
    pub coefficient_cochain: Option<ChainComplex<K>>,
    /// `C_•(A, M)` when a module is supplied.
    pub coefficient_chain: Option<ChainComplex<K>>,
}

fn one_minus<K: Field>(k: &K, m: &SparseMatrix<K::Elem>) -> Result<SparseMatrix<K::Elem>> {
    SparseMatrix::identity(k, m.rows()).sub(k, m)
}

/// Builds every classical complex of `a` in degrees `0..=top`. The cyclic
/// complexes are built only in characteristic zero unless
/// `allow_positive_characteristic` is set.
pub fn classical_complexes<K: Field>(
    a: &Algebra<K>,
    m: Option<&Bimodule<K>>,
    top: usize,
    cap: u128,
    allow_positive_characteristic: bool,
) -> Result<ClassicalComplexSet<K>> {
    let k = a.field();
    let ops = ClassicalOps::new(a, cap);
    let dims = (0..=top).map(|n| ops.word_count(n + 1)).collect::<Result<Vec<_>>>()?;
    let build = |dir, label: &str, f: &dyn Fn(usize) -> Result<SparseMatrix<K::Elem>>| -> Result<ChainComplex<K>> {
        let maps = match dir {
            Direction::Cohomological => (0..top).map(f).collect::<Result<Vec<_>>>()?,
            Direction::Homological => (1..=top).map(f).collect::<Result<Vec<_>>>()?,
        };
        let c = ChainComplex::new(k, dir, label, dims.clone(), maps)?;
        c.ensure_d_squared_zero()?;
        Ok(c)
    };
    let cochain = build(Direction::Cohomological, "C^•(A,A*)", &|n| ops.cochain_b(n))?;
    let cochain_prime = build(Direction::Cohomological, "C^•(A,A*), b′", &|n| ops.cochain_b_prime(n))?;
    let chain = build(Direction::Homological, "C_•(A,A)", &|n| ops.chain_b(n))?;
    let chain_prime = build(Direction::Homological, "C_•(A,A), b′", &|n| ops.chain_b_prime(n))?;
    let cochain_lambda = (0..=top).map(|n| ops.cochain_lambda(n)).collect::<Result<Vec<_>>>()?;
    let chain_lambda = (0..=top).map(|n| ops.chain_lambda(n)).collect::<Result<Vec<_>>>()?;

    let cyclic = k.characteristic() == 0 || allow_positive_characteristic;
    let (cochain_cyclic, chain_cyclic) = if cyclic {
        let kernels = cochain_lambda
            .iter()
            .map(|l| {
                let d = one_minus(k, l)?;
                Ok(Subspace::spanned_by(k, d.cols(), &kernel_basis(k, &d)))
            })
            .collect::<Result<Vec<_>>>()?;
        let images = chain_lambda
            .iter()
            .map(|l| Ok(Subspace::image_of(k, &one_minus(k, l)?)))
            .collect::<Result<Vec<_>>>()?;
        (
            Some(restrict_to(&cochain, kernels, "C^•_λ(A)")?),
            Some(quotient_by(&chain, images, "C^λ_•(A)")?),
        )
    } else {
        (None, None)
    };

    let (coefficient_cochain, coefficient_chain) = match m {
        Some(m) => {
            let cdims = (0..=top).map(|n| Ok(ops.word_count(n)? * m.dim())).collect::<Result<Vec<_>>>()?;
            let up = (0..top).map(|n| ops.coefficient_coboundary(m, n)).collect::<Result<Vec<_>>>()?;
            let down = (1..=top).map(|n| ops.coefficient_boundary(m, n)).collect::<Result<Vec<_>>>()?;
            let co = ChainComplex::new(k, Direction::Cohomological, "C^•(A,M)", cdims.clone(), up)?;
            let ch = ChainComplex::new(k, Direction::Homological, "C_•(A,M)", cdims, down)?;
            co.ensure_d_squared_zero()?;
            ch.ensure_d_squared_zero()?;
            (Some(co), Some(ch))
        }
        None => (None, None),
    };

    Ok(ClassicalComplexSet {
        cochain,
        cochain_prime,
        cochain_lambda,
        cochain_cyclic,
        chain,
        chain_prime,
        chain_lambda,
        chain_cyclic,
        coefficient_cochain,
        coefficient_chain,
    })
}

/// Exactness of Connes' sequences for a single algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassicalConnesReport {
    pub cohomology: ExactnessReport,
    pub homology: ExactnessReport,
    /// Node dimensions of the cohomology sequence, in sequence order.
    pub cohomology_nodes: Vec<usize>,
    pub homology_nodes: Vec<usize>,
}

impl ClassicalConnesReport {
    pub fn passed(&self) -> bool {
        self.cohomology.passed() && self.homology.passed()
    }
}

/// The classical cyclic bicomplex: column `p` is `(C_•, b)` for even `p` and
/// `(C_•, -b′)` for odd `p`; horizontal maps are `1 - λ` out of odd columns
/// and `N` out of even ones. Returns `Tot`, the two-column `Tot′`, and
/// `Tot[2]`, together with the inclusion and the truncation.
pub struct ClassicalTot<K: Field> {
    pub tot: ChainComplex<K>,
    pub tot_prime: ChainComplex<K>,
    pub tot_shift2: ChainComplex<K>,
    pub inclusion: ChainMap<K>,
    pub truncation: ChainMap<K>,
}

pub fn classical_tot<K: Field>(a: &Algebra<K>, top: usize, cap: u128) -> Result<ClassicalTot<K>> {
    let k = a.field();
    let ops = ClassicalOps::new(a, cap);
    let c: Vec<usize> = (0..=top).map(|q| ops.word_count(q + 1)).collect::<Result<_>>()?;
    let b: Vec<_> = (1..=top).map(|q| ops.chain_b(q)).collect::<Result<_>>()?;
    let bp: Vec<_> = (1..=top).map(|q| ops.chain_b_prime(q).map(|m| m.neg(k))).collect::<Result<_>>()?;
    let lam: Vec<_> = (0..=top).map(|q| ops.chain_lambda(q)).collect::<Result<_>>()?;
    let one_minus_l: Vec<_> = lam.iter().map(|l| one_minus(k, l)).collect::<Result<_>>()?;
    let norm: Vec<_> = lam.iter().enumerate().map(|(q, l)| ops.norm(l, q)).collect::<Result<_>>()?;

    let build = |cols: usize| -> Result<ChainComplex<K>> {
        let dims: Vec<usize> = (0..=top).map(|n| (0..=n.min(cols - 1)).map(|p| c[n - p]).sum()).collect();
        let mut maps = Vec::with_capacity(top);
        for n in 1..=top {
            let src: Vec<usize> = (0..=n.min(cols - 1)).collect();
            let dst: Vec<usize> = (0..=(n - 1).min(cols - 1)).collect();
            let widths: Vec<usize> = src.iter().map(|&p| c[n - p]).collect();
            let heights: Vec<usize> = dst.iter().map(|&p| c[n - 1 - p]).collect();
            let blocks: Vec<Vec<Option<&SparseMatrix<K::Elem>>>> = dst
                .iter()
                .map(|&pr| {
                    src.iter()
                        .map(|&p| {
                            let q = n - p;
                            if pr == p && q >= 1 {
                                Some(if p % 2 == 0 { &b[q - 1] } else { &bp[q - 1] })
                            } else if pr + 1 == p {
                                Some(if p % 2 == 1 { &one_minus_l[q] } else { &norm[q] })
                            } else {
                                None
                            }
                        })
                        .collect()
                })
                .collect();
            maps.push(SparseMatrix::from_blocks(&heights, &widths, &blocks)?);
        }
        let label = if cols > top { "Tot(A)" } else { "Tot′(A)" };
        let cx = ChainComplex::new(k, Direction::Homological, label, dims, maps)?;
        cx.ensure_d_squared_zero()?;
        Ok(cx)
    };
    let tot = build(top + 1)?;
    let tot_prime = build(2)?;

    let mut sdims = vec![0, 0];
    sdims.extend(tot.dims().iter().take(top.saturating_sub(1)));
    sdims.truncate(top + 1);
    let mut smaps = Vec::with_capacity(top);
    for i in 0..top {
        if i < 2 {
            smaps.push(SparseMatrix::zero(sdims[i], sdims[i + 1]));
        } else {
            smaps.push(tot.link(i - 2).expect("inside the window").clone());
        }
    }
    let tot_shift2 = ChainComplex::new(k, Direction::Homological, "Tot(A)[2]", sdims.clone(), smaps)?;

    let inclusion = ChainMap::new(
        "Tot′(A) → Tot(A)",
        (0..=top)
            .map(|n| {
                let d = tot_prime.dim(n);
                let cols = (0..d).map(|j| vec![(j, k.one())]).collect();
                SparseMatrix::from_columns(k, tot.dim(n), cols)
            })
            .collect::<Result<_>>()?,
    );
    let truncation = ChainMap::new(
        "Tot(A) → Tot(A)[2]",
        (0..=top)
            .map(|n| {
                let skip = tot_prime.dim(n);
                let cols = (0..tot.dim(n)).map(|j| if j < skip { vec![] } else { vec![(j - skip, k.one())] }).collect();
                SparseMatrix::from_columns(k, sdims[n], cols)
            })
            .collect::<Result<_>>()?,
    );
    Ok(ClassicalTot { tot, tot_prime, tot_shift2, inclusion, truncation })
}

/// Runs the snake lemma on `0 → C^•_λ → C^• → C^•/C^•_λ → 0` and on
/// `0 → Tot′ → Tot → Tot[2] → 0` for `a` over a field of characteristic
/// zero, then checks both long exact sequences through degree `top - 1`.
pub fn classical_connes_check<K: Field>(a: &Algebra<K>, top: usize, cap: u128) -> Result<ClassicalConnesReport> {
    let k = a.field();
    if k.characteristic() != 0 {
        return Err(Error::CharacteristicRefused(format!("{} (classical Connes sequence)", k.spec())));
    }
    let set = classical_complexes(a, None, top, cap, false)?;
    let sub = set.cochain_cyclic.expect("characteristic zero");
    let quotient = quotient_by(&set.cochain, sub.subspaces.clone(), "C^•/C^•_λ(A)")?;
    let co = ShortExactSequence {
        x: sub.complex,
        y: set.cochain,
        z: quotient.complex,
        f: sub.inclusion,
        g: quotient.projection,
    };
    let co_les = les_from_ses(&co)?;

    let t = classical_tot(a, top, cap)?;
    let ho = ShortExactSequence { x: t.tot_prime, y: t.tot, z: t.tot_shift2, f: t.inclusion, g: t.truncation };
    let ho_les = les_from_ses(&ho)?;
    Ok(ClassicalConnesReport {
        cohomology: check_exactness(&co_les),
        homology: check_exactness(&ho_les),
        cohomology_nodes: co_les.node_dims(),
        homology_nodes: ho_les.node_dims(),
    })
}

#[cfg(test)]
mod tests;
