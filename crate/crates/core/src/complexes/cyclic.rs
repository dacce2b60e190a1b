use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, Subspace};
use crate::sparse::{build_columns, SparseMatrix};
use crate::structure::Triple;

use super::{one_minus, ChainComplex, ChainMap, ChainOps, CochainOps, Direction};

fn refuse_positive_characteristic<K: Field>(k: &K, allow: bool, what: &str) -> Result<()> {
    if k.characteristic() != 0 && !allow {
        return Err(Error::CharacteristicRefused(format!("{} ({what})", k.spec())));
    }
    Ok(())
}

/// A subcomplex cut out by invariant subspaces, with its inclusion.
#[derive(Clone, Debug)]
pub struct SubComplex<K: Field> {
    pub complex: ChainComplex<K>,
    pub inclusion: ChainMap<K>,
    pub subspaces: Vec<Subspace<K>>,
}

/// A quotient complex in complement coordinates, with its projection.
#[derive(Clone, Debug)]
pub struct QuotientComplex<K: Field> {
    pub complex: ChainComplex<K>,
    pub projection: ChainMap<K>,
    pub subspaces: Vec<Subspace<K>>,
}

/// Restricts `c` to the given degreewise subspaces, which must be preserved
/// by the differential.
pub fn restrict_to<K: Field>(c: &ChainComplex<K>, subspaces: Vec<Subspace<K>>, label: &str) -> Result<SubComplex<K>> {
    let k = c.field();
    let top = c.top();
    let dims: Vec<usize> = subspaces.iter().map(|s| s.dim()).collect();
    let mut maps = Vec::with_capacity(top);
    for i in 0..top {
        let (src, dst) = match c.direction {
            Direction::Homological => (i + 1, i),
            Direction::Cohomological => (i, i + 1),
        };
        let d = c.link(i).expect("inside the window");
        let mut cols = Vec::with_capacity(dims[src]);
        for v in subspaces[src].basis() {
            let image = d.mul_vec(k, v);
            let coords = subspaces[dst].coords(k, &image).ok_or_else(|| {
                Error::Internal(format!("{label}: the differential leaves the subspace between degrees {src} and {dst}"))
            })?;
            cols.push(coords);
        }
        maps.push(SparseMatrix::from_normalized_columns(dims[dst], cols));
    }
    let complex = ChainComplex::new(k, c.direction, label, dims, maps)?;
    let inclusion = ChainMap::new(format!("{label} ⊂ {}", c.label), subspaces.iter().map(|s| s.basis_matrix()).collect());
    Ok(SubComplex { complex, inclusion, subspaces })
}

/// The quotient of `c` by degreewise subspaces preserved by the differential.
pub fn quotient_by<K: Field>(c: &ChainComplex<K>, subspaces: Vec<Subspace<K>>, label: &str) -> Result<QuotientComplex<K>> {
    let k = c.field();
    let top = c.top();
    let dims: Vec<usize> = subspaces.iter().map(|s| s.complement().len()).collect();
    let mut maps = Vec::with_capacity(top);
    for i in 0..top {
        let (src, dst) = match c.direction {
            Direction::Homological => (i + 1, i),
            Direction::Cohomological => (i, i + 1),
        };
        let d = c.link(i).expect("inside the window");
        for v in subspaces[src].basis() {
            if !subspaces[dst].contains(k, &d.mul_vec(k, v)) {
                return Err(Error::Internal(format!(
                    "{label}: the differential does not preserve the subspace between degrees {src} and {dst}"
                )));
            }
        }
        let cols = subspaces[src]
            .complement()
            .iter()
            .map(|&j| subspaces[dst].quotient_coords(k, d.col(j)))
            .collect();
        maps.push(SparseMatrix::from_normalized_columns(dims[dst], cols));
    }
    let complex = ChainComplex::new(k, c.direction, label, dims, maps)?;
    let projection = ChainMap::new(format!("{} → {label}", c.label), subspaces.iter().map(|s| s.projection(k)).collect());
    Ok(QuotientComplex { complex, projection, subspaces })
}

/// `C^•_λ = Ker(1 - λ)` with the restricted `b`, degrees `0..=top`, and its
/// inclusion into `C^•(A,B,ε)`. Returned with the ambient complex.
pub fn cyclic_subcomplex<K: Field>(
    t: &Triple<K>,
    top: usize,
    cap: u128,
    allow_positive_characteristic: bool,
) -> Result<(ChainComplex<K>, SubComplex<K>)> {
    let k = t.field();
    refuse_positive_characteristic(k, allow_positive_characteristic, "cyclic cochains")?;
    let ops = CochainOps::new(t, cap);
    let c = ops.complex(top)?;
    let subspaces = (0..=top)
        .map(|n| {
            let l = one_minus(k, &ops.lambda(n)?)?;
            Ok(Subspace::spanned_by(k, l.cols(), &kernel_basis(k, &l)))
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = restrict_to(&c, subspaces, "C^•_λ(A,B,ε)")?;
    sub.complex.ensure_d_squared_zero()?;
    Ok((c, sub))
}

/// `C^λ_• = C_• / Im(1 - λ)` with the induced `b`, degrees `0..=top`, and the
/// projection from `C_•(A,B,ε)`. Returned with the ambient complex.
pub fn cyclic_quotient_complex<K: Field>(
    t: &Triple<K>,
    top: usize,
    cap: u128,
    allow_positive_characteristic: bool,
) -> Result<(ChainComplex<K>, QuotientComplex<K>)> {
    let k = t.field();
    refuse_positive_characteristic(k, allow_positive_characteristic, "cyclic chains")?;
    let ops = ChainOps::new(t, cap);
    let c = ops.complex(top)?;
    let subspaces = (0..=top)
        .map(|n| Ok(Subspace::image_of(k, &one_minus(k, &ops.lambda(n)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let q = quotient_by(&c, subspaces, "C^λ_•(A,B,ε)")?;
    q.complex.ensure_d_squared_zero()?;
    Ok((c, q))
}

/// The cyclic double complex: column `p` is `(C_•, b)` for even `p` and
/// `(C_•, -b′)` for odd `p`; the map from column `p` to `p - 1` is `1 - λ`
/// for odd `p` and `N` for even `p`.
#[derive(Clone, Debug)]
pub struct Bicomplex<K: Field> {
    k: K,
    pub top: usize,
    dims: Vec<usize>,
    b: Vec<SparseMatrix<K::Elem>>,
    b_prime: Vec<SparseMatrix<K::Elem>>,
    one_minus_lambda: Vec<SparseMatrix<K::Elem>>,
    norm: Vec<SparseMatrix<K::Elem>>,
}

impl<K: Field> Bicomplex<K> {
    pub fn new(t: &Triple<K>, top: usize, cap: u128) -> Result<Self> {
        let k = t.field();
        let ops = ChainOps::new(t, cap);
        let dims = (0..=top).map(|q| ops.dim(q)).collect::<Result<Vec<_>>>()?;
        let mut b = Vec::new();
        let mut b_prime = Vec::new();
        let mut one_minus_lambda = Vec::new();
        let mut norm = Vec::new();
        for q in 0..=top {
            b.push(ops.b(q)?);
            b_prime.push(ops.b_prime(q)?);
            one_minus_lambda.push(one_minus(k, &ops.lambda(q)?)?);
            norm.push(ops.norm(q)?);
        }
        Ok(Bicomplex { k: k.clone(), top, dims, b, b_prime, one_minus_lambda, norm })
    }

    pub fn dim(&self, q: usize) -> usize {
        self.dims[q]
    }

    /// Vertical map in column `p` leaving row `q >= 1`.
    pub fn vertical(&self, p: usize, q: usize) -> SparseMatrix<K::Elem> {
        if p.is_multiple_of(2) {
            self.b[q].clone()
        } else {
            self.b_prime[q].neg(&self.k)
        }
    }

    /// Horizontal map from column `p >= 1` to `p - 1` in row `q`.
    pub fn horizontal(&self, p: usize, q: usize) -> &SparseMatrix<K::Elem> {
        if p % 2 == 1 {
            &self.one_minus_lambda[q]
        } else {
            &self.norm[q]
        }
    }

    pub fn one_minus_lambda(&self, q: usize) -> &SparseMatrix<K::Elem> {
        &self.one_minus_lambda[q]
    }

    pub fn norm(&self, q: usize) -> &SparseMatrix<K::Elem> {
        &self.norm[q]
    }

    /// Cells `(p, q)` where `v h + h v ≠ 0` (squares must anticommute), for
    /// `1 <= p <= top` and `1 <= q <= top`. Two consecutive columns suffice to
    /// cover both parities, but every listed cell is checked.
    pub fn square_failures(&self, max_p: usize) -> Result<Vec<(usize, usize)>> {
        let k = &self.k;
        let mut bad = Vec::new();
        for p in 1..=max_p {
            for q in 1..=self.top {
                let lhs = self.vertical(p - 1, q).mul(k, self.horizontal(p, q))?;
                let rhs = self.horizontal(p, q - 1).mul(k, &self.vertical(p, q))?;
                if !lhs.add(k, &rhs)?.is_zero() {
                    bad.push((p, q));
                }
            }
        }
        Ok(bad)
    }

    /// Rows `q` where `(1-λ)N` or `N(1-λ)` is nonzero, and columns where the
    /// vertical maps fail to compose to zero.
    pub fn composite_failures(&self) -> Result<Vec<String>> {
        let k = &self.k;
        let mut bad = Vec::new();
        for q in 0..=self.top {
            if !self.one_minus_lambda[q].mul(k, &self.norm[q])?.is_zero() {
                bad.push(format!("(1-λ)N at row {q}"));
            }
            if !self.norm[q].mul(k, &self.one_minus_lambda[q])?.is_zero() {
                bad.push(format!("N(1-λ) at row {q}"));
            }
        }
        for q in 2..=self.top {
            if !self.b[q - 1].mul(k, &self.b[q])?.is_zero() {
                bad.push(format!("b∘b at row {q}"));
            }
            if !self.b_prime[q - 1].mul(k, &self.b_prime[q])?.is_zero() {
                bad.push(format!("b′∘b′ at row {q}"));
            }
        }
        Ok(bad)
    }

    fn component_dims(&self, n: usize) -> Vec<usize> {
        (0..=n).map(|p| self.dims[n - p]).collect()
    }

    /// Total differential `Tot_n -> Tot_{n-1}` restricted to the columns
    /// `0..ncols` (all columns when `ncols > n`). Components are ordered by
    /// column.
    fn total_differential(&self, n: usize, ncols: usize) -> Result<SparseMatrix<K::Elem>> {
        let src: Vec<usize> = (0..=n.min(ncols - 1)).collect();
        let dst: Vec<usize> = (0..n.min(ncols)).collect();
        let heights: Vec<usize> = dst.iter().map(|&p| self.dims[n - 1 - p]).collect();
        let widths: Vec<usize> = src.iter().map(|&p| self.dims[n - p]).collect();
        let mut owned: Vec<Vec<Option<SparseMatrix<K::Elem>>>> = vec![vec![None; src.len()]; dst.len()];
        for &p in &src {
            let q = n - p;
            if q >= 1 && p < dst.len() {
                owned[p][p] = Some(self.vertical(p, q));
            }
            if p >= 1 {
                owned[p - 1][p] = Some(self.horizontal(p, q).clone());
            }
        }
        let grid: Vec<Vec<Option<&SparseMatrix<K::Elem>>>> =
            owned.iter().map(|row| row.iter().map(|b| b.as_ref()).collect()).collect();
        SparseMatrix::from_blocks(&heights, &widths, &grid)
    }

    /// `Tot` through degree `top`.
    pub fn total(&self) -> Result<ChainComplex<K>> {
        self.total_of_columns(usize::MAX, "Tot C(A,B,ε)")
    }

    /// Total complex of the first two columns.
    pub fn total_prime(&self) -> Result<ChainComplex<K>> {
        self.total_of_columns(2, "Tot′ C(A,B,ε)")
    }

    fn total_of_columns(&self, ncols: usize, label: &str) -> Result<ChainComplex<K>> {
        let dims: Vec<usize> =
            (0..=self.top).map(|n| self.component_dims(n).iter().take(ncols).sum()).collect();
        let maps = (1..=self.top).map(|n| self.total_differential(n, ncols)).collect::<Result<Vec<_>>>()?;
        let c = ChainComplex::new(&self.k, Direction::Homological, label, dims, maps)?;
        c.ensure_d_squared_zero()?;
        Ok(c)
    }

    /// `Z_n = Tot_{n-2}`, zero in degrees 0 and 1.
    pub fn total_shifted(&self, tot: &ChainComplex<K>) -> Result<ChainComplex<K>> {
        let dims: Vec<usize> = (0..=self.top).map(|n| if n < 2 { 0 } else { tot.dim(n - 2) }).collect();
        let maps = (1..=self.top)
            .map(|n| match n {
                1 => SparseMatrix::zero(0, 0),
                2 => SparseMatrix::zero(0, dims[2]),
                _ => tot.link(n - 3).expect("inside the window").clone(),
            })
            .collect();
        ChainComplex::new(&self.k, Direction::Homological, "Tot C(A,B,ε)[2]", dims, maps)
    }

    /// `Tot′_n -> Tot_n`, the inclusion of the first two columns.
    pub fn inclusion(&self) -> ChainMap<K> {
        let maps = (0..=self.top)
            .map(|n| {
                let comps = self.component_dims(n);
                let small: usize = comps.iter().take(2).sum();
                let total: usize = comps.iter().sum();
                SparseMatrix::from_normalized_columns(total, (0..small).map(|i| vec![(i, self.k.one())]).collect())
            })
            .collect();
        ChainMap::new("i: Tot′ → Tot", maps)
    }

    /// `s: Tot_n -> Tot_{n-2}`, dropping the first two columns.
    pub fn truncation(&self) -> ChainMap<K> {
        let maps = (0..=self.top)
            .map(|n| {
                let comps = self.component_dims(n);
                let total: usize = comps.iter().sum();
                let dropped: usize = comps.iter().take(2).sum();
                let rows = total - dropped;
                let cols = (0..total).map(|j| if j < dropped { vec![] } else { vec![(j - dropped, self.k.one())] }).collect();
                SparseMatrix::from_normalized_columns(rows, cols)
            })
            .collect();
        ChainMap::new("s: Tot → Tot[2]", maps)
    }

    /// Offsets of the column components inside `Tot_n`.
    pub fn offsets(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n + 2);
        let mut acc = 0;
        out.push(0);
        for d in self.component_dims(n) {
            acc += d;
            out.push(acc);
        }
        out
    }
}

/// Outcome of testing one candidate map between `(C_•, b)` and `Tot′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateOutcome {
    pub name: String,
    /// Whether the formula has matching source and target at every degree.
    pub well_typed: bool,
    /// `None` when ill-typed.
    pub chain_map: Option<bool>,
    pub note: String,
}

/// The bicomplex together with its total complexes, the short exact sequence
/// `0 -> Tot′ -> Tot -> Tot[2] -> 0`, and the outcome of the search for a
/// chain map realizing the equivalence between `(C_•, b)` and `Tot′`.
#[derive(Clone, Debug)]
pub struct CyclicBicomplex<K: Field> {
    pub bicomplex: Bicomplex<K>,
    pub chain: ChainComplex<K>,
    pub tot: ChainComplex<K>,
    pub tot_prime: ChainComplex<K>,
    pub tot_shift2: ChainComplex<K>,
    pub inclusion: ChainMap<K>,
    pub truncation: ChainMap<K>,
    pub candidates: Vec<CandidateOutcome>,
    /// Passing candidates `Tot′ -> C`.
    pub projections: Vec<(String, ChainMap<K>)>,
    /// Passing candidates `C -> Tot′`.
    pub sections: Vec<(String, ChainMap<K>)>,
}

pub fn cyclic_bicomplex<K: Field>(
    t: &Triple<K>,
    top: usize,
    cap: u128,
    allow_positive_characteristic: bool,
) -> Result<CyclicBicomplex<K>> {
    let k = t.field();
    refuse_positive_characteristic(k, allow_positive_characteristic, "cyclic bicomplex")?;
    let bicomplex = Bicomplex::new(t, top, cap)?;
    let ops = ChainOps::new(t, cap);
    let chain = ops.complex(top)?;
    let tot = bicomplex.total()?;
    let tot_prime = bicomplex.total_prime()?;
    let tot_shift2 = bicomplex.total_shifted(&tot)?;
    let inclusion = bicomplex.inclusion();
    let truncation = bicomplex.truncation();

    let mut candidates = Vec::new();
    let mut projections = Vec::new();
    let mut sections = Vec::new();

    // Literal assemblies x ↦ (x, ±t(x)) and x ↦ (±t(x), x): t raises degree,
    // while Tot′_n = C_n ⊕ C_{n-1}.
    for (name, note) in [
        ("x ↦ (x, t(x))", "t(x) lies in C_{n+1}; the second component of Tot′_n is C_{n-1}"),
        ("x ↦ (x, -t(x))", "t(x) lies in C_{n+1}; the second component of Tot′_n is C_{n-1}"),
        ("x ↦ (t(x), x)", "t(x) lies in C_{n+1}; the first component of Tot′_n is C_n"),
        ("x ↦ (-t(x), x)", "t(x) lies in C_{n+1}; the first component of Tot′_n is C_n"),
    ] {
        candidates.push(CandidateOutcome { name: name.into(), well_typed: false, chain_map: None, note: note.into() });
    }

    // Section x ↦ (x, 0).
    {
        let maps = (0..=top)
            .map(|n| {
                let rows = tot_prime.dim(n);
                SparseMatrix::from_normalized_columns(rows, (0..chain.dim(n)).map(|i| vec![(i, k.one())]).collect())
            })
            .collect();
        let f = ChainMap::new("x ↦ (x, 0)", maps);
        let ok = f.verify(&chain, &tot_prime).is_ok();
        candidates.push(CandidateOutcome {
            name: f.label.clone(),
            well_typed: true,
            chain_map: Some(ok),
            note: "inclusion of the first column".into(),
        });
        if ok {
            sections.push((f.label.clone(), f));
        }
    }

    // Projections (x, y) ↦ x + σ g(y) with g built from t and 1 - λ.
    let t_at = |n: usize| -> Result<SparseMatrix<K::Elem>> { ops.t_shift(n) };
    type Builder<'a, E> = Box<dyn Fn(usize) -> Result<SparseMatrix<E>> + 'a>;
    let shapes: Vec<(&str, Builder<'_, K::Elem>)> = vec![
        ("t", Box::new(&t_at)),
        ("(1-λ)t", Box::new(|n| one_minus(k, &ops.lambda(n)?)?.mul(k, &t_at(n)?))),
        ("t(1-λ)", Box::new(|n| t_at(n)?.mul(k, &one_minus(k, &ops.lambda(n - 1)?)?))),
    ];
    for (gname, g) in &shapes {
        for sigma in [1i64, -1] {
            let name = format!("(x, y) ↦ x {} {gname}(y)", if sigma > 0 { "+" } else { "-" });
            let mut maps = Vec::with_capacity(top + 1);
            for n in 0..=top {
                let dn = chain.dim(n);
                let gm = if n == 0 { None } else { Some(g(n)?.scale(k, &k.from_i64(sigma))) };
                let total = tot_prime.dim(n);
                let m = build_columns(k, dn, total, |j| {
                    if j < dn {
                        vec![(j, k.one())]
                    } else {
                        gm.as_ref().expect("degree >= 1").col(j - dn).to_vec()
                    }
                });
                maps.push(m);
            }
            let f = ChainMap::new(name.clone(), maps);
            let ok = f.verify(&tot_prime, &chain).is_ok();
            candidates.push(CandidateOutcome {
                name: name.clone(),
                well_typed: true,
                chain_map: Some(ok),
                note: "projection Tot′ → C_•".into(),
            });
            if ok {
                projections.push((name, f));
            }
        }
    }

    Ok(CyclicBicomplex {
        bicomplex,
        chain,
        tot,
        tot_prime,
        tot_shift2,
        inclusion,
        truncation,
        candidates,
        projections,
        sections,
    })
}
