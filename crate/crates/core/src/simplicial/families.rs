//! The concrete families: the bar module ℬ, the simplicial algebra 𝒜, and
//! the coefficient families ℒ, ℋ, 𝒮, 𝒞.

use serde::Serialize;

use super::{Orientation, Radix, SimplicialFamily};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::{build_columns, normalize, SparseMatrix, SparseVec};
use crate::structure::{Bimodule, Triple};
use crate::tensor::{TensorShape, TensorOps};

fn e<K: Field>(k: &K, i: usize) -> SparseVec<K::Elem> {
    vec![(i, k.one())]
}

/// Basis layout of `A_n = A ⊗ B^{⊗(2n+1)} ⊗ A^op`, factors ordered
/// `(a, α_1..α_n, γ, β_1..β_n, b)`.
fn algebra_radix<K: Field>(t: &Triple<K>, n: usize, cap: u128) -> Result<Radix> {
    let mut r = vec![t.dim_a()];
    r.extend(std::iter::repeat_n(t.dim_b(), 2 * n + 1));
    r.push(t.dim_a());
    Radix::new(r, cap)
}

/// Digits of an `A_n` basis element split into its named factors.
struct AlgebraDigits<'d> {
    a: usize,
    alpha: &'d [usize],
    gamma: usize,
    beta: &'d [usize],
    b: usize,
}

fn split(d: &[usize], n: usize) -> AlgebraDigits<'_> {
    AlgebraDigits { a: d[0], alpha: &d[1..=n], gamma: d[n + 1], beta: &d[n + 2..2 * n + 2], b: d[2 * n + 2] }
}

/// `ε(α_1 ⋯ α_n γ β_1 ⋯ β_n)` in `A`.
fn epsilon_of_all<K: Field>(t: &Triple<K>, d: &AlgebraDigits<'_>) -> SparseVec<K::Elem> {
    let k = t.field();
    let mut prod = e(k, d.gamma);
    for &x in d.alpha.iter().chain(d.beta) {
        prod = t.b.mul_sparse(&prod, &e(k, x));
    }
    t.epsilon_of(&prod)
}

/// The simplicial algebra 𝒜(A, B, ε) with its degreewise products.
#[derive(Clone, Debug)]
pub struct SimplicialAlgebra<K: Field> {
    pub family: SimplicialFamily<K>,
    triple: Triple<K>,
    layouts: Vec<Radix>,
}

impl<K: Field> SimplicialAlgebra<K> {
    pub fn field(&self) -> &K {
        self.triple.field()
    }

    pub fn triple(&self) -> &Triple<K> {
        &self.triple
    }

    pub fn dim(&self, n: usize) -> usize {
        self.layouts[n].size()
    }

    /// Product of two basis elements of `A_n`; the last factor multiplies in `A^op`.
    pub fn mul(&self, n: usize, u: usize, v: usize) -> SparseVec<K::Elem> {
        let t = &self.triple;
        let r = &self.layouts[n];
        let (du, dv) = (r.decode(u), r.decode(v));
        let last = du.len() - 1;
        let slots: Vec<SparseVec<K::Elem>> = (0..=last)
            .map(|s| match s {
                0 => t.a.basis_product(du[0], dv[0]).to_vec(),
                s if s == last => t.a.basis_product(dv[s], du[s]).to_vec(),
                s => t.b.basis_product(du[s], dv[s]).to_vec(),
            })
            .collect();
        r.product(t.field(), &slots)
    }

    pub fn mul_vec(&self, n: usize, x: &[(usize, K::Elem)], y: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        let k = self.field();
        let mut out = Vec::new();
        for (u, c) in x {
            for (v, d) in y {
                let cd = k.mul(c, d);
                out.extend(self.mul(n, *u, *v).into_iter().map(|(i, x)| (i, k.mul(&cd, &x))));
            }
        }
        normalize(k, out)
    }

    pub fn unit(&self, n: usize) -> SparseVec<K::Elem> {
        let t = &self.triple;
        let r = &self.layouts[n];
        let mut slots = vec![t.a.unit().to_vec()];
        slots.extend(std::iter::repeat_n(t.b.unit().to_vec(), 2 * n + 1));
        slots.push(t.a.unit().to_vec());
        r.product(t.field(), &slots)
    }
}

fn algebra_face<K: Field>(t: &Triple<K>, n: usize, i: usize, d: &AlgebraDigits<'_>) -> Vec<SparseVec<K::Elem>> {
    let k = t.field();
    let eb = |x: usize| e(k, x);
    let bmul = |x: usize, y: usize| t.b.basis_product(x, y).to_vec();
    let a = if i == 0 { t.a.mul_sparse(&e(k, d.a), t.epsilon(d.alpha[0])) } else { e(k, d.a) };
    let merged = |list: &[usize]| -> Vec<SparseVec<K::Elem>> {
        (1..n)
            .map(|q| {
                if i == 0 {
                    eb(list[q])
                } else if i == n || q < i {
                    eb(list[q - 1])
                } else if q == i {
                    bmul(list[q - 1], list[q])
                } else {
                    eb(list[q])
                }
            })
            .collect()
    };
    let gamma = if i == 0 {
        bmul(d.gamma, d.beta[0])
    } else if i == n {
        bmul(d.alpha[n - 1], d.gamma)
    } else {
        eb(d.gamma)
    };
    let b = if i == n { t.a.mul_sparse(t.epsilon(d.beta[n - 1]), &e(k, d.b)) } else { e(k, d.b) };
    let mut slots = vec![a];
    slots.extend(merged(d.alpha));
    slots.push(gamma);
    slots.extend(merged(d.beta));
    slots.push(b);
    slots
}

fn algebra_degeneracy<K: Field>(t: &Triple<K>, i: usize, d: &AlgebraDigits<'_>) -> Vec<SparseVec<K::Elem>> {
    let k = t.field();
    let insert = |list: &[usize]| -> Vec<SparseVec<K::Elem>> {
        let mut v: Vec<SparseVec<K::Elem>> = list.iter().map(|&x| e(k, x)).collect();
        v.insert(i, t.b.unit().to_vec());
        v
    };
    let mut slots = vec![e(k, d.a)];
    slots.extend(insert(d.alpha));
    slots.push(e(k, d.gamma));
    slots.extend(insert(d.beta));
    slots.push(e(k, d.b));
    slots
}

/// Builds 𝒜(A, B, ε) through degree `top`.
pub fn build_simplicial_algebra<K: Field>(t: &Triple<K>, top: usize, cap: u128) -> Result<SimplicialAlgebra<K>> {
    let k = t.field();
    let layouts = (0..=top).map(|n| algebra_radix(t, n, cap)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = layouts.iter().map(Radix::size).collect();
    let mut faces = vec![Vec::new(); top + 1];
    let mut degeneracies = vec![Vec::new(); top + 1];
    for n in 1..=top {
        faces[n] = (0..=n)
            .map(|i| {
                build_columns(k, dims[n - 1], dims[n], |j| {
                    let d = layouts[n].decode(j);
                    let slots = algebra_face(t, n, i, &split(&d, n));
                    layouts[n - 1].product(k, &slots)
                })
            })
            .collect();
    }
    for n in 0..top {
        degeneracies[n] = (0..=n)
            .map(|i| {
                build_columns(k, dims[n + 1], dims[n], |j| {
                    let d = layouts[n].decode(j);
                    layouts[n + 1].product(k, &algebra_degeneracy(t, i, &split(&d, n)))
                })
            })
            .collect();
    }
    let family = SimplicialFamily::new("𝒜(A,B,ε)", Orientation::Simplicial, dims, faces, degeneracies)?;
    Ok(SimplicialAlgebra { family, triple: t.clone(), layouts })
}

/// The coefficient families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoefficientKind {
    /// `ℋ^n = (A ⊗ B^{⊗n})*`, co-simplicial, left module.
    H,
    /// `L_n = A ⊗ B^{⊗n}`, simplicial, right module.
    L,
    /// `S_n = M`, simplicial, right module.
    S,
    /// `𝒞^n = M`, co-simplicial, left module.
    C,
}

impl CoefficientKind {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientKind::H => "ℋ",
            CoefficientKind::L => "ℒ",
            CoefficientKind::S => "𝒮(M)",
            CoefficientKind::C => "𝒞(M)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ActionKind {
    Bar,
    L,
    H,
    S,
    C,
}

/// Degreewise action of 𝒜(A, B, ε) on a family, evaluated on basis pairs.
#[derive(Clone, Debug)]
pub struct ActionFamily<K: Field> {
    pub label: String,
    kind: ActionKind,
    triple: Triple<K>,
    module: Option<Bimodule<K>>,
    algebra: Vec<Radix>,
    /// Bases of the acted-on spaces: `Some(shape)` for ℬ, the radix otherwise.
    shapes: Vec<Option<TensorShape>>,
    radices: Vec<Option<Radix>>,
    dims: Vec<usize>,
}

impl<K: Field> ActionFamily<K> {
    /// Whether the algebra acts on the left.
    pub fn left(&self) -> bool {
        matches!(self.kind, ActionKind::Bar | ActionKind::H | ActionKind::C)
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// `u·x` for a left action, `x·u` for a right one, with `u` a basis
    /// element of `A_n` and `x` one of `X_n`.
    pub fn act(&self, n: usize, u: usize, x: usize) -> SparseVec<K::Elem> {
        let t = &self.triple;
        let k = t.field();
        let du = self.algebra[n].decode(u);
        let d = split(&du, n);
        match self.kind {
            ActionKind::Bar => {
                let shape = self.shapes[n].as_ref().expect("bar shape");
                let x = shape.decode_unchecked(x);
                let p = n + 2;
                let mut slots: Vec<SparseVec<K::Elem>> = Vec::with_capacity(p + shape.n_pairs());
                for q in 0..p {
                    slots.push(if q == 0 {
                        t.a.basis_product(d.a, x.a[0]).to_vec()
                    } else if q == p - 1 {
                        t.a.basis_product(x.a[q], d.b).to_vec()
                    } else {
                        e(k, x.a[q])
                    });
                }
                for i in 0..p {
                    for j in i + 1..p {
                        let b = x.pair(i, j);
                        slots.push(if i == 0 && j <= n {
                            t.b.basis_product(d.alpha[j - 1], b).to_vec()
                        } else if i == 0 {
                            t.b.basis_product(d.gamma, b).to_vec()
                        } else if j == p - 1 {
                            t.b.basis_product(b, d.beta[i - 1]).to_vec()
                        } else {
                            e(k, b)
                        });
                    }
                }
                let refs: Vec<&[(usize, K::Elem)]> = slots.iter().map(|v| v.as_slice()).collect();
                let mut out = Vec::new();
                shape.expand_into(k, &k.one(), &refs, &mut out);
                normalize(k, out)
            }
            ActionKind::L => self.act_l(n, &d, x),
            ActionKind::H => {
                // (u·φ)(x) = φ(x·u), so u·e*_y = Σ_x [x·u]_y e*_x
                let mut out = Vec::new();
                for z in 0..self.dims[n] {
                    if let Some((_, c)) = self.act_l(n, &d, z).into_iter().find(|(i, _)| *i == x) {
                        out.push((z, c));
                    }
                }
                out
            }
            ActionKind::S => {
                let m = self.module.as_ref().expect("module");
                let right = t.a.mul_sparse(&e(k, d.a), &epsilon_of_all(t, &d));
                m.act_right(&m.act_left(&e(k, d.b), &e(k, x)), &right)
            }
            ActionKind::C => {
                let m = self.module.as_ref().expect("module");
                let left = t.a.mul_sparse(&e(k, d.a), &epsilon_of_all(t, &d));
                m.act_right(&m.act_left(&left, &e(k, x)), &e(k, d.b))
            }
        }
    }

    /// `(a_0 ⊗ b_1..b_n)·u = b a_0 a ε(γ) ⊗ α_1b_1β_1 ⊗ … ⊗ α_nb_nβ_n`.
    fn act_l(&self, n: usize, d: &AlgebraDigits<'_>, x: usize) -> SparseVec<K::Elem> {
        let t = &self.triple;
        let k = t.field();
        let r = self.radices[n].as_ref().expect("radix");
        let dx = r.decode(x);
        let a = t.a.mul_sparse(&t.a.mul_sparse(t.a.basis_product(d.b, dx[0]), &e(k, d.a)), t.epsilon(d.gamma));
        let mut slots = vec![a];
        for q in 1..=n {
            slots.push(t.b.mul_sparse(t.b.basis_product(d.alpha[q - 1], dx[q]), &e(k, d.beta[q - 1])));
        }
        r.product(k, &slots)
    }

    /// Bilinear extension of [`act`](Self::act).
    pub fn act_vec(&self, n: usize, u: &[(usize, K::Elem)], x: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        let k = self.triple.field();
        let mut out = Vec::new();
        for (ui, c) in u {
            for (xi, d) in x {
                let cd = k.mul(c, d);
                out.extend(self.act(n, *ui, *xi).into_iter().map(|(i, v)| (i, k.mul(&cd, &v))));
            }
        }
        normalize(k, out)
    }
}

/// Builds ℬ(A, B, ε) through degree `top`: `B_n = A^{⊗(n+2)} ⊗ B^{⊗(n+1)(n+2)/2}`,
/// `δ_i` merging positions `i` and `i + 1`, `σ_i` inserting units at position `i + 1`.
pub fn build_bar_family<K: Field>(t: &Triple<K>, top: usize, cap: u128) -> Result<(SimplicialFamily<K>, ActionFamily<K>)> {
    let k = t.field();
    let ops = TensorOps::new(t);
    let shapes: Vec<TensorShape> = (0..=top).map(|n| ops.shape(n + 2)).collect();
    let dims = shapes.iter().map(|s| s.dim(cap)).collect::<Result<Vec<_>>>()?;
    let algebra = (0..=top).map(|n| algebra_radix(t, n, u128::MAX)).collect::<Result<Vec<_>>>()?;
    let one = k.one();
    let mut faces = vec![Vec::new(); top + 1];
    let mut degeneracies = vec![Vec::new(); top + 1];
    for n in 1..=top {
        faces[n] = (0..=n)
            .map(|i| {
                build_columns(k, dims[n - 1], dims[n], |j| {
                    let mut out = Vec::new();
                    ops.merge_into(&shapes[n].decode_unchecked(j), i, i + 1, false, &one, &mut out);
                    out
                })
            })
            .collect();
    }
    for n in 0..top {
        degeneracies[n] = (0..=n)
            .map(|i| {
                build_columns(k, dims[n + 1], dims[n], |j| {
                    let mut out = Vec::new();
                    ops.insert_unit_into(&shapes[n].decode_unchecked(j), i + 1, &one, &mut out);
                    out
                })
            })
            .collect();
    }
    let family = SimplicialFamily::new("ℬ(A,B,ε)", Orientation::Simplicial, dims.clone(), faces, degeneracies)?;
    let action = ActionFamily {
        label: "𝒜 on ℬ".into(),
        kind: ActionKind::Bar,
        triple: t.clone(),
        module: None,
        algebra,
        shapes: shapes.into_iter().map(Some).collect(),
        radices: vec![None; top + 1],
        dims,
    };
    Ok((family, action))
}

fn l_radix<K: Field>(t: &Triple<K>, n: usize, cap: u128) -> Result<Radix> {
    let mut r = vec![t.dim_a()];
    r.extend(std::iter::repeat_n(t.dim_b(), n));
    Radix::new(r, cap)
}

/// Faces and degeneracies of ℒ through degree `top`.
fn l_maps<K: Field>(
    t: &Triple<K>,
    radices: &[Radix],
) -> (Vec<Vec<SparseMatrix<K::Elem>>>, Vec<Vec<SparseMatrix<K::Elem>>>) {
    let k = t.field();
    let top = radices.len() - 1;
    let dims: Vec<usize> = radices.iter().map(Radix::size).collect();
    let mut faces = vec![Vec::new(); top + 1];
    let mut degeneracies = vec![Vec::new(); top + 1];
    for n in 1..=top {
        faces[n] = (0..=n)
            .map(|i| {
                build_columns(k, dims[n - 1], dims[n], |j| {
                    let d = radices[n].decode(j);
                    let (a, b) = (d[0], &d[1..]);
                    let mut slots: Vec<SparseVec<K::Elem>> = Vec::with_capacity(n);
                    if i == 0 {
                        slots.push(t.a.mul_sparse(&e(k, a), t.epsilon(b[0])));
                        slots.extend(b[1..].iter().map(|&x| e(k, x)));
                    } else if i == n {
                        slots.push(t.a.mul_sparse(t.epsilon(b[n - 1]), &e(k, a)));
                        slots.extend(b[..n - 1].iter().map(|&x| e(k, x)));
                    } else {
                        slots.push(e(k, a));
                        for q in 0..n - 1 {
                            slots.push(match q.cmp(&(i - 1)) {
                                std::cmp::Ordering::Less => e(k, b[q]),
                                std::cmp::Ordering::Equal => t.b.basis_product(b[q], b[q + 1]).to_vec(),
                                std::cmp::Ordering::Greater => e(k, b[q + 1]),
                            });
                        }
                    }
                    radices[n - 1].product(k, &slots)
                })
            })
            .collect();
    }
    for n in 0..top {
        degeneracies[n] = (0..=n)
            .map(|i| {
                build_columns(k, dims[n + 1], dims[n], |j| {
                    let d = radices[n].decode(j);
                    let mut slots: Vec<SparseVec<K::Elem>> = d.iter().map(|&x| e(k, x)).collect();
                    slots.insert(i + 1, t.b.unit().to_vec());
                    radices[n + 1].product(k, &slots)
                })
            })
            .collect();
    }
    (faces, degeneracies)
}

/// Builds one of the coefficient families through degree `top`. `m` is
/// required for 𝒮 and 𝒞 and ignored otherwise.
pub fn build_coefficient_family<K: Field>(
    t: &Triple<K>,
    m: Option<&Bimodule<K>>,
    kind: CoefficientKind,
    top: usize,
    cap: u128,
) -> Result<(SimplicialFamily<K>, ActionFamily<K>)> {
    let k = t.field();
    let algebra = (0..=top).map(|n| algebra_radix(t, n, u128::MAX)).collect::<Result<Vec<_>>>()?;
    let action = |label: &str, kind: ActionKind, radices: Vec<Option<Radix>>, dims: Vec<usize>| ActionFamily {
        label: label.into(),
        kind,
        triple: t.clone(),
        module: m.cloned(),
        algebra: algebra.clone(),
        shapes: vec![None; top + 1],
        radices,
        dims,
    };
    match kind {
        CoefficientKind::L | CoefficientKind::H => {
            // ℋ's cofaces out of degree top-1 are dual to ℒ's faces into it
            let radices = (0..=top).map(|n| l_radix(t, n, cap)).collect::<Result<Vec<_>>>()?;
            let dims: Vec<usize> = radices.iter().map(Radix::size).collect();
            let (faces, degeneracies) = l_maps(t, &radices);
            let radices: Vec<Option<Radix>> = radices.into_iter().map(Some).collect();
            if kind == CoefficientKind::L {
                let fam = SimplicialFamily::new("ℒ(A,B,ε)", Orientation::Simplicial, dims.clone(), faces, degeneracies)?;
                return Ok((fam, action("𝒜 on ℒ", ActionKind::L, radices, dims)));
            }
            let mut cofaces = vec![Vec::new(); top + 1];
            let mut codegeneracies = vec![Vec::new(); top + 1];
            for n in 0..top {
                cofaces[n] = faces[n + 1].iter().map(SparseMatrix::transpose).collect();
            }
            for n in 1..=top {
                codegeneracies[n] = degeneracies[n - 1].iter().map(SparseMatrix::transpose).collect();
            }
            let fam = SimplicialFamily::new("ℋ(A,B,ε)", Orientation::Cosimplicial, dims.clone(), cofaces, codegeneracies)?;
            Ok((fam, action("𝒜 on ℋ", ActionKind::H, radices, dims)))
        }
        CoefficientKind::S | CoefficientKind::C => {
            let m = m.ok_or_else(|| Error::Missing(format!("{} needs a coefficient bimodule", kind.name())))?;
            let d = m.dim();
            let dims = vec![d; top + 1];
            let id = SparseMatrix::identity(k, d);
            let (orientation, label, act, faces, degeneracies) = if kind == CoefficientKind::S {
                (
                    Orientation::Simplicial,
                    "𝒮(M)",
                    ActionKind::S,
                    (0..=top).map(|n| vec![id.clone(); if n == 0 { 0 } else { n + 1 }]).collect(),
                    (0..=top).map(|n| vec![id.clone(); if n == top { 0 } else { n + 1 }]).collect(),
                )
            } else {
                (
                    Orientation::Cosimplicial,
                    "𝒞(M)",
                    ActionKind::C,
                    (0..=top).map(|n| vec![id.clone(); if n == top { 0 } else { n + 2 }]).collect(),
                    (0..=top).map(|n| vec![id.clone(); n]).collect(),
                )
            };
            let fam = SimplicialFamily::new(label, orientation, dims.clone(), faces, degeneracies)?;
            Ok((fam, action(&format!("𝒜 on {label}"), act, vec![None; top + 1], dims)))
        }
    }
}
