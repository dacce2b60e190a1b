//! Simplicial and co-simplicial families as explicit per-degree matrices,
//! with checkers for the simplicial identities and for module compatibility.
//!
//! Families are materialized face by face. Actions of the simplicial algebra
//! are evaluated on demand from basis pairs and never stored as tensors.

mod equivariant;
mod families;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::{normalize, SparseMatrix, SparseVec};

pub use equivariant::{coboundary_of_equivariant, equivariant_hom_basis, equivariant_hom_dim, psi, EquivariantHom};
pub use families::{
    build_bar_family, build_coefficient_family, build_simplicial_algebra, ActionFamily, CoefficientKind, SimplicialAlgebra,
};

/// Default seed for sampled compatibility checks.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Pairs sampled per `(n, i)` above the exhaustive degrees.
pub const DEFAULT_SAMPLES: usize = 512;

/// Highest degree checked exhaustively by the compatibility checkers.
pub const EXHAUSTIVE_UP_TO: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// Faces `X_n -> X_{n-1}`, degeneracies `X_n -> X_{n+1}`.
    Simplicial,
    /// Cofaces `X^n -> X^{n+1}`, codegeneracies `X^n -> X^{n-1}`.
    Cosimplicial,
}

/// A graded family of spaces with structure maps.
///
/// Simplicial: `face(n, i)` for `1 <= n <= top`, `0 <= i <= n`, and
/// `degeneracy(n, i)` for `n < top`, `0 <= i <= n`.
///
/// Co-simplicial: `face(n, i)` is the coface `δ^i: X^n -> X^{n+1}` for
/// `n < top`, `0 <= i <= n + 1`, and `degeneracy(n, i)` is the codegeneracy
/// `σ^i: X^n -> X^{n-1}` for `1 <= n <= top`, `0 <= i <= n - 1`.
#[derive(Clone, Debug)]
pub struct SimplicialFamily<K: Field> {
    pub label: String,
    pub orientation: Orientation,
    dims: Vec<usize>,
    faces: Vec<Vec<SparseMatrix<K::Elem>>>,
    degeneracies: Vec<Vec<SparseMatrix<K::Elem>>>,
}

impl<K: Field> SimplicialFamily<K> {
    /// Assembles a family, checking counts and shapes.
    pub fn new(
        label: impl Into<String>,
        orientation: Orientation,
        dims: Vec<usize>,
        faces: Vec<Vec<SparseMatrix<K::Elem>>>,
        degeneracies: Vec<Vec<SparseMatrix<K::Elem>>>,
    ) -> Result<Self> {
        let f = SimplicialFamily { label: label.into(), orientation, dims, faces, degeneracies };
        f.check_shapes()?;
        Ok(f)
    }

    fn check_shapes(&self) -> Result<()> {
        let top = self.top();
        if self.faces.len() != top + 1 || self.degeneracies.len() != top + 1 {
            return Err(Error::DimensionMismatch(format!("{}: structure maps for {} degrees", self.label, self.dims.len())));
        }
        for n in 0..=top {
            for i in 0..self.face_count(n) {
                let (src, dst) = self.face_ends(n);
                let m = &self.faces[n][i];
                if m.shape() != (self.dims[dst], self.dims[src]) {
                    return Err(Error::DimensionMismatch(format!("{}: face ({n}, {i}) has shape {:?}", self.label, m.shape())));
                }
            }
            if self.faces[n].len() != self.face_count(n) || self.degeneracies[n].len() != self.degeneracy_count(n) {
                return Err(Error::DimensionMismatch(format!("{}: wrong number of maps at degree {n}", self.label)));
            }
            for i in 0..self.degeneracy_count(n) {
                let (src, dst) = self.degeneracy_ends(n);
                let m = &self.degeneracies[n][i];
                if m.shape() != (self.dims[dst], self.dims[src]) {
                    return Err(Error::DimensionMismatch(format!(
                        "{}: degeneracy ({n}, {i}) has shape {:?}",
                        self.label,
                        m.shape()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// Number of faces (cofaces) leaving degree `n`.
    pub fn face_count(&self, n: usize) -> usize {
        match self.orientation {
            Orientation::Simplicial if n == 0 => 0,
            Orientation::Simplicial => n + 1,
            Orientation::Cosimplicial if n == self.top() => 0,
            Orientation::Cosimplicial => n + 2,
        }
    }

    /// Number of degeneracies (codegeneracies) leaving degree `n`.
    pub fn degeneracy_count(&self, n: usize) -> usize {
        match self.orientation {
            Orientation::Simplicial if n == self.top() => 0,
            Orientation::Simplicial => n + 1,
            Orientation::Cosimplicial => n,
        }
    }

    fn face_ends(&self, n: usize) -> (usize, usize) {
        match self.orientation {
            Orientation::Simplicial => (n, n - 1),
            Orientation::Cosimplicial => (n, n + 1),
        }
    }

    fn degeneracy_ends(&self, n: usize) -> (usize, usize) {
        match self.orientation {
            Orientation::Simplicial => (n, n + 1),
            Orientation::Cosimplicial => (n, n - 1),
        }
    }

    pub fn face(&self, n: usize, i: usize) -> Option<&SparseMatrix<K::Elem>> {
        self.faces.get(n)?.get(i)
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> Option<&SparseMatrix<K::Elem>> {
        self.degeneracies.get(n)?.get(i)
    }

    /// Mutable access for fault injection. Shapes are not rechecked.
    pub fn face_mut(&mut self, n: usize, i: usize) -> Option<&mut SparseMatrix<K::Elem>> {
        self.faces.get_mut(n)?.get_mut(i)
    }

    pub fn degeneracy_mut(&mut self, n: usize, i: usize) -> Option<&mut SparseMatrix<K::Elem>> {
        self.degeneracies.get_mut(n)?.get_mut(i)
    }

    fn face_or_err(&self, n: usize, i: usize) -> Result<&SparseMatrix<K::Elem>> {
        self.face(n, i).ok_or_else(|| Error::OutOfRange(format!("{}: no face ({n}, {i})", self.label)))
    }

    fn degeneracy_or_err(&self, n: usize, i: usize) -> Result<&SparseMatrix<K::Elem>> {
        self.degeneracy(n, i).ok_or_else(|| Error::OutOfRange(format!("{}: no degeneracy ({n}, {i})", self.label)))
    }

    /// The dual simplicial family: every structure map transposed, with
    /// `face(n + 1, i) = coface(n, i)ᵀ` and `degeneracy(n - 1, i) = codegeneracy(n, i)ᵀ`.
    /// A simplicial family is returned unchanged.
    pub fn to_simplicial(&self) -> SimplicialFamily<K> {
        if self.orientation == Orientation::Simplicial {
            return self.clone();
        }
        let top = self.top();
        let mut faces: Vec<Vec<SparseMatrix<K::Elem>>> = vec![Vec::new(); top + 1];
        let mut degeneracies: Vec<Vec<SparseMatrix<K::Elem>>> = vec![Vec::new(); top + 1];
        for n in 0..top {
            faces[n + 1] = self.faces[n].iter().map(|m| m.transpose()).collect();
        }
        for n in 1..=top {
            degeneracies[n - 1] = self.degeneracies[n].iter().map(|m| m.transpose()).collect();
        }
        SimplicialFamily {
            label: format!("{} (dual)", self.label),
            orientation: Orientation::Simplicial,
            dims: self.dims.clone(),
            faces,
            degeneracies,
        }
    }
}

/// The simplicial relations, named by the maps involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Relation {
    /// `δ_i δ_j = δ_{j-1} δ_i` for `i < j`.
    FaceFace,
    /// `σ_i σ_j = σ_{j+1} σ_i` for `i <= j`.
    DegeneracyDegeneracy,
    /// `δ_i σ_j = σ_{j-1} δ_i` for `i < j`.
    FaceBelow,
    /// `δ_j σ_j = δ_{j+1} σ_j = id`.
    FaceIdentity,
    /// `δ_i σ_j = σ_j δ_{i-1}` for `i > j + 1`.
    FaceAbove,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::FaceFace => "δ_iδ_j = δ_{j-1}δ_i",
            Relation::DegeneracyDegeneracy => "σ_iσ_j = σ_{j+1}σ_i",
            Relation::FaceBelow => "δ_iσ_j = σ_{j-1}δ_i",
            Relation::FaceIdentity => "δ_iσ_j = id",
            Relation::FaceAbove => "δ_iσ_j = σ_jδ_{i-1}",
        })
    }
}

/// One relation instance on `X_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IdentityCheck {
    pub n: usize,
    pub relation: Relation,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at n={}, i={}, j={}", self.relation, self.n, self.i, self.j)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub label: String,
    pub orientation: Orientation,
    pub top: usize,
    pub checked: usize,
    /// Sorted by degree, then relation, then indices.
    pub failures: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.failures.first()
    }
}

fn all_checks(top: usize) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<IdentityCheck>, n, relation, i, j| out.push(IdentityCheck { n, relation, i, j });
    for n in 0..=top {
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    push(&mut out, n, Relation::FaceFace, i, j);
                }
            }
        }
        if n + 2 <= top {
            for j in 0..=n {
                for i in 0..=j {
                    push(&mut out, n, Relation::DegeneracyDegeneracy, i, j);
                }
            }
        }
        if n < top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let relation = if i < j {
                        Relation::FaceBelow
                    } else if i == j || i == j + 1 {
                        Relation::FaceIdentity
                    } else {
                        Relation::FaceAbove
                    };
                    push(&mut out, n, relation, i, j);
                }
            }
        }
    }
    out
}

fn compose<K: Field>(k: &K, outer: &SparseMatrix<K::Elem>, inner: &SparseMatrix<K::Elem>) -> Option<SparseMatrix<K::Elem>> {
    outer.mul(k, inner).ok()
}

fn holds<K: Field>(k: &K, f: &SimplicialFamily<K>, c: &IdentityCheck) -> bool {
    let (n, i, j) = (c.n, c.i, c.j);
    let face = |m: usize, x: usize| f.face_or_err(m, x).ok();
    let deg = |m: usize, x: usize| f.degeneracy_or_err(m, x).ok();
    let pair = |a: Option<&SparseMatrix<K::Elem>>, b: Option<&SparseMatrix<K::Elem>>| match (a, b) {
        (Some(a), Some(b)) => compose(k, a, b),
        _ => None,
    };
    match c.relation {
        Relation::FaceFace => {
            let lhs = pair(face(n - 1, i), face(n, j));
            let rhs = pair(face(n - 1, j - 1), face(n, i));
            lhs.is_some() && lhs == rhs
        }
        Relation::DegeneracyDegeneracy => {
            let lhs = pair(deg(n + 1, i), deg(n, j));
            let rhs = pair(deg(n + 1, j + 1), deg(n, i));
            lhs.is_some() && lhs == rhs
        }
        Relation::FaceBelow => {
            let lhs = pair(face(n + 1, i), deg(n, j));
            let rhs = pair(deg(n - 1, j - 1), face(n, i));
            lhs.is_some() && lhs == rhs
        }
        Relation::FaceIdentity => {
            let lhs = pair(face(n + 1, i), deg(n, j));
            lhs.is_some_and(|m| m == SparseMatrix::identity(k, f.dim(n)))
        }
        Relation::FaceAbove => {
            let lhs = pair(face(n + 1, i), deg(n, j));
            let rhs = pair(deg(n - 1, j), face(n, i - 1));
            lhs.is_some() && lhs == rhs
        }
    }
}

/// Checks every simplicial relation whose spaces lie in degrees `0..=top`.
///
/// A co-simplicial family is checked through its dual simplicial family, on
/// which the co-simplicial relations become the simplicial ones verbatim.
/// A map of the wrong shape counts as a failure of every relation using it.
pub fn check_simplicial_identities<K: Field>(k: &K, family: &SimplicialFamily<K>, top: usize) -> IdentityReport {
    let f = family.to_simplicial();
    let top = top.min(f.top());
    let checks = all_checks(top);
    let mut failures: Vec<IdentityCheck> = checks.par_iter().filter(|c| !holds(k, &f, c)).cloned().collect();
    failures.sort();
    IdentityReport { label: family.label.clone(), orientation: family.orientation, top, checked: checks.len(), failures }
}

/// How the basis pairs at one `(n, i)` were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StructureMap {
    Face,
    Degeneracy,
}

/// Outcome for one structure map.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub map: StructureMap,
    pub n: usize,
    pub i: usize,
    pub mode: CheckMode,
    pub pairs: usize,
    /// Failing `(algebra basis index, module basis index)` pairs, at most eight.
    pub witnesses: Vec<(usize, usize)>,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityReport {
    pub label: String,
    pub seed: u64,
    pub checks: Vec<PairCheck>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn first_failure(&self) -> Option<&PairCheck> {
        self.checks.iter().find(|c| c.failed > 0)
    }

    pub fn pairs(&self) -> usize {
        self.checks.iter().map(|c| c.pairs).sum()
    }
}

/// Options shared by the pair-sampling checkers.
#[derive(Clone, Copy, Debug)]
pub struct SampleOptions {
    pub seed: u64,
    pub samples: usize,
    pub exhaustive_up_to: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { seed: DEFAULT_SEED, samples: DEFAULT_SAMPLES, exhaustive_up_to: EXHAUSTIVE_UP_TO }
    }
}

/// Basis pairs from `0..p × 0..q`, all of them or a seeded sample.
fn pairs_for(opts: &SampleOptions, degree: usize, map: StructureMap, i: usize, p: usize, q: usize) -> (CheckMode, Vec<(usize, usize)>) {
    if degree <= opts.exhaustive_up_to || p * q <= opts.samples {
        let all = (0..p).flat_map(|u| (0..q).map(move |x| (u, x))).collect();
        return (CheckMode::Exhaustive, all);
    }
    let tag = match map {
        StructureMap::Face => 0u64,
        StructureMap::Degeneracy => 1,
    };
    let seed = opts.seed ^ ((degree as u64) << 32) ^ ((i as u64) << 8) ^ tag;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..opts.samples).map(|_| (rng.gen_range(0..p), rng.gen_range(0..q))).collect();
    (CheckMode::Sampled { seed, samples: opts.samples }, pairs)
}

fn pair_check(
    map: StructureMap,
    n: usize,
    i: usize,
    mode: CheckMode,
    pairs: &[(usize, usize)],
    ok: impl Fn(usize, usize) -> bool + Sync,
) -> PairCheck {
    let bad: Vec<(usize, usize)> = pairs.par_iter().filter(|(u, x)| !ok(*u, *x)).copied().collect();
    PairCheck { map, n, i, mode, pairs: pairs.len(), failed: bad.len(), witnesses: bad.into_iter().take(8).collect() }
}

fn unit_vec<K: Field>(k: &K, i: usize) -> SparseVec<K::Elem> {
    vec![(i, k.one())]
}

/// Checks that the module structure maps are compatible with the algebra's.
///
/// Simplicial modules (left or right): `δ_i(u·x) = δ_i(u)·δ_i(x)` and the
/// same for `σ_i`. Co-simplicial left modules: `δ^i(δ_i(u)·φ) = u·δ^i(φ)`
/// for `u ∈ A_{n+1}` and `σ^i(σ_i(u)·φ) = u·σ^i(φ)` for `u ∈ A_{n-1}`.
pub fn check_action_compatibility<K: Field>(
    alg: &SimplicialAlgebra<K>,
    module: &SimplicialFamily<K>,
    action: &ActionFamily<K>,
    top: usize,
    opts: &SampleOptions,
) -> Result<CompatibilityReport> {
    let k = alg.field();
    let a = &alg.family;
    let top = top.min(module.top()).min(a.top());
    let mut checks = Vec::new();
    match module.orientation {
        Orientation::Simplicial => {
            for n in 1..=top {
                for i in 0..=n {
                    let (fa, fm) = (a.face_or_err(n, i)?, module.face_or_err(n, i)?);
                    let (mode, pairs) = pairs_for(opts, n, StructureMap::Face, i, a.dim(n), module.dim(n));
                    checks.push(pair_check(StructureMap::Face, n, i, mode, &pairs, |u, x| {
                        let lhs = fm.mul_vec(k, &action.act(n, u, x));
                        let rhs = action.act_vec(n - 1, fa.col(u), fm.col(x));
                        lhs == rhs
                    }));
                }
            }
            for n in 0..top {
                for i in 0..=n {
                    let (sa, sm) = (a.degeneracy_or_err(n, i)?, module.degeneracy_or_err(n, i)?);
                    let (mode, pairs) = pairs_for(opts, n, StructureMap::Degeneracy, i, a.dim(n), module.dim(n));
                    checks.push(pair_check(StructureMap::Degeneracy, n, i, mode, &pairs, |u, x| {
                        let lhs = sm.mul_vec(k, &action.act(n, u, x));
                        let rhs = action.act_vec(n + 1, sa.col(u), sm.col(x));
                        lhs == rhs
                    }));
                }
            }
        }
        Orientation::Cosimplicial => {
            for n in 0..top {
                for i in 0..=n + 1 {
                    let (fa, fm) = (a.face_or_err(n + 1, i)?, module.face_or_err(n, i)?);
                    let (mode, pairs) = pairs_for(opts, n, StructureMap::Face, i, a.dim(n + 1), module.dim(n));
                    checks.push(pair_check(StructureMap::Face, n, i, mode, &pairs, |u, x| {
                        let lhs = fm.mul_vec(k, &action.act_vec(n, fa.col(u), &unit_vec(k, x)));
                        let rhs = action.act_vec(n + 1, &unit_vec(k, u), fm.col(x));
                        lhs == rhs
                    }));
                }
            }
            for n in 1..=top {
                for i in 0..n {
                    let (sa, sm) = (a.degeneracy_or_err(n - 1, i)?, module.degeneracy_or_err(n, i)?);
                    let (mode, pairs) = pairs_for(opts, n, StructureMap::Degeneracy, i, a.dim(n - 1), module.dim(n));
                    checks.push(pair_check(StructureMap::Degeneracy, n, i, mode, &pairs, |u, x| {
                        let lhs = sm.mul_vec(k, &action.act_vec(n, sa.col(u), &unit_vec(k, x)));
                        let rhs = action.act_vec(n - 1, &unit_vec(k, u), sm.col(x));
                        lhs == rhs
                    }));
                }
            }
        }
    }
    Ok(CompatibilityReport { label: format!("{} over {}", module.label, a.label), seed: opts.seed, checks })
}

/// Checks that the faces and degeneracies of a simplicial algebra are unital
/// and multiplicative on basis pairs.
pub fn check_algebra_morphisms<K: Field>(alg: &SimplicialAlgebra<K>, top: usize, opts: &SampleOptions) -> Result<CompatibilityReport> {
    let k = alg.field();
    let a = &alg.family;
    let top = top.min(a.top());
    let mut checks = Vec::new();
    let mut run = |map: StructureMap, n: usize, i: usize, m: &SparseMatrix<K::Elem>, target: usize| {
        let (mode, pairs) = pairs_for(opts, n, map, i, a.dim(n), a.dim(n));
        let unital = m.mul_vec(k, &alg.unit(n)) == alg.unit(target);
        let mut c = pair_check(map, n, i, mode, &pairs, |u, v| {
            m.mul_vec(k, &alg.mul(n, u, v)) == alg.mul_vec(target, m.col(u), m.col(v))
        });
        if !unital {
            c.failed += 1;
        }
        checks.push(c);
    };
    for n in 1..=top {
        for i in 0..=n {
            run(StructureMap::Face, n, i, a.face_or_err(n, i)?, n - 1);
        }
    }
    for n in 0..top {
        for i in 0..=n {
            run(StructureMap::Degeneracy, n, i, a.degeneracy_or_err(n, i)?, n + 1);
        }
    }
    Ok(CompatibilityReport { label: format!("{} morphisms", a.label), seed: opts.seed, checks })
}

/// Spot-checks that an action is unital and associative in each degree.
/// Returns the degrees at which a sampled triple failed.
pub fn check_action_axioms<K: Field>(alg: &SimplicialAlgebra<K>, action: &ActionFamily<K>, top: usize, seed: u64) -> Vec<usize> {
    let k = alg.field();
    let mut bad = Vec::new();
    for n in 0..=top.min(action.top()).min(alg.family.top()) {
        let (p, q) = (alg.family.dim(n), action.dim(n));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let ok = (0..64).all(|_| {
            let (u, v, x) = (rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..q));
            let e = unit_vec(k, x);
            let unital = action.act_vec(n, &alg.unit(n), &e) == e;
            // left: (uv)·x = u·(v·x); right: x·(uv) = (x·u)·v
            let assoc = if action.left() {
                action.act_vec(n, &alg.mul(n, u, v), &e) == action.act_vec(n, &unit_vec(k, u), &action.act(n, v, x))
            } else {
                action.act_vec(n, &alg.mul(n, u, v), &e) == action.act_vec(n, &unit_vec(k, v), &action.act(n, u, x))
            };
            unital && assoc
        });
        if !ok {
            bad.push(n);
        }
    }
    bad
}

/// Mixed-radix basis of a tensor product of several spaces, first factor
/// most significant.
#[derive(Clone, Debug)]
pub(crate) struct Radix {
    radices: Vec<usize>,
    weights: Vec<usize>,
    size: usize,
}

impl Radix {
    pub(crate) fn new(radices: Vec<usize>, cap: u128) -> Result<Self> {
        let mut size: u128 = 1;
        for &r in &radices {
            size = size.saturating_mul(r as u128);
        }
        if size > cap || size > usize::MAX as u128 {
            return Err(Error::DegreeTooLarge { dim: size, cap });
        }
        let mut weights = vec![1usize; radices.len()];
        for s in (0..radices.len().saturating_sub(1)).rev() {
            weights[s] = weights[s + 1] * radices[s + 1];
        }
        Ok(Radix { radices, weights, size: size as usize })
    }

    pub(crate) fn size(&self) -> usize {
        self.size
    }

    pub(crate) fn decode(&self, mut x: usize) -> Vec<usize> {
        self.weights
            .iter()
            .map(|&w| {
                let d = x / w;
                x %= w;
                d
            })
            .collect()
    }

    pub(crate) fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.weights).map(|(d, w)| d * w).sum()
    }

    /// Expands a product of per-factor vectors, appending terms scaled by `c`.
    pub(crate) fn expand<K: Field>(&self, k: &K, c: &K::Elem, slots: &[SparseVec<K::Elem>], out: &mut Vec<(usize, K::Elem)>) {
        debug_assert_eq!(slots.len(), self.radices.len());
        if slots.iter().any(|s| s.is_empty()) || k.is_zero(c) {
            return;
        }
        let mut stack: Vec<(usize, usize, K::Elem)> = vec![(0, 0, c.clone())];
        while let Some((s, idx, coef)) = stack.pop() {
            if s == slots.len() {
                out.push((idx, coef));
                continue;
            }
            for (x, v) in &slots[s] {
                stack.push((s + 1, idx + x * self.weights[s], k.mul(&coef, v)));
            }
        }
    }

    pub(crate) fn product<K: Field>(&self, k: &K, slots: &[SparseVec<K::Elem>]) -> SparseVec<K::Elem> {
        let mut out = Vec::new();
        self.expand(k, &k.one(), slots, &mut out);
        normalize(k, out)
    }
}
