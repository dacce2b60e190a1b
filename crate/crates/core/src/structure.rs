//! Algebras, triples `(A, B, ε)` and B-symmetric bimodules, with exhaustive
//! axiom validation over basis tuples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::{normalize, SparseVec};

/// A coefficient as written in a problem file: a string such as `"-3/4"` or a
/// bare integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Str(String),
}

impl Coeff {
    pub fn parse<K: Field>(&self, k: &K) -> Result<K::Elem> {
        match self {
            Coeff::Int(v) => Ok(k.from_i64(*v)),
            Coeff::Str(s) => k.parse(s.trim()),
        }
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Int(v)
    }
}

impl From<&str> for Coeff {
    fn from(s: &str) -> Self {
        Coeff::Str(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawProduct {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAlgebra {
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Coeff>,
    pub table: Vec<RawProduct>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLeft {
    pub a: usize,
    pub m: usize,
    pub k: usize,
    pub c: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRight {
    pub m: usize,
    pub a: usize,
    pub k: usize,
    pub c: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBimodule {
    pub dim: usize,
    pub left: Vec<RawLeft>,
    pub right: Vec<RawRight>,
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    /// Basis elements at which the identity fails, by name.
    pub witness: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}): {}", self.axiom, self.witness.join(", "), self.detail)
    }
}

/// Every violated identity found while validating one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub object: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn new(object: &str) -> Self {
        ValidationReport { object: object.to_string(), violations: Vec::new() }
    }

    fn push(&mut self, axiom: &str, witness: Vec<String>, detail: String) {
        self.violations.push(Violation { axiom: axiom.to_string(), witness, detail });
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} violation(s)", self.object, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Outcome of validation: either the validated object or the full report.
#[derive(Clone, Debug)]
pub enum Validation<T> {
    Valid(T),
    Invalid(ValidationReport),
}

impl<T> Validation<T> {
    pub fn into_result(self) -> std::result::Result<T, ValidationReport> {
        match self {
            Validation::Valid(t) => Ok(t),
            Validation::Invalid(r) => Err(r),
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid(_))
    }

    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            Validation::Valid(_) => None,
            Validation::Invalid(r) => Some(r),
        }
    }

    /// Unwraps a fixture known to be valid.
    pub fn expect_valid(self) -> T {
        match self {
            Validation::Valid(t) => t,
            Validation::Invalid(r) => panic!("expected a valid object:\n{r}"),
        }
    }
}

fn fmt_vec<K: Field>(k: &K, v: &[(usize, K::Elem)], names: &[String]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| if k.is_one(c) { names[*i].clone() } else { format!("{c}*{}", names[*i]) })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn add_scaled<K: Field>(k: &K, out: &mut Vec<(usize, K::Elem)>, c: &K::Elem, v: &[(usize, K::Elem)]) {
    out.extend(v.iter().map(|(i, x)| (*i, k.mul(c, x))));
}

/// A finite-dimensional unital associative algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct Algebra<K: Field> {
    k: K,
    names: Vec<String>,
    /// `table[i][j]` is `e_i * e_j`.
    table: Vec<Vec<SparseVec<K::Elem>>>,
    unit: SparseVec<K::Elem>,
}

impl<K: Field> Algebra<K> {
    /// Builds the algebra without checking the axioms.
    fn from_parts(k: &K, raw: &RawAlgebra) -> Result<Self> {
        let d = raw.dim;
        if d == 0 {
            return Err(Error::DimensionMismatch("algebra dimension must be at least 1".into()));
        }
        if raw.basis.len() != d {
            return Err(Error::DimensionMismatch(format!("{} basis names for dimension {d}", raw.basis.len())));
        }
        if raw.unit.len() != d {
            return Err(Error::DimensionMismatch(format!("unit has {} coefficients for dimension {d}", raw.unit.len())));
        }
        let mut raw_table: Vec<Vec<Vec<(usize, K::Elem)>>> = vec![vec![Vec::new(); d]; d];
        for e in &raw.table {
            if e.i >= d || e.j >= d || e.k >= d {
                return Err(Error::OutOfRange(format!("table entry ({}, {}, {}) for dimension {d}", e.i, e.j, e.k)));
            }
            raw_table[e.i][e.j].push((e.k, e.c.parse(k)?));
        }
        let table = raw_table.into_iter().map(|row| row.into_iter().map(|v| normalize(k, v)).collect()).collect();
        let unit = raw.unit.iter().map(|c| c.parse(k)).collect::<Result<Vec<_>>>()?;
        Ok(Algebra { k: k.clone(), names: raw.basis.clone(), table, unit: crate::sparse::dense_to_sparse(k, &unit) })
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[(usize, K::Elem)] {
        &self.unit
    }

    /// `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, K::Elem)] {
        &self.table[i][j]
    }

    /// Product of sparse vectors.
    pub fn mul_sparse(&self, x: &[(usize, K::Elem)], y: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        let k = &self.k;
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                add_scaled(k, &mut out, &k.mul(a, b), &self.table[*i][*j]);
            }
        }
        normalize(k, out)
    }

    /// Product of dense coefficient vectors.
    pub fn multiply(&self, x: &[K::Elem], y: &[K::Elem]) -> Result<Vec<K::Elem>> {
        let d = self.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in an algebra of dimension {d}",
                x.len(),
                y.len()
            )));
        }
        let k = &self.k;
        let p = self.mul_sparse(&crate::sparse::dense_to_sparse(k, x), &crate::sparse::dense_to_sparse(k, y));
        Ok(crate::sparse::sparse_to_dense(k, &p, d))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    fn unit_name(&self) -> String {
        match self.unit.as_slice() {
            [(i, c)] if self.k.is_one(c) => self.names[*i].clone(),
            _ => "1".into(),
        }
    }

    fn basis_vec(&self, i: usize) -> SparseVec<K::Elem> {
        vec![(i, self.k.one())]
    }

    fn check(&self, report: &mut ValidationReport) {
        let d = self.dim();
        let k = &self.k;
        for j in 0..d {
            let e = self.basis_vec(j);
            let l = self.mul_sparse(&self.unit, &e);
            if l != e {
                report.push(
                    "left unit",
                    vec![self.unit_name(), self.names[j].clone()],
                    format!("1*{} = {}", self.names[j], fmt_vec(k, &l, &self.names)),
                );
            }
            let r = self.mul_sparse(&e, &self.unit);
            if r != e {
                report.push(
                    "right unit",
                    vec![self.names[j].clone(), self.unit_name()],
                    format!("{}*1 = {}", self.names[j], fmt_vec(k, &r, &self.names)),
                );
            }
        }
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let lhs = self.mul_sparse(&self.table[i][j], &self.basis_vec(l));
                    let rhs = self.mul_sparse(&self.basis_vec(i), &self.table[j][l]);
                    if lhs != rhs {
                        report.push(
                            "associativity",
                            vec![self.names[i].clone(), self.names[j].clone(), self.names[l].clone()],
                            format!("(xy)z = {} but x(yz) = {}", fmt_vec(k, &lhs, &self.names), fmt_vec(k, &rhs, &self.names)),
                        );
                    }
                }
            }
        }
    }
}

/// Checks the unit and associativity axioms.
pub fn validate_algebra<K: Field>(k: &K, raw: &RawAlgebra) -> Result<Validation<Algebra<K>>> {
    let a = Algebra::from_parts(k, raw)?;
    let mut report = ValidationReport::new("algebra");
    a.check(&mut report);
    Ok(if report.is_empty() { Validation::Valid(a) } else { Validation::Invalid(report) })
}

/// A validated triple: `B` commutative and `ε: B → Z(A)` a unital morphism.
#[derive(Clone, Debug)]
pub struct Triple<K: Field> {
    pub a: Algebra<K>,
    pub b: Algebra<K>,
    /// `eps[j]` is `ε(f_j)` in the basis of `A`.
    eps: Vec<SparseVec<K::Elem>>,
}

impl<K: Field> Triple<K> {
    pub fn field(&self) -> &K {
        self.a.field()
    }

    pub fn epsilon(&self, j: usize) -> &[(usize, K::Elem)] {
        &self.eps[j]
    }

    /// `ε` applied to a sparse element of `B`.
    pub fn epsilon_of(&self, x: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        let k = self.field();
        let mut out = Vec::new();
        for (j, c) in x {
            add_scaled(k, &mut out, c, &self.eps[j.to_owned()]);
        }
        normalize(k, out)
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    /// Epsilon as a `dimA x dimB` matrix.
    pub fn epsilon_matrix(&self) -> crate::sparse::SparseMatrix<K::Elem> {
        crate::sparse::SparseMatrix::from_normalized_columns(self.dim_a(), self.eps.clone())
    }
}

/// Checks commutativity of `B`, that `ε` is a unital morphism, and that its
/// image is central. `epsilon` is row-major `dimA x dimB`.
pub fn validate_triple<K: Field>(a: &Algebra<K>, b: &Algebra<K>, epsilon: &[Vec<Coeff>]) -> Result<Validation<Triple<K>>> {
    let k = a.field();
    if epsilon.len() != a.dim() || epsilon.iter().any(|row| row.len() != b.dim()) {
        return Err(Error::DimensionMismatch(format!("epsilon must be {} x {}", a.dim(), b.dim())));
    }
    let mut cols: Vec<Vec<(usize, K::Elem)>> = vec![Vec::new(); b.dim()];
    for (i, row) in epsilon.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            cols[j].push((i, c.parse(k)?));
        }
    }
    let eps: Vec<SparseVec<K::Elem>> = cols.into_iter().map(|c| normalize(k, c)).collect();
    let t = Triple { a: a.clone(), b: b.clone(), eps };
    let mut report = ValidationReport::new("triple");
    let (na, nb) = (&a.names, &b.names);
    for i in 0..b.dim() {
        for j in 0..i {
            if b.table[i][j] != b.table[j][i] {
                report.push(
                    "B commutative",
                    vec![nb[i].clone(), nb[j].clone()],
                    format!("{} != {}", fmt_vec(k, &b.table[i][j], nb), fmt_vec(k, &b.table[j][i], nb)),
                );
            }
        }
    }
    let e1 = t.epsilon_of(&b.unit);
    if e1 != a.unit {
        report.push("epsilon unital", vec![b.unit_name()], format!("epsilon(1) = {}", fmt_vec(k, &e1, na)));
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let lhs = t.epsilon_of(&b.table[i][j]);
            let rhs = a.mul_sparse(&t.eps[i], &t.eps[j]);
            if lhs != rhs {
                report.push(
                    "epsilon multiplicative",
                    vec![nb[i].clone(), nb[j].clone()],
                    format!("epsilon(fg) = {} but epsilon(f)epsilon(g) = {}", fmt_vec(k, &lhs, na), fmt_vec(k, &rhs, na)),
                );
            }
        }
    }
    for j in 0..b.dim() {
        for i in 0..a.dim() {
            let e = a.basis_vec(i);
            let l = a.mul_sparse(&t.eps[j], &e);
            let r = a.mul_sparse(&e, &t.eps[j]);
            if l != r {
                let comm = normalize(k, l.iter().cloned().chain(r.iter().map(|(m, c)| (*m, k.neg(c)))).collect());
                report.push(
                    "epsilon central",
                    vec![na[i].clone(), nb[j].clone()],
                    format!("[{}, epsilon({})] = {}", na[i], nb[j], fmt_vec(k, &comm, na)),
                );
            }
        }
    }
    Ok(if report.is_empty() { Validation::Valid(t) } else { Validation::Invalid(report) })
}

/// A finite-dimensional `A`-bimodule.
#[derive(Clone, Debug)]
pub struct Bimodule<K: Field> {
    k: K,
    dim: usize,
    dim_a: usize,
    /// `left[a][m]` is `e_a * m`.
    left: Vec<Vec<SparseVec<K::Elem>>>,
    /// `right[m][a]` is `m * e_a`.
    right: Vec<Vec<SparseVec<K::Elem>>>,
}

impl<K: Field> Bimodule<K> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_basis(&self, a: usize, m: usize) -> &[(usize, K::Elem)] {
        &self.left[a][m]
    }

    pub fn right_basis(&self, m: usize, a: usize) -> &[(usize, K::Elem)] {
        &self.right[m][a]
    }

    /// `x * m` for sparse `x` in `A` and `m` in `M`.
    pub fn act_left(&self, x: &[(usize, K::Elem)], m: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        let k = &self.k;
        let mut out = Vec::new();
        for (a, c) in x {
            for (mi, d) in m {
                add_scaled(k, &mut out, &k.mul(c, d), &self.left[*a][*mi]);
            }
        }
        normalize(k, out)
    }

    /// `m * x`.
    pub fn act_right(&self, m: &[(usize, K::Elem)], x: &[(usize, K::Elem)]) -> SparseVec<K::Elem> {
        let k = &self.k;
        let mut out = Vec::new();
        for (mi, d) in m {
            for (a, c) in x {
                add_scaled(k, &mut out, &k.mul(d, c), &self.right[*mi][*a]);
            }
        }
        normalize(k, out)
    }

    fn from_parts(k: &K, dim_a: usize, raw: &RawBimodule) -> Result<Self> {
        let d = raw.dim;
        if d == 0 {
            return Err(Error::DimensionMismatch("bimodule dimension must be at least 1".into()));
        }
        let mut left = vec![vec![Vec::new(); d]; dim_a];
        let mut right = vec![vec![Vec::new(); dim_a]; d];
        for e in &raw.left {
            if e.a >= dim_a || e.m >= d || e.k >= d {
                return Err(Error::OutOfRange(format!("left action entry ({}, {}, {})", e.a, e.m, e.k)));
            }
            left[e.a][e.m].push((e.k, e.c.parse(k)?));
        }
        for e in &raw.right {
            if e.a >= dim_a || e.m >= d || e.k >= d {
                return Err(Error::OutOfRange(format!("right action entry ({}, {}, {})", e.m, e.a, e.k)));
            }
            right[e.m][e.a].push((e.k, e.c.parse(k)?));
        }
        let norm = |t: Vec<Vec<Vec<(usize, K::Elem)>>>| -> Vec<Vec<SparseVec<K::Elem>>> {
            t.into_iter().map(|row| row.into_iter().map(|v| normalize(k, v)).collect()).collect()
        };
        Ok(Bimodule { k: k.clone(), dim: d, dim_a, left: norm(left), right: norm(right) })
    }

    /// Back to the raw description; used to round-trip derived modules.
    pub fn to_raw(&self) -> RawBimodule
    where
        K::Elem: ToString,
    {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for a in 0..self.dim_a {
            for m in 0..self.dim {
                for (kk, c) in &self.left[a][m] {
                    left.push(RawLeft { a, m, k: *kk, c: Coeff::Str(c.to_string()) });
                }
                for (kk, c) in &self.right[m][a] {
                    right.push(RawRight { m, a, k: *kk, c: Coeff::Str(c.to_string()) });
                }
            }
        }
        RawBimodule { dim: self.dim, left, right }
    }
}

/// Checks the bimodule axioms and B-symmetry over the triple.
pub fn validate_bimodule<K: Field>(t: &Triple<K>, raw: &RawBimodule) -> Result<Validation<Bimodule<K>>> {
    let k = t.field();
    let a = &t.a;
    let m = Bimodule::from_parts(k, a.dim(), raw)?;
    let mut report = ValidationReport::new("bimodule");
    let mnames: Vec<String> = (0..m.dim).map(|i| format!("m{i}")).collect();
    let na = &a.names;
    let show = |v: &[(usize, K::Elem)]| fmt_vec(k, v, &mnames);
    for mi in 0..m.dim {
        let e = vec![(mi, k.one())];
        let l = m.act_left(&a.unit, &e);
        if l != e {
            report.push("left unit", vec![a.unit_name(), mnames[mi].clone()], format!("1*{} = {}", mnames[mi], show(&l)));
        }
        let r = m.act_right(&e, &a.unit);
        if r != e {
            report.push("right unit", vec![mnames[mi].clone(), a.unit_name()], format!("{}*1 = {}", mnames[mi], show(&r)));
        }
        for x in 0..a.dim() {
            let ex = a.basis_vec(x);
            for y in 0..a.dim() {
                let ey = a.basis_vec(y);
                let w = || vec![na[x].clone(), na[y].clone(), mnames[mi].clone()];
                let lhs = m.act_left(&a.table[x][y], &e);
                let rhs = m.act_left(&ex, &m.act_left(&ey, &e));
                if lhs != rhs {
                    report.push("left associativity", w(), format!("(ab)m = {} but a(bm) = {}", show(&lhs), show(&rhs)));
                }
                let lhs = m.act_right(&e, &a.table[x][y]);
                let rhs = m.act_right(&m.act_right(&e, &ex), &ey);
                if lhs != rhs {
                    report.push("right associativity", w(), format!("m(ab) = {} but (ma)b = {}", show(&lhs), show(&rhs)));
                }
                let lhs = m.act_right(&m.act_left(&ex, &e), &ey);
                let rhs = m.act_left(&ex, &m.act_right(&e, &ey));
                if lhs != rhs {
                    report.push("bimodule compatibility", w(), format!("(am)b = {} but a(mb) = {}", show(&lhs), show(&rhs)));
                }
            }
        }
        for f in 0..t.dim_b() {
            let l = m.act_left(t.epsilon(f), &e);
            let r = m.act_right(&e, t.epsilon(f));
            if l != r {
                report.push(
                    "B-symmetry",
                    vec![t.b.names[f].clone(), mnames[mi].clone()],
                    format!("epsilon(f)m = {} but m epsilon(f) = {}", show(&l), show(&r)),
                );
            }
        }
    }
    Ok(if report.is_empty() { Validation::Valid(m) } else { Validation::Invalid(report) })
}

/// `A` as a bimodule over itself.
pub fn regular_bimodule<K: Field>(a: &Algebra<K>) -> Bimodule<K> {
    let d = a.dim();
    let left = (0..d).map(|x| (0..d).map(|m| a.table[x][m].clone()).collect()).collect();
    let right = (0..d).map(|m| (0..d).map(|x| a.table[m][x].clone()).collect()).collect();
    Bimodule { k: a.k.clone(), dim: d, dim_a: d, left, right }
}

/// Small named algebras, triples and modules used throughout the tests and as
/// ready-made inputs.
pub mod fixtures {
    use super::*;

    fn product(i: usize, j: usize, k: usize, c: i64) -> RawProduct {
        RawProduct { i, j, k, c: Coeff::Int(c) }
    }

    fn unit_at(dim: usize, idx: &[usize]) -> Vec<Coeff> {
        (0..dim).map(|i| Coeff::Int(idx.contains(&i) as i64)).collect()
    }

    /// The ground field `k`.
    pub fn ground() -> RawAlgebra {
        RawAlgebra { dim: 1, basis: vec!["1".into()], unit: unit_at(1, &[0]), table: vec![product(0, 0, 0, 1)] }
    }

    /// Dual numbers `k[x]/(x^2)` on the basis `{1, x}`.
    pub fn dual_numbers() -> RawAlgebra {
        RawAlgebra {
            dim: 2,
            basis: vec!["1".into(), "x".into()],
            unit: unit_at(2, &[0]),
            table: vec![product(0, 0, 0, 1), product(0, 1, 1, 1), product(1, 0, 1, 1)],
        }
    }

    /// Upper triangular 2x2 matrices on the basis `{E11, E12, E22}`.
    pub fn upper_triangular() -> RawAlgebra {
        RawAlgebra {
            dim: 3,
            basis: vec!["E11".into(), "E12".into(), "E22".into()],
            unit: unit_at(3, &[0, 2]),
            table: vec![product(0, 0, 0, 1), product(0, 1, 1, 1), product(1, 2, 1, 1), product(2, 2, 2, 1)],
        }
    }

    /// A dimension 2 candidate whose declared unit `u` satisfies `u*x = 2x`.
    pub fn bad_unit() -> RawAlgebra {
        RawAlgebra {
            dim: 2,
            basis: vec!["u".into(), "x".into()],
            unit: unit_at(2, &[0]),
            table: vec![product(0, 0, 0, 1), product(0, 1, 1, 2), product(1, 0, 1, 1)],
        }
    }

    fn identity(n: usize) -> Vec<Vec<Coeff>> {
        (0..n).map(|i| (0..n).map(|j| Coeff::Int((i == j) as i64)).collect()).collect()
    }

    /// Row-major epsilon of the unit map `k -> A`.
    pub fn unit_map(a: &RawAlgebra) -> Vec<Vec<Coeff>> {
        a.unit.iter().map(|c| vec![c.clone()]).collect()
    }

    pub fn identity_map(a: &RawAlgebra) -> Vec<Vec<Coeff>> {
        identity(a.dim)
    }

    /// epsilon: D -> UT2 with `1 -> E11 + E22` and `x -> E12`; not central.
    pub fn non_central_epsilon() -> Vec<Vec<Coeff>> {
        vec![vec![1.into(), 0.into()], vec![0.into(), 1.into()], vec![1.into(), 0.into()]]
    }

    /// The one-dimensional module on which `A` acts through a character.
    /// `chi[i]` is the value on the i-th basis element.
    pub fn character_module(chi: &[i64]) -> RawBimodule {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (a, &c) in chi.iter().enumerate() {
            if c != 0 {
                left.push(RawLeft { a, m: 0, k: 0, c: Coeff::Int(c) });
                right.push(RawRight { m: 0, a, k: 0, c: Coeff::Int(c) });
            }
        }
        RawBimodule { dim: 1, left, right }
    }

    /// The regular bimodule of a raw algebra, in raw form.
    pub fn regular(a: &RawAlgebra) -> RawBimodule {
        RawBimodule {
            dim: a.dim,
            left: a.table.iter().map(|p| RawLeft { a: p.i, m: p.j, k: p.k, c: p.c.clone() }).collect(),
            right: a.table.iter().map(|p| RawRight { m: p.i, a: p.j, k: p.k, c: p.c.clone() }).collect(),
        }
    }

    /// The regular module of the dual numbers with the right action set to zero.
    pub fn broken_dual_module() -> RawBimodule {
        RawBimodule { right: Vec::new(), ..regular(&dual_numbers()) }
    }

    /// A named triple fixture.
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum TripleFixture {
        /// `(k, k, id)`
        Trivial,
        /// `(D, k, unit)`
        DualOverGround,
        /// `(D, D, id)`
        DualDual,
        /// `(UT2, k, unit)`
        UpperTriangular,
    }

    impl TripleFixture {
        pub const ALL: [TripleFixture; 4] =
            [TripleFixture::Trivial, TripleFixture::DualOverGround, TripleFixture::DualDual, TripleFixture::UpperTriangular];

        pub fn name(self) -> &'static str {
            match self {
                TripleFixture::Trivial => "(k,k,id)",
                TripleFixture::DualOverGround => "(D,k,unit)",
                TripleFixture::DualDual => "(D,D,id)",
                TripleFixture::UpperTriangular => "(UT2,k,unit)",
            }
        }

        pub fn raw(self) -> (RawAlgebra, RawAlgebra, Vec<Vec<Coeff>>) {
            match self {
                TripleFixture::Trivial => (ground(), ground(), identity(1)),
                TripleFixture::DualOverGround => (dual_numbers(), ground(), unit_map(&dual_numbers())),
                TripleFixture::DualDual => (dual_numbers(), dual_numbers(), identity(2)),
                TripleFixture::UpperTriangular => (upper_triangular(), ground(), unit_map(&upper_triangular())),
            }
        }

        pub fn build<K: Field>(self, k: &K) -> Triple<K> {
            let (a, b, e) = self.raw();
            let a = validate_algebra(k, &a).expect("fixture parses").expect_valid();
            let b = validate_algebra(k, &b).expect("fixture parses").expect_valid();
            validate_triple(&a, &b, &e).expect("fixture parses").expect_valid()
        }

        /// The one-dimensional module through the augmentation character,
        /// where one exists.
        pub fn augmentation_module(self) -> RawBimodule {
            match self {
                TripleFixture::Trivial => character_module(&[1]),
                TripleFixture::DualOverGround | TripleFixture::DualDual => character_module(&[1, 0]),
                TripleFixture::UpperTriangular => character_module(&[1, 0, 0]),
            }
        }

        pub fn modules<K: Field>(self, k: &K) -> Vec<(&'static str, Bimodule<K>)> {
            let t = self.build(k);
            let aug = validate_bimodule(&t, &self.augmentation_module()).expect("fixture parses").expect_valid();
            vec![("k", aug), ("A", regular_bimodule(&t.a))]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};

    fn alg(raw: &RawAlgebra) -> Algebra<Rationals> {
        validate_algebra(&Rationals, raw).unwrap().expect_valid()
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn valid_algebras() {
        for raw in [ground(), dual_numbers(), upper_triangular()] {
            assert!(validate_algebra(&Rationals, &raw).unwrap().is_valid());
            assert!(validate_algebra(&PrimeField::new(5).unwrap(), &raw).unwrap().is_valid());
        }
    }

    #[test]
    fn bad_unit_is_reported_with_witness() {
        let v = validate_algebra(&Rationals, &bad_unit()).unwrap();
        let report = v.report().expect("invalid");
        let w = report.violations.iter().find(|v| v.axiom == "left unit").expect("left unit violation");
        assert_eq!(w.witness, vec!["u".to_string(), "x".to_string()]);
        assert!(w.detail.contains("2*x"));
    }

    #[test]
    fn dimension_errors() {
        let mut raw = dual_numbers();
        raw.dim = 0;
        assert!(validate_algebra(&Rationals, &raw).is_err());
        let mut raw = dual_numbers();
        raw.table.push(RawProduct { i: 5, j: 0, k: 0, c: 1.into() });
        assert!(validate_algebra(&Rationals, &raw).is_err());
        let mut raw = dual_numbers();
        raw.table[0].c = "1/0".into();
        assert!(validate_algebra(&Rationals, &raw).is_err());
    }

    #[test]
    fn multiply_examples() {
        let d = alg(&dual_numbers());
        assert_eq!(d.multiply(&[r(1), r(0)], &[r(3), r(-2)]).unwrap(), vec![r(3), r(-2)]);
        assert_eq!(d.multiply(&[r(0), r(1)], &[r(0), r(1)]).unwrap(), vec![r(0), r(0)]);
        assert_eq!(d.multiply(&[r(1), r(1)], &[r(1), r(1)]).unwrap(), vec![r(1), r(2)]);
        assert!(d.multiply(&[r(1)], &[r(1), r(1)]).is_err());
    }

    #[test]
    fn triples() {
        for f in TripleFixture::ALL {
            let t = f.build(&Rationals);
            assert!(t.b.is_commutative());
        }
        let ut = alg(&upper_triangular());
        let d = alg(&dual_numbers());
        let v = validate_triple(&ut, &d, &non_central_epsilon()).unwrap();
        let report = v.report().expect("invalid");
        assert!(report.violations.iter().all(|v| v.axiom == "epsilon central"));
        assert!(report
            .violations
            .iter()
            .any(|v| v.witness == vec!["E11".to_string(), "x".to_string()] && v.detail.contains("E12")));
    }

    #[test]
    fn bimodules() {
        for f in TripleFixture::ALL {
            let t = f.build(&Rationals);
            assert!(validate_bimodule(&t, &regular(&f.raw().0)).unwrap().is_valid());
            assert!(validate_bimodule(&t, &f.augmentation_module()).unwrap().is_valid());
            let m = regular_bimodule(&t.a);
            assert!(validate_bimodule(&t, &m.to_raw()).unwrap().is_valid());
        }
        let t = TripleFixture::DualDual.build(&Rationals);
        let v = validate_bimodule(&t, &broken_dual_module()).unwrap();
        let report = v.report().expect("invalid");
        assert!(report.has("right unit"));
        assert!(report.violations.iter().any(|v| v.axiom == "right unit" && v.witness[0] == "m0"));
    }

    #[test]
    fn revalidation_is_idempotent() {
        let raw = upper_triangular();
        let a1 = alg(&raw);
        let a2 = alg(&raw);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a1.basis_product(i, j), a2.basis_product(i, j));
            }
        }
    }
}
