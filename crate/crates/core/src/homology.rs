//! Homology of finite complexes: Betti numbers, explicit homology bases,
//! induced maps, long exact sequences from short exact sequences, and
//! exactness checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{ChainComplex, ChainMap, Direction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{image_basis, kernel_basis, rank, Echelon, PivotOrder, Solver};
use crate::sparse::{SparseMatrix, SparseVec};

/// Homology data at one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub dim: usize,
    /// `dim ker(d)` for the outgoing differential.
    pub kernel: usize,
    /// `dim im(d)` for the incoming differential.
    pub image: usize,
    pub betti: usize,
    /// False when one of the two differentials lies outside the built
    /// window; `betti` is then only an upper bound.
    pub windowed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub label: String,
    pub direction: Direction,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// Betti numbers at fully windowed degrees only.
    pub fn windowed_betti(&self) -> Vec<Option<usize>> {
        self.degrees.iter().map(|d| d.windowed.then_some(d.betti)).collect()
    }

    pub fn at(&self, n: usize) -> Option<&DegreeHomology> {
        self.degrees.get(n)
    }
}

/// Exact Betti numbers of `c`. Missing differentials at the top of the
/// window are treated as zero and the affected degrees are flagged.
pub fn homology_dims<K: Field>(c: &ChainComplex<K>) -> HomologyReport {
    let k = c.field();
    let ranks: Vec<usize> = (0..c.top()).into_par_iter().map(|i| rank(k, c.link(i).expect("inside the window"))).collect();
    let degrees = (0..=c.top())
        .map(|n| {
            let (out_rank, in_rank) = match c.direction {
                Direction::Homological => (n.checked_sub(1).map(|i| ranks[i]), ranks.get(n).copied()),
                Direction::Cohomological => (ranks.get(n).copied(), n.checked_sub(1).map(|i| ranks[i])),
            };
            let dim = c.dim(n);
            let kernel = dim - out_rank.unwrap_or(0);
            let image = in_rank.unwrap_or(0);
            DegreeHomology { degree: n, dim, kernel, image, betti: kernel - image, windowed: c.windowed(n) }
        })
        .collect();
    HomologyReport { label: c.label.clone(), direction: c.direction, degrees }
}

/// An explicit basis of `H_n`: cycle representatives independent modulo
/// boundaries.
#[derive(Clone, Debug)]
pub struct HomologyBasis<K: Field> {
    pub degree: usize,
    pub reps: Vec<SparseVec<K::Elem>>,
    pub windowed: bool,
    kernel_dim: usize,
    cycles: Solver<K>,
}

impl<K: Field> HomologyBasis<K> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of the cycle `v`; fails if `v` is not a
    /// cycle.
    pub fn coords(&self, k: &K, v: &[(usize, K::Elem)]) -> Result<SparseVec<K::Elem>> {
        let x = self.cycles.solve(k, v)?.ok_or_else(|| Error::Internal("vector is not a cycle".into()))?;
        Ok(x.into_iter().filter(|(i, _)| *i < self.reps.len()).collect())
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }
}

/// Representatives are kernel vectors that enlarge the span of the boundary
/// basis, taken in kernel-basis order, so the choice is deterministic.
pub fn homology_basis<K: Field>(c: &ChainComplex<K>, n: usize) -> Result<HomologyBasis<K>> {
    let k = c.field();
    let dim = c.dim(n);
    let kernel = match c.d_out(n) {
        Some(d) => kernel_basis(k, &d),
        None => (0..dim).map(|i| vec![(i, k.one())]).collect(),
    };
    let image = match c.d_in(n) {
        Some(d) => image_basis(k, &d),
        None => Vec::new(),
    };
    let mut e = Echelon::<K>::new(dim, false);
    for v in &image {
        e.insert(k, v);
    }
    let reps: Vec<SparseVec<K::Elem>> = kernel.iter().filter(|v| e.insert(k, v)).cloned().collect();
    let mut cols = reps.clone();
    cols.extend(image);
    let m = SparseMatrix::from_columns(k, dim, cols)?;
    Ok(HomologyBasis {
        degree: n,
        reps,
        windowed: c.windowed(n),
        kernel_dim: kernel.len(),
        cycles: Solver::new(k, &m),
    })
}

fn map_on_homology<K: Field>(
    k: &K,
    f: &SparseMatrix<K::Elem>,
    src: &HomologyBasis<K>,
    dst: &HomologyBasis<K>,
) -> Result<SparseMatrix<K::Elem>> {
    let cols = src.reps.iter().map(|r| dst.coords(k, &f.mul_vec(k, r))).collect::<Result<Vec<_>>>()?;
    SparseMatrix::from_columns(k, dst.dim(), cols)
}

/// Matrix of `H_n(f)` in the bases returned by [`homology_basis`].
pub fn induced_map<K: Field>(f: &ChainMap<K>, x: &ChainComplex<K>, y: &ChainComplex<K>, n: usize) -> Result<SparseMatrix<K::Elem>> {
    f.verify(x, y)?;
    let fm = f.maps.get(n).ok_or_else(|| Error::OutOfRange(format!("{} has no component in degree {n}", f.label)))?;
    map_on_homology(x.field(), fm, &homology_basis(x, n)?, &homology_basis(y, n)?)
}

/// `0 → X →f Y →g Z → 0`, degreewise.
#[derive(Clone, Debug)]
pub struct ShortExactSequence<K: Field> {
    pub x: ChainComplex<K>,
    pub y: ChainComplex<K>,
    pub z: ChainComplex<K>,
    pub f: ChainMap<K>,
    pub g: ChainMap<K>,
}

impl<K: Field> ShortExactSequence<K> {
    /// Checks the chain-map property and, at every degree, injectivity of
    /// `f`, `g ∘ f = 0` with `ker g = im f`, and surjectivity of `g`.
    pub fn verify(&self) -> Result<()> {
        let k = self.x.field();
        self.f.verify(&self.x, &self.y)?;
        self.g.verify(&self.y, &self.z)?;
        let top = self.x.top().min(self.y.top()).min(self.z.top());
        let results: Vec<Result<()>> = (0..=top)
            .into_par_iter()
            .map(|n| {
                let (f, g) = (&self.f.maps[n], &self.g.maps[n]);
                let rf = rank(k, f);
                if rf != self.x.dim(n) {
                    return Err(Error::SesNotExact { degree: n, condition: "injectivity".into() });
                }
                if !g.mul(k, f)?.is_zero() {
                    return Err(Error::SesNotExact { degree: n, condition: "ker g = im f".into() });
                }
                let rg = rank(k, g);
                if rg != self.z.dim(n) {
                    return Err(Error::SesNotExact { degree: n, condition: "surjectivity".into() });
                }
                if rf + rg != self.y.dim(n) {
                    return Err(Error::SesNotExact { degree: n, condition: "ker g = im f".into() });
                }
                Ok(())
            })
            .collect();
        results.into_iter().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Induced,
    Connecting,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesNode {
    pub label: String,
    pub degree: Option<usize>,
    pub dim: usize,
    pub windowed: bool,
}

#[derive(Clone, Debug)]
pub struct LesMap<K: Field> {
    pub kind: MapKind,
    pub matrix: SparseMatrix<K::Elem>,
}

/// `maps[i]` goes from `nodes[i]` to `nodes[i + 1]`.
#[derive(Clone, Debug)]
pub struct LongExactSequence<K: Field> {
    pub k: K,
    pub nodes: Vec<LesNode>,
    pub maps: Vec<LesMap<K>>,
    /// Whether recomputing every connecting map with reversed pivot order
    /// gave identical matrices.
    pub lift_independent: bool,
}

impl<K: Field> LongExactSequence<K> {
    pub fn node_dims(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.dim).collect()
    }

    /// The connecting maps, keyed by the degree of their source.
    pub fn connecting(&self) -> Vec<(usize, &SparseMatrix<K::Elem>)> {
        self.maps
            .iter()
            .enumerate()
            .filter(|(_, m)| m.kind == MapKind::Connecting)
            .map(|(i, m)| (self.nodes[i].degree.expect("graded node"), &m.matrix))
            .collect()
    }
}

struct Lifter<K: Field> {
    g: Vec<Solver<K>>,
    f: Vec<Solver<K>>,
}

impl<K: Field> Lifter<K> {
    fn new(k: &K, ses: &ShortExactSequence<K>, order: PivotOrder) -> Self {
        let g = ses.g.maps.par_iter().map(|m| Solver::with_order(k, m, order)).collect();
        let f = ses.f.maps.par_iter().map(|m| Solver::with_order(k, m, order)).collect();
        Lifter { g, f }
    }

    /// Snake-lemma zig-zag from `H(Z)` at `n` into `X` at `m`, one step
    /// along the differential `d: Y_n -> Y_m`.
    fn connect(
        &self,
        k: &K,
        d: &SparseMatrix<K::Elem>,
        n: usize,
        m: usize,
        src: &HomologyBasis<K>,
        dst: &HomologyBasis<K>,
    ) -> Result<SparseMatrix<K::Elem>> {
        let mut cols = Vec::with_capacity(src.dim());
        for z in &src.reps {
            let y = self.g[n].solve(k, z)?.ok_or_else(|| Error::Internal(format!("g is not onto in degree {n}")))?;
            let dy = d.mul_vec(k, &y);
            let x = self.f[m]
                .solve(k, &dy)?
                .ok_or_else(|| Error::Internal(format!("d(lift) is not in the image of f in degree {m}")))?;
            cols.push(dst.coords(k, &x)?);
        }
        SparseMatrix::from_columns(k, dst.dim(), cols)
    }
}

/// Verifies `ses` degreewise and assembles its long exact sequence over the
/// common degree window. Homological sequences are listed from the top
/// degree down and end with `0`; cohomological ones start with `0` and run
/// upward.
pub fn les_from_ses<K: Field>(ses: &ShortExactSequence<K>) -> Result<LongExactSequence<K>> {
    ses.verify()?;
    let k = ses.x.field().clone();
    let top = ses.x.top().min(ses.y.top()).min(ses.z.top());
    let dir = ses.x.direction;
    let bases = |c: &ChainComplex<K>| (0..=top).into_par_iter().map(|n| homology_basis(c, n)).collect::<Result<Vec<_>>>();
    let (hx, hy, hz) = (bases(&ses.x)?, bases(&ses.y)?, bases(&ses.z)?);
    let lifters = [PivotOrder::Sparsest, PivotOrder::Reversed].map(|o| Lifter::new(&k, ses, o));

    let node = |c: &ChainComplex<K>, h: &HomologyBasis<K>| LesNode {
        label: format!("H{}({})", if dir == Direction::Homological { "_" } else { "^" }, c.label) + &format!("[{}]", h.degree),
        degree: Some(h.degree),
        dim: h.dim(),
        windowed: h.windowed,
    };
    let zero_node = LesNode { label: "0".into(), degree: None, dim: 0, windowed: true };

    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    let mut lift_independent = true;
    let degrees: Vec<usize> = match dir {
        Direction::Homological => (0..=top).rev().collect(),
        Direction::Cohomological => (0..=top).collect(),
    };
    if dir == Direction::Cohomological {
        nodes.push(zero_node.clone());
        maps.push(LesMap { kind: MapKind::Zero, matrix: SparseMatrix::zero(hx[0].dim(), 0) });
    }
    for &n in &degrees {
        nodes.push(node(&ses.x, &hx[n]));
        maps.push(LesMap { kind: MapKind::Induced, matrix: map_on_homology(&k, &ses.f.maps[n], &hx[n], &hy[n])? });
        nodes.push(node(&ses.y, &hy[n]));
        maps.push(LesMap { kind: MapKind::Induced, matrix: map_on_homology(&k, &ses.g.maps[n], &hy[n], &hz[n])? });
        nodes.push(node(&ses.z, &hz[n]));
        let next = match dir {
            Direction::Homological => n.checked_sub(1),
            Direction::Cohomological => (n < top).then_some(n + 1),
        };
        match next {
            Some(m) => {
                let d = ses.y.d_out(n).expect("inside the window");
                let a = lifters[0].connect(&k, &d, n, m, &hz[n], &hx[m])?;
                let b = lifters[1].connect(&k, &d, n, m, &hz[n], &hx[m])?;
                lift_independent &= a == b;
                maps.push(LesMap { kind: MapKind::Connecting, matrix: a });
            }
            None if dir == Direction::Homological => {
                maps.push(LesMap { kind: MapKind::Zero, matrix: SparseMatrix::zero(0, hz[n].dim()) });
                nodes.push(zero_node.clone());
            }
            None => {}
        }
    }
    Ok(LongExactSequence { k, nodes, maps, lift_independent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCheck {
    pub index: usize,
    pub label: String,
    pub incoming_rank: usize,
    pub kernel_dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub checked: Vec<NodeCheck>,
    /// Nodes not checked because they or a neighbour lie outside the window.
    pub skipped: Vec<String>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.checked.iter().all(|c| c.exact)
    }

    pub fn first_failure(&self) -> Option<&NodeCheck> {
        self.checked.iter().find(|c| !c.exact)
    }
}

/// At every interior node whose neighbours are all windowed, compares the
/// rank of the incoming map with the kernel dimension of the outgoing one.
pub fn check_exactness<K: Field>(seq: &LongExactSequence<K>) -> ExactnessReport {
    let k = &seq.k;
    let mut report = ExactnessReport::default();
    for i in 1..seq.nodes.len().saturating_sub(1) {
        let node = &seq.nodes[i];
        if !(seq.nodes[i - 1].windowed && node.windowed && seq.nodes[i + 1].windowed) {
            report.skipped.push(node.label.clone());
            continue;
        }
        let incoming_rank = rank(k, &seq.maps[i - 1].matrix);
        let kernel_dim = node.dim - rank(k, &seq.maps[i].matrix);
        report.checked.push(NodeCheck {
            index: i,
            label: node.label.clone(),
            incoming_rank,
            kernel_dim,
            exact: incoming_rank == kernel_dim,
        });
    }
    report
}

/// Outcome of checking `s b′ + b′ s = θ · id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    /// A sign that works at every checked degree, if any.
    pub theta: Option<i8>,
    pub checked_degrees: Vec<usize>,
    /// Degrees failing for `θ = +1` and for `θ = -1`.
    pub failures_plus: Vec<usize>,
    pub failures_minus: Vec<usize>,
    /// `(n, dim H^n(C, b′))` at windowed degrees `n ≥ 1`.
    pub prime_homology: Vec<(usize, usize)>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.theta.is_some() && self.prime_homology.iter().all(|&(_, b)| b == 0)
    }
}

/// `c` is a cochain complex with differential `b′`; `s[n]: C^n -> C^{n-1}`
/// for `n ≥ 1` (`s[0]` is ignored). Checks degrees `1..top`.
pub fn verify_homotopy_identity<K: Field>(c: &ChainComplex<K>, s: &[SparseMatrix<K::Elem>]) -> Result<HomotopyReport> {
    let k = c.field();
    if c.direction != Direction::Cohomological {
        return Err(Error::InvalidOperator("the contracting homotopy is checked on the cochain side".into()));
    }
    let mut failures_plus = Vec::new();
    let mut failures_minus = Vec::new();
    let mut checked = Vec::new();
    for n in (1..c.top()).take_while(|n| n + 1 < s.len()) {
        let up = s[n + 1].mul(k, c.link(n).expect("inside the window"))?;
        let down = c.link(n - 1).expect("inside the window").mul(k, &s[n])?;
        let sum = up.add(k, &down)?;
        let id = SparseMatrix::identity(k, c.dim(n));
        if sum != id {
            failures_plus.push(n);
        }
        if sum != id.neg(k) {
            failures_minus.push(n);
        }
        checked.push(n);
    }
    let theta = if checked.is_empty() {
        None
    } else if failures_plus.is_empty() {
        Some(1)
    } else if failures_minus.is_empty() {
        Some(-1)
    } else {
        None
    };
    let h = homology_dims(c);
    let prime_homology = h.degrees.iter().filter(|d| d.degree >= 1 && d.windowed).map(|d| (d.degree, d.betti)).collect();
    Ok(HomotopyReport { theta, checked_degrees: checked, failures_plus, failures_minus, prime_homology })
}

#[cfg(test)]
mod tests;
