//! The Connes long exact sequences of a triple, built by the snake lemma
//! from explicit short exact sequences and checked node by node.

use serde::Serialize;

use crate::complexes::{
    cyclic_bicomplex, cyclic_subcomplex, quotient_by, CandidateOutcome, ChainComplex, ChainMap, ChainOps, CochainOps,
};
use crate::error::Result;
use crate::field::Field;
use crate::homology::{
    check_exactness, homology_basis, homology_dims, induced_map, les_from_ses, verify_homotopy_identity, ExactnessReport,
    HomotopyReport, LongExactSequence, MapKind, ShortExactSequence,
};
use crate::linalg::rank;
use crate::sparse::SparseMatrix;
use crate::structure::Triple;

/// `dim H^n(C/C_λ)` against `dim HC^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    pub n: usize,
    pub quotient: usize,
    pub cyclic_below: usize,
    pub equal: bool,
}

/// The cohomology sequence `… → HC^n → HH^n → H^n(C/C_λ) → HC^{n+1} → …`.
#[derive(Clone, Debug)]
pub struct CohomologySequence<K: Field> {
    pub les: LongExactSequence<K>,
    pub exactness: ExactnessReport,
    pub cyclic: Vec<Option<usize>>,
    pub hochschild: Vec<Option<usize>>,
    pub quotient: Vec<Option<usize>>,
    pub shifts: Vec<ShiftCheck>,
}

impl<K: Field> CohomologySequence<K> {
    pub fn passed(&self) -> bool {
        self.exactness.passed() && self.les.lift_independent && self.shifts.iter().all(|s| s.equal)
    }
}

/// Builds `0 → C^•_λ → C^• → C^•/C^•_λ → 0` through degree `top`, runs the
/// snake lemma, and checks exactness and `H^n(C/C_λ) ≅ HC^{n-1}`.
pub fn connes_cohomology<K: Field>(t: &Triple<K>, top: usize, cap: u128, allow_positive_characteristic: bool) -> Result<CohomologySequence<K>> {
    let (c, sub) = cyclic_subcomplex(t, top, cap, allow_positive_characteristic)?;
    let quotient = quotient_by(&c, sub.subspaces.clone(), "C^•/C^•_λ(A,B,ε)")?;
    let ses = ShortExactSequence { x: sub.complex, y: c, z: quotient.complex, f: sub.inclusion, g: quotient.projection };
    let les = les_from_ses(&ses)?;
    let exactness = check_exactness(&les);
    let cyclic = homology_dims(&ses.x).windowed_betti();
    let hochschild = homology_dims(&ses.y).windowed_betti();
    let quotient = homology_dims(&ses.z).windowed_betti();
    let shifts = (1..=top)
        .filter_map(|n| match (quotient[n], cyclic[n - 1]) {
            (Some(q), Some(c)) => Some(ShiftCheck { n, quotient: q, cyclic_below: c, equal: q == c }),
            _ => None,
        })
        .collect();
    Ok(CohomologySequence { les, exactness, cyclic, hochschild, quotient, shifts })
}

/// Exactness of one row of the bicomplex at `C_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub q: usize,
    pub dim: usize,
    pub rank_one_minus_lambda: usize,
    pub rank_norm: usize,
    /// `Ker(1-λ) = Im N`.
    pub kernel_one_minus_lambda_is_image_norm: bool,
    /// `Ker N = Im(1-λ)`.
    pub kernel_norm_is_image_one_minus_lambda: bool,
}

/// Comparison of the snake-lemma map `H_n(Tot[2]) → H_{n-1}(Tot′)` with a
/// chain-level formula `C_{n-2} → C_{n-1}` applied to the first column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingCheck {
    pub n: usize,
    pub formula: String,
    /// The chain map `Tot′ → C` used to read the connecting map in `H(C)`.
    pub projection: String,
    /// Whether the formula sends every representative to a cycle.
    pub lands_in_cycles: bool,
    /// `Some(±1)` when the formula agrees with the connecting map up to that sign.
    pub sign: Option<i8>,
}

/// The homology sequence `… → HH_n → HC_n → HC_{n-2} → HH_{n-1} → …` from
/// `0 → Tot′ → Tot → Tot[2] → 0`.
#[derive(Clone, Debug)]
pub struct HomologySequence<K: Field> {
    pub square_failures: Vec<(usize, usize)>,
    pub composite_failures: Vec<String>,
    pub rows: Vec<RowCheck>,
    pub les: LongExactSequence<K>,
    pub exactness: ExactnessReport,
    pub hochschild: Vec<Option<usize>>,
    pub tot_prime: Vec<Option<usize>>,
    pub cyclic: Vec<Option<usize>>,
    /// `(n, dim H_n(Tot′), dim HH_n)`.
    pub tot_prime_vs_hochschild: Vec<(usize, usize, usize)>,
    /// `S: H_n(Tot) → H_{n-2}(Tot)`, induced by truncation.
    pub periodicity: Vec<(usize, SparseMatrix<K::Elem>)>,
    /// `B: H_n(Tot[2]) → H_{n-1}(Tot′)`, the connecting maps.
    pub connecting: Vec<(usize, SparseMatrix<K::Elem>)>,
    pub candidates: Vec<CandidateOutcome>,
    pub connecting_checks: Vec<ConnectingCheck>,
}

impl<K: Field> HomologySequence<K> {
    pub fn passed(&self) -> bool {
        self.square_failures.is_empty()
            && self.composite_failures.is_empty()
            && self.rows.iter().all(|r| r.kernel_one_minus_lambda_is_image_norm && r.kernel_norm_is_image_one_minus_lambda)
            && self.exactness.passed()
            && self.les.lift_independent
            && self.tot_prime_vs_hochschild.iter().all(|(_, a, b)| a == b)
    }
}

pub fn connes_homology<K: Field>(t: &Triple<K>, top: usize, cap: u128, allow_positive_characteristic: bool) -> Result<HomologySequence<K>> {
    let k = t.field();
    let cb = cyclic_bicomplex(t, top, cap, allow_positive_characteristic)?;
    let bi = &cb.bicomplex;
    let square_failures = bi.square_failures(top)?;
    let composite_failures = bi.composite_failures()?;
    let rows = (0..=top)
        .map(|q| {
            let dim = bi.dim(q);
            let r1 = rank(k, bi.one_minus_lambda(q));
            let rn = rank(k, bi.norm(q));
            let exact = r1 + rn == dim;
            RowCheck {
                q,
                dim,
                rank_one_minus_lambda: r1,
                rank_norm: rn,
                kernel_one_minus_lambda_is_image_norm: exact,
                kernel_norm_is_image_one_minus_lambda: exact,
            }
        })
        .collect();

    let ses = ShortExactSequence {
        x: cb.tot_prime.clone(),
        y: cb.tot.clone(),
        z: cb.tot_shift2.clone(),
        f: cb.inclusion.clone(),
        g: cb.truncation.clone(),
    };
    let les = les_from_ses(&ses)?;
    let exactness = check_exactness(&les);
    let hochschild = homology_dims(&cb.chain).windowed_betti();
    let tot_prime = homology_dims(&cb.tot_prime).windowed_betti();
    let cyclic = homology_dims(&cb.tot).windowed_betti();
    let tot_prime_vs_hochschild = (0..=top)
        .filter_map(|n| match (tot_prime[n], hochschild[n]) {
            (Some(a), Some(b)) => Some((n, a, b)),
            _ => None,
        })
        .collect();

    // maps are listed from the top degree down, three per degree
    let mut periodicity = Vec::new();
    let mut connecting = Vec::new();
    for (idx, m) in les.maps.iter().enumerate() {
        let n = top - idx / 3;
        match (idx % 3, m.kind) {
            (1, MapKind::Induced) => periodicity.push((n, m.matrix.clone())),
            (2, MapKind::Connecting) => connecting.push((n, m.matrix.clone())),
            _ => {}
        }
    }
    periodicity.reverse();
    connecting.reverse();

    let mut connecting_checks = Vec::new();
    for (name, proj) in &cb.projections {
        connecting_checks.extend(compare_connecting(t, cap, &cb.tot_prime, &cb.tot_shift2, &cb.chain, (name, proj), &connecting)?);
    }

    Ok(HomologySequence {
        square_failures,
        composite_failures,
        rows,
        les,
        exactness,
        hochschild,
        tot_prime,
        cyclic,
        tot_prime_vs_hochschild,
        periodicity,
        connecting,
        candidates: cb.candidates.clone(),
        connecting_checks,
    })
}

fn compare_connecting<K: Field>(
    t: &Triple<K>,
    cap: u128,
    tot_prime: &ChainComplex<K>,
    shifted: &ChainComplex<K>,
    chain: &ChainComplex<K>,
    (name, proj): (&str, &ChainMap<K>),
    connecting: &[(usize, SparseMatrix<K::Elem>)],
) -> Result<Vec<ConnectingCheck>> {
    let k = t.field();
    let ops = ChainOps::new(t, cap);
    let mut out = Vec::new();
    for (n, b) in connecting {
        let n = *n;
        if n < 2 || !shifted.windowed(n) || !tot_prime.windowed(n - 1) || !chain.windowed(n - 1) {
            continue;
        }
        let src = homology_basis(shifted, n)?;
        let dst = homology_basis(chain, n - 1)?;
        // the snake-lemma map read in H_{n-1}(C) through the projection Tot′ → C
        let les = induced_map(proj, tot_prime, chain, n - 1)?.mul(k, b)?;
        let first = ops.dim(n - 2)?;
        for (formula, m) in [
            ("(1-λ)tN", ops.connes_b_reversed(n - 2)?),
            ("Nt(1-λ)", ops.connes_b(n - 2)?),
        ] {
            let mut cols = Vec::with_capacity(src.dim());
            let mut lands = true;
            for z in &src.reps {
                let x0: Vec<_> = z.iter().filter(|(i, _)| *i < first).cloned().collect();
                match dst.coords(k, &m.mul_vec(k, &x0)) {
                    Ok(c) => cols.push(c),
                    Err(_) => {
                        lands = false;
                        break;
                    }
                }
            }
            let sign = if lands {
                let cand = SparseMatrix::from_columns(k, dst.dim(), cols)?;
                if cand == les {
                    Some(1)
                } else if cand == les.neg(k) {
                    Some(-1)
                } else {
                    None
                }
            } else {
                None
            };
            out.push(ConnectingCheck { n, formula: formula.into(), projection: name.into(), lands_in_cycles: lands, sign });
        }
    }
    Ok(out)
}

/// Contracting-homotopy check on `(C^•, b′)` through degree `top`.
pub fn acyclicity<K: Field>(t: &Triple<K>, top: usize, cap: u128) -> Result<HomotopyReport> {
    let ops = CochainOps::new(t, cap);
    let c = ops.prime_complex(top)?;
    let mut s = vec![SparseMatrix::zero(0, ops.dim(0)?)];
    for n in 1..=top {
        s.push(ops.s_homotopy(n)?);
    }
    verify_homotopy_identity(&c, &s)
}

#[cfg(test)]
mod tests;
