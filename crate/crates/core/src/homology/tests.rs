use proptest::prelude::*;

use super::*;
use crate::complexes::{cyclic_subcomplex, quotient_by, triple_cochain_complex, CochainOps};
use crate::field::{Rational, Rationals};
use crate::structure::fixtures::TripleFixture;
use crate::tensor::DEFAULT_CAP;

fn q() -> Rationals {
    Rationals
}

fn two_term(map: i64) -> ChainComplex<Rationals> {
    let m = SparseMatrix::from_rows_i64(&q(), &[vec![map]]);
    ChainComplex::new(&q(), Direction::Homological, "two-term", vec![1, 1], vec![m]).unwrap().closed()
}

#[test]
fn identity_two_term_is_acyclic() {
    let h = homology_dims(&two_term(1));
    assert_eq!(h.betti(), vec![0, 0]);
    assert!(h.degrees.iter().all(|d| d.windowed));
}

#[test]
fn zero_two_term_keeps_both() {
    assert_eq!(homology_dims(&two_term(0)).betti(), vec![1, 1]);
}

#[test]
fn open_top_is_flagged() {
    let c = ChainComplex::new(&q(), Direction::Homological, "open", vec![1, 1], vec![SparseMatrix::zero(1, 1)]).unwrap();
    let h = homology_dims(&c);
    assert!(h.degrees[0].windowed);
    assert!(!h.degrees[1].windowed);
    assert_eq!(h.windowed_betti(), vec![Some(1), None]);
}

#[test]
fn trivial_secondary_cohomology() {
    let t = TripleFixture::Trivial.build(&q());
    let m = TripleFixture::Trivial.modules(&q()).remove(0).1;
    let c = crate::complexes::secondary_cochain_complex(&t, &m, 4, DEFAULT_CAP).unwrap();
    let h = homology_dims(&c);
    assert_eq!(&h.windowed_betti()[..4], &[Some(1), Some(0), Some(0), Some(0)]);
}

#[test]
fn induced_identity_and_zero() {
    let t = TripleFixture::DualOverGround.build(&q());
    let c = triple_cochain_complex(&t, 3, DEFAULT_CAP).unwrap();
    for n in 0..3 {
        let id = induced_map(&ChainMap::identity(&c), &c, &c, n).unwrap();
        let d = homology_basis(&c, n).unwrap().dim();
        assert_eq!(id, SparseMatrix::identity(&q(), d));
        assert!(induced_map(&ChainMap::zero(&c, &c), &c, &c, n).unwrap().is_zero());
    }
}

#[test]
fn induced_map_rejects_non_chain_maps() {
    let t = TripleFixture::DualOverGround.build(&q());
    let c = triple_cochain_complex(&t, 2, DEFAULT_CAP).unwrap();
    let mut f = ChainMap::identity(&c);
    f.maps[1] = f.maps[1].scale(&q(), &Rational::from_int(2));
    assert!(matches!(induced_map(&f, &c, &c, 0), Err(Error::NotAChainMap(_))));
}

#[test]
fn trivial_cyclic_inclusion_is_identity_in_degree_zero() {
    let t = TripleFixture::Trivial.build(&q());
    let (c, sub) = cyclic_subcomplex(&t, 3, DEFAULT_CAP, false).unwrap();
    let m = induced_map(&sub.inclusion, &sub.complex, &c, 0).unwrap();
    assert_eq!(m, SparseMatrix::identity(&q(), 1));
}

fn cyclic_ses(f: TripleFixture, top: usize) -> ShortExactSequence<Rationals> {
    let t = f.build(&q());
    let (c, sub) = cyclic_subcomplex(&t, top, DEFAULT_CAP, false).unwrap();
    let quot = quotient_by(&c, sub.subspaces.clone(), "C/C_λ").unwrap();
    ShortExactSequence { x: sub.complex, y: c, z: quot.complex, f: sub.inclusion, g: quot.projection }
}

#[test]
fn trivial_connes_cohomology_sequence() {
    let les = les_from_ses(&cyclic_ses(TripleFixture::Trivial, 4)).unwrap();
    let report = check_exactness(&les);
    assert!(report.passed(), "{report:?}");
    assert!(les.lift_independent);
    // 0, then (HC^n, HH^n, H^n(C/C_λ)) for n = 0..=4
    let dims = les.node_dims();
    let hc: Vec<usize> = (0..4).map(|n| dims[1 + 3 * n]).collect();
    let hh: Vec<usize> = (0..4).map(|n| dims[2 + 3 * n]).collect();
    assert_eq!(hc, vec![1, 0, 1, 0]);
    assert_eq!(hh, vec![1, 0, 0, 0]);
}

#[test]
fn dual_over_ground_connes_cohomology_sequence() {
    let les = les_from_ses(&cyclic_ses(TripleFixture::DualOverGround, 4)).unwrap();
    let report = check_exactness(&les);
    assert!(report.passed(), "{report:?}");
    assert!(!report.checked.is_empty());
    assert!(les.lift_independent);
}

#[test]
fn zero_subcomplex_gives_isomorphisms() {
    let t = TripleFixture::DualOverGround.build(&q());
    let y = triple_cochain_complex(&t, 3, DEFAULT_CAP).unwrap();
    let x = ChainComplex::new(&q(), Direction::Cohomological, "0", vec![0; 4], (0..3).map(|_| SparseMatrix::zero(0, 0)).collect())
        .unwrap();
    let ses = ShortExactSequence {
        f: ChainMap::zero(&x, &y),
        g: ChainMap::identity(&y),
        z: y.clone(),
        y,
        x,
    };
    let les = les_from_ses(&ses).unwrap();
    assert!(check_exactness(&les).passed());
    for m in les.maps.iter().filter(|m| m.kind == MapKind::Induced && m.matrix.rows() == m.matrix.cols()) {
        assert_eq!(m.matrix, SparseMatrix::identity(&q(), m.matrix.rows()));
    }
}

#[test]
fn non_exact_ses_is_reported() {
    let mut ses = cyclic_ses(TripleFixture::Trivial, 2);
    ses.g = ChainMap::zero(&ses.y, &ses.z);
    match les_from_ses(&ses) {
        Err(Error::SesNotExact { degree, condition }) => {
            assert_eq!(degree, 1);
            assert_eq!(condition, "surjectivity");
        }
        other => panic!("unexpected {other:?}"),
    }
}

fn hand_built(dims: &[usize], maps: Vec<SparseMatrix<Rational>>) -> LongExactSequence<Rationals> {
    LongExactSequence {
        k: q(),
        nodes: dims
            .iter()
            .enumerate()
            .map(|(i, &d)| LesNode { label: format!("node {i}"), degree: Some(i), dim: d, windowed: true })
            .collect(),
        maps: maps.into_iter().map(|m| LesMap { kind: MapKind::Induced, matrix: m }).collect(),
        lift_independent: true,
    }
}

#[test]
fn exactness_fault_is_localized() {
    let seq = hand_built(&[1, 1, 0], vec![SparseMatrix::zero(1, 1), SparseMatrix::zero(0, 1)]);
    let r = check_exactness(&seq);
    let bad = r.first_failure().unwrap();
    assert_eq!(bad.index, 1);
    assert_eq!((bad.incoming_rank, bad.kernel_dim), (0, 1));
}

#[test]
fn zero_spaces_are_vacuously_exact() {
    let seq = hand_built(&[0, 0, 0, 0], (0..3).map(|_| SparseMatrix::zero(0, 0)).collect());
    assert!(check_exactness(&seq).passed());
}

#[test]
fn homotopy_sign_on_fixtures() {
    for f in TripleFixture::ALL {
        let t = f.build(&q());
        let ops = CochainOps::new(&t, DEFAULT_CAP);
        let c = ops.prime_complex(4).unwrap();
        let mut s = vec![SparseMatrix::zero(0, ops.dim(0).unwrap())];
        s.extend((1..=4).map(|n| ops.s_homotopy(n).unwrap()));
        let r = verify_homotopy_identity(&c, &s).unwrap();
        assert_eq!(r.theta, Some(1), "{}", f.name());
        assert!(r.passed(), "{}: {r:?}", f.name());
        assert_eq!(r.prime_homology.iter().map(|p| p.0).collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}

#[test]
fn homotopy_fault_is_localized() {
    let t = TripleFixture::DualOverGround.build(&q());
    let ops = CochainOps::new(&t, DEFAULT_CAP);
    let c = ops.prime_complex(4).unwrap();
    let mut s = vec![SparseMatrix::zero(0, ops.dim(0).unwrap())];
    s.extend((1..=4).map(|n| ops.s_homotopy(n).unwrap()));
    s[2] = s[2].neg(&q());
    let r = verify_homotopy_identity(&c, &s).unwrap();
    assert_eq!(r.theta, None);
    assert_eq!(r.failures_plus, vec![1, 2]);
}

/// A closed homological complex that is a direct sum of `points[n]` copies
/// of `k` in degree `n` and `bars[n]` copies of `k → k` joining degrees
/// `n + 1` and `n`, written in scrambled bases.
fn scrambled(points: &[usize], bars: &[usize], ops: &[Vec<(usize, usize, i64)>]) -> ChainComplex<Rationals> {
    let k = q();
    let top = points.len() - 1;
    let dims: Vec<usize> = (0..=top)
        .map(|n| points[n] + bars.get(n).copied().unwrap_or(0) + if n > 0 { bars[n - 1] } else { 0 })
        .collect();
    // degree n basis: [points | bars landing in n | bars leaving n]
    let change = |n: usize, inverse: bool| -> SparseMatrix<Rational> {
        let d = dims[n];
        let mut g = SparseMatrix::identity(&k, d);
        let list: Vec<_> = ops[n].iter().filter(|(i, j, _)| *i < d && *j < d && i != j).collect();
        let seq: Box<dyn Iterator<Item = &&(usize, usize, i64)>> =
            if inverse { Box::new(list.iter().rev()) } else { Box::new(list.iter()) };
        for &&(i, j, c) in seq {
            let c = if inverse { -c } else { c };
            let mut e = SparseMatrix::identity(&k, d).to_dense(&k);
            e[i][j] = Rational::from_int(c);
            let e = SparseMatrix::from_columns(
                &k,
                d,
                (0..d).map(|col| (0..d).filter(|&r| !e[r][col].is_zero()).map(|r| (r, e[r][col].clone())).collect()).collect(),
            )
            .unwrap();
            g = g.mul(&k, &e).unwrap();
        }
        g
    };
    let maps = (1..=top)
        .map(|n| {
            let (rows, cols) = (dims[n - 1], dims[n]);
            let landing = points[n - 1];
            let leaving = points[n] + bars.get(n).copied().unwrap_or(0);
            let d = SparseMatrix::from_columns(
                &k,
                rows,
                (0..cols).map(|j| if j >= leaving { vec![(landing + j - leaving, k.one())] } else { vec![] }).collect(),
            )
            .unwrap();
            change(n - 1, false).mul(&k, &d).unwrap().mul(&k, &change(n, true)).unwrap()
        })
        .collect();
    ChainComplex::new(&k, Direction::Homological, "scrambled", dims, maps).unwrap().closed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn betti_of_scrambled_sums(
        points in prop::collection::vec(0usize..3, 4),
        bars in prop::collection::vec(0usize..3, 3),
        ops in prop::collection::vec(prop::collection::vec((0usize..8, 0usize..8, -3i64..4), 0..6), 4),
    ) {
        let c = scrambled(&points, &bars, &ops);
        c.ensure_d_squared_zero().unwrap();
        let h = homology_dims(&c);
        prop_assert_eq!(h.betti(), points.clone());
        let euler_h: i64 = h.betti().iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        let euler_c: i64 = c.dims().iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(euler_h, euler_c);
        for n in 0..=c.top() {
            prop_assert_eq!(homology_basis(&c, n).unwrap().dim(), points[n]);
        }
    }
}
