use super::*;
use crate::classical::classical_connes_check;
use crate::field::{PrimeField, Rationals};
use crate::structure::fixtures::TripleFixture;
use crate::tensor::DEFAULT_CAP;

#[test]
fn cohomology_sequence_is_exact() {
    for (f, top) in [(TripleFixture::Trivial, 4), (TripleFixture::DualOverGround, 4), (TripleFixture::DualDual, 3)] {
        let t = f.build(&Rationals);
        let r = connes_cohomology(&t, top, DEFAULT_CAP, false).unwrap();
        assert!(r.passed(), "{}: {:?} {:?}", f.name(), r.exactness.first_failure(), r.shifts);
        assert!(!r.exactness.checked.is_empty());
        assert!(!r.shifts.is_empty());
    }
}

#[test]
fn homology_sequence_is_exact() {
    for (f, top) in [(TripleFixture::Trivial, 4), (TripleFixture::DualOverGround, 4), (TripleFixture::DualDual, 3)] {
        let t = f.build(&Rationals);
        let r = connes_homology(&t, top, DEFAULT_CAP, false).unwrap();
        assert!(r.passed(), "{}: {:?}", f.name(), r.exactness.first_failure());
        assert!(r.tot_prime_vs_hochschild.len() >= 3);
        assert_eq!(r.periodicity.len(), top + 1);
    }
}

#[test]
fn ground_coefficients_agree_with_classical_sequences() {
    for f in [TripleFixture::Trivial, TripleFixture::DualOverGround, TripleFixture::UpperTriangular] {
        let t = f.build(&Rationals);
        let classical = classical_connes_check(&t.a, 3, DEFAULT_CAP).unwrap();
        let co = connes_cohomology(&t, 3, DEFAULT_CAP, false).unwrap();
        let ho = connes_homology(&t, 3, DEFAULT_CAP, false).unwrap();
        assert_eq!(co.les.node_dims(), classical.cohomology_nodes, "{}", f.name());
        assert_eq!(ho.les.node_dims(), classical.homology_nodes, "{}", f.name());
    }
}

#[test]
fn connecting_map_is_the_reversed_operator() {
    for f in [TripleFixture::DualOverGround, TripleFixture::UpperTriangular, TripleFixture::DualDual] {
        let t = f.build(&Rationals);
        let r = connes_homology(&t, 3, DEFAULT_CAP, false).unwrap();
        let checks: Vec<_> = r.connecting_checks.iter().filter(|c| c.formula == "(1-λ)tN").collect();
        assert!(!checks.is_empty());
        for c in checks {
            assert!(c.lands_in_cycles, "{}: {c:?}", f.name());
            assert!(c.sign.is_some(), "{}: {c:?}", f.name());
        }
    }
}

#[test]
fn row_exactness() {
    let t = TripleFixture::DualDual.build(&Rationals);
    let r = connes_homology(&t, 3, DEFAULT_CAP, false).unwrap();
    for row in &r.rows {
        assert_eq!(row.rank_norm + row.rank_one_minus_lambda, row.dim, "q = {}", row.q);
    }
}

#[test]
fn positive_characteristic_is_refused_unless_allowed() {
    let t = TripleFixture::DualOverGround.build(&PrimeField::new(5).unwrap());
    assert!(connes_cohomology(&t, 2, DEFAULT_CAP, false).is_err());
    assert!(connes_homology(&t, 2, DEFAULT_CAP, false).is_err());
}

#[test]
fn contracting_homotopy_has_positive_sign() {
    for f in TripleFixture::ALL {
        let t = f.build(&Rationals);
        let top = if f == TripleFixture::DualDual { 3 } else { 4 };
        let r = acyclicity(&t, top, DEFAULT_CAP).unwrap();
        assert_eq!(r.theta, Some(1), "{}", f.name());
        assert!(r.prime_homology.iter().all(|(_, b)| *b == 0));
    }
}

#[test]
fn printed_operator_misses_in_degree_two() {
    let t = TripleFixture::DualOverGround.build(&Rationals);
    let r = connes_homology(&t, 3, DEFAULT_CAP, false).unwrap();
    let at = |n: usize, formula: &str| r.connecting_checks.iter().find(|c| c.n == n && c.formula == formula).unwrap().sign;
    assert_eq!(at(2, "(1-λ)tN"), Some(1));
    assert_eq!(at(2, "Nt(1-λ)"), None);
}
