use super::*;
use crate::complexes::{secondary_chain_complex, secondary_cochain_complex, triple_chain_complex, triple_cochain_complex, ChainOps, CochainOps};
use crate::field::{PrimeField, Rationals};
use crate::homology::homology_dims;
use crate::structure::fixtures::TripleFixture;
use crate::structure::regular_bimodule;
use crate::tensor::DEFAULT_CAP;

const OVER_GROUND: [TripleFixture; 3] = [TripleFixture::Trivial, TripleFixture::DualOverGround, TripleFixture::UpperTriangular];

fn windowed(h: &crate::homology::HomologyReport) -> Vec<usize> {
    h.degrees.iter().filter(|d| d.windowed).map(|d| d.betti).collect()
}

#[test]
fn ground_field_patterns() {
    let t = TripleFixture::Trivial.build(&Rationals);
    let set = classical_complexes(&t.a, None, 5, DEFAULT_CAP, false).unwrap();
    assert_eq!(windowed(&homology_dims(&set.cochain)), vec![1, 0, 0, 0, 0]);
    assert_eq!(windowed(&homology_dims(&set.chain)), vec![1, 0, 0, 0, 0]);
    let hc = homology_dims(&set.cochain_cyclic.unwrap().complex);
    assert_eq!(hc.betti(), vec![1, 0, 1, 0, 1, 0]);
    let hc = homology_dims(&set.chain_cyclic.unwrap().complex);
    assert_eq!(hc.betti(), vec![1, 0, 1, 0, 1, 0]);
}

#[test]
fn dual_numbers_with_coefficients_in_themselves() {
    // The 2-periodic resolution of k[x]/(x^2) gives D -0-> D -2x-> D -0-> D -2x-> ...,
    // so HH^0 = D and HH^n is one-dimensional for n >= 1.
    let t = TripleFixture::DualOverGround.build(&Rationals);
    let m = regular_bimodule(&t.a);
    let set = classical_complexes(&t.a, Some(&m), 5, DEFAULT_CAP, false).unwrap();
    let h = homology_dims(set.coefficient_cochain.as_ref().unwrap());
    assert_eq!(windowed(&h), vec![2, 1, 1, 1, 1]);
    let h = homology_dims(set.coefficient_chain.as_ref().unwrap());
    assert_eq!(windowed(&h), vec![2, 1, 1, 1, 1]);
}

#[test]
fn dual_numbers_hh0() {
    let t = TripleFixture::DualOverGround.build(&Rationals);
    let set = classical_complexes(&t.a, None, 2, DEFAULT_CAP, false).unwrap();
    assert_eq!(homology_dims(&set.chain).degrees[0].betti, 2);
}

#[test]
fn operator_identities() {
    let k = Rationals;
    for f in OVER_GROUND {
        let t = f.build(&k);
        let ops = ClassicalOps::new(&t.a, DEFAULT_CAP);
        for n in 1..=3 {
            let lo = one_minus(&k, &ops.chain_lambda(n - 1).unwrap()).unwrap();
            let hi = one_minus(&k, &ops.chain_lambda(n).unwrap()).unwrap();
            let lhs = lo.mul(&k, &ops.chain_b_prime(n).unwrap()).unwrap();
            assert_eq!(lhs, ops.chain_b(n).unwrap().mul(&k, &hi).unwrap(), "{} chain {n}", f.name());
        }
        for n in 0..=2 {
            let lo = one_minus(&k, &ops.cochain_lambda(n).unwrap()).unwrap();
            let hi = one_minus(&k, &ops.cochain_lambda(n + 1).unwrap()).unwrap();
            let lhs = hi.mul(&k, &ops.cochain_b(n).unwrap()).unwrap();
            assert_eq!(lhs, ops.cochain_b_prime(n).unwrap().mul(&k, &lo).unwrap(), "{} cochain {n}", f.name());
        }
    }
}

#[test]
fn reversal_does_not_intertwine() {
    let k = Rationals;
    let t = TripleFixture::UpperTriangular.build(&k);
    let ops = ClassicalOps::new(&t.a, DEFAULT_CAP);
    let n = 1;
    let lo = one_minus(&k, &ops.cochain_reversal(n).unwrap()).unwrap();
    let hi = one_minus(&k, &ops.cochain_reversal(n + 1).unwrap()).unwrap();
    let lhs = hi.mul(&k, &ops.cochain_b(n).unwrap()).unwrap();
    assert_ne!(lhs, ops.cochain_b_prime(n).unwrap().mul(&k, &lo).unwrap());
}

#[test]
fn secondary_engine_matches_over_ground() {
    let k = Rationals;
    for f in OVER_GROUND {
        let t = f.build(&k);
        let set = classical_complexes(&t.a, None, 4, DEFAULT_CAP, false).unwrap();
        let chain = triple_chain_complex(&t, 4, DEFAULT_CAP).unwrap();
        let cochain = triple_cochain_complex(&t, 4, DEFAULT_CAP).unwrap();
        let (ch, co) = (ChainOps::new(&t, DEFAULT_CAP), CochainOps::new(&t, DEFAULT_CAP));
        for i in 0..4 {
            assert_eq!(chain.link(i), set.chain.link(i), "{} chain b {}", f.name(), i + 1);
            assert_eq!(cochain.link(i), set.cochain.link(i), "{} cochain b {i}", f.name());
            assert_eq!(ch.b_prime(i + 1).unwrap(), *set.chain_prime.link(i).unwrap());
            assert_eq!(co.b_prime(i).unwrap(), *set.cochain_prime.link(i).unwrap());
        }
        for n in 0..=4 {
            assert_eq!(ch.lambda(n).unwrap(), set.chain_lambda[n]);
            assert_eq!(co.lambda(n).unwrap(), set.cochain_lambda[n]);
        }
    }
}

#[test]
fn coefficient_complexes_match_over_ground() {
    let k = PrimeField::new(5).unwrap();
    for f in OVER_GROUND {
        let t = f.build(&k);
        for (name, m) in f.modules(&k) {
            let set = classical_complexes(&t.a, Some(&m), 4, DEFAULT_CAP, false).unwrap();
            assert!(set.cochain_cyclic.is_none());
            let co = secondary_cochain_complex(&t, &m, 4, DEFAULT_CAP).unwrap();
            let ch = secondary_chain_complex(&t, &m, 4, DEFAULT_CAP).unwrap();
            for i in 0..4 {
                assert_eq!(co.link(i), set.coefficient_cochain.as_ref().unwrap().link(i), "{} M={name} δ {i}", f.name());
                assert_eq!(ch.link(i), set.coefficient_chain.as_ref().unwrap().link(i), "{} M={name} ∂ {}", f.name(), i + 1);
            }
        }
    }
}

#[test]
fn bar_resolution_is_simplicial_in_low_degrees() {
    let k = Rationals;
    let t = TripleFixture::UpperTriangular.build(&k);
    let ops = ClassicalOps::new(&t.a, DEFAULT_CAP);
    // δ_i σ_i = δ_{i+1} σ_i = id on A^{⊗3}
    for i in 0..=1 {
        let s = ops.bar_degeneracy(1, i).unwrap();
        let id = SparseMatrix::identity(&k, 27);
        assert_eq!(ops.bar_face(2, i).unwrap().mul(&k, &s).unwrap(), id);
        assert_eq!(ops.bar_face(2, i + 1).unwrap().mul(&k, &s).unwrap(), id);
    }
}

#[test]
fn connes_sequences_are_exact() {
    for f in [TripleFixture::Trivial, TripleFixture::DualOverGround] {
        let t = f.build(&Rationals);
        let r = classical_connes_check(&t.a, 4, DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{}: {r:?}", f.name());
        assert!(!r.cohomology.checked.is_empty() && !r.homology.checked.is_empty());
    }
}

#[test]
fn connes_sequence_of_ground_field() {
    let t = TripleFixture::Trivial.build(&Rationals);
    let r = classical_connes_check(&t.a, 4, DEFAULT_CAP).unwrap();
    // homological nodes, from degree 4 down: (HH_n, HC_n, HC_{n-2})
    let hh: Vec<usize> = (0..5).map(|i| r.homology_nodes[3 * i]).collect();
    let hc: Vec<usize> = (0..5).map(|i| r.homology_nodes[3 * i + 1]).collect();
    assert_eq!(&hh[1..], &[0, 0, 0, 1]);
    assert_eq!(&hc[1..], &[0, 1, 0, 1]);
}

#[test]
fn tampered_sequence_is_caught() {
    let t = TripleFixture::DualOverGround.build(&Rationals);
    let set = classical_complexes(&t.a, None, 4, DEFAULT_CAP, false).unwrap();
    let sub = set.cochain_cyclic.unwrap();
    let quotient = quotient_by(&set.cochain, sub.subspaces.clone(), "C/C_λ").unwrap();
    let ses = ShortExactSequence { x: sub.complex, y: set.cochain, z: quotient.complex, f: sub.inclusion, g: quotient.projection };
    let mut les = les_from_ses(&ses).unwrap();
    let i = les.maps.iter().position(|m| m.matrix.nnz() > 0).unwrap();
    let shape = les.maps[i].matrix.shape();
    les.maps[i].matrix = SparseMatrix::zero(shape.0, shape.1);
    let report = check_exactness(&les);
    let bad = report.first_failure().expect("fault must be detected");
    assert!(bad.index == i || bad.index == i + 1);
}

#[test]
fn positive_characteristic_is_refused() {
    let k = PrimeField::new(3).unwrap();
    let t = TripleFixture::DualOverGround.build(&k);
    assert!(matches!(classical_connes_check(&t.a, 3, DEFAULT_CAP), Err(Error::CharacteristicRefused(_))));
}
