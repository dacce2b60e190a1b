use proptest::prelude::*;

use seccyc::complexes::{cyclic_quotient_complex, triple_chain_complex, triple_cochain_complex, ChainOps, CochainOps};
use seccyc::homology::homology_dims;
use seccyc::structure::fixtures::{self, TripleFixture};
use seccyc::structure::{validate_algebra, validate_triple, Coeff, RawAlgebra, RawProduct, Triple};
use seccyc::tensor::DEFAULT_CAP;
use seccyc::{Field, PrimeField, Rationals};

fn product(i: usize, j: usize, k: usize, c: i64) -> RawProduct {
    RawProduct { i, j, k, c: Coeff::Int(c) }
}

/// Dual numbers on the basis `{1, a + x}`.
fn shifted_dual(a: i64) -> RawAlgebra {
    let mut table = vec![product(0, 0, 0, 1), product(0, 1, 1, 1), product(1, 0, 1, 1), product(1, 1, 1, 2 * a)];
    if a != 0 {
        table.push(product(1, 1, 0, -a * a));
    }
    RawAlgebra { dim: 2, basis: vec!["1".into(), "y".into()], unit: vec![1.into(), 0.into()], table }
}

/// Upper triangular matrices with the basis listed in the order `perm`.
fn permuted_upper_triangular(perm: &[usize]) -> RawAlgebra {
    let base = fixtures::upper_triangular();
    let pos = |i: usize| perm.iter().position(|&p| p == i).unwrap();
    RawAlgebra {
        dim: 3,
        basis: perm.iter().map(|&p| base.basis[p].clone()).collect(),
        unit: perm.iter().map(|&p| base.unit[p].clone()).collect(),
        table: base.table.iter().map(|p| RawProduct { i: pos(p.i), j: pos(p.j), k: pos(p.k), c: p.c.clone() }).collect(),
    }
}

fn triple<K: Field>(k: &K, a: &RawAlgebra, b: &RawAlgebra, e: &[Vec<Coeff>]) -> Triple<K> {
    let a = validate_algebra(k, a).unwrap().expect_valid();
    let b = validate_algebra(k, b).unwrap().expect_valid();
    validate_triple(&a, &b, e).unwrap().expect_valid()
}

fn invariants(t: &Triple<Rationals>) -> (Vec<Option<usize>>, Vec<Option<usize>>, Vec<Option<usize>>) {
    let hh = homology_dims(&triple_chain_complex(t, 3, DEFAULT_CAP).unwrap()).windowed_betti();
    let hco = homology_dims(&triple_cochain_complex(t, 3, DEFAULT_CAP).unwrap()).windowed_betti();
    let hc = homology_dims(&cyclic_quotient_complex(t, 3, DEFAULT_CAP, false).unwrap().1.complex).windowed_betti();
    (hh, hco, hc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn betti_numbers_ignore_a_shift_of_basis(a in -3i64..=3) {
        let d = shifted_dual(a);
        let over_ground = triple(&Rationals, &d, &fixtures::ground(), &fixtures::unit_map(&d));
        prop_assert_eq!(invariants(&over_ground), invariants(&TripleFixture::DualOverGround.build(&Rationals)));
        let id = vec![vec![Coeff::Int(1), Coeff::Int(0)], vec![Coeff::Int(0), Coeff::Int(1)]];
        let dual_dual = triple(&Rationals, &d, &d, &id);
        prop_assert_eq!(invariants(&dual_dual), invariants(&TripleFixture::DualDual.build(&Rationals)));
    }

    #[test]
    fn betti_numbers_ignore_the_order_of_the_basis(perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let a = permuted_upper_triangular(&perm);
        let t = triple(&Rationals, &a, &fixtures::ground(), &fixtures::unit_map(&a));
        prop_assert_eq!(invariants(&t), invariants(&TripleFixture::UpperTriangular.build(&Rationals)));
    }

    #[test]
    fn identities_hold_over_prime_fields(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101, 65_521])) {
        let k = PrimeField::new(p).unwrap();
        for f in TripleFixture::ALL {
            let t = f.build(&k);
            let (ch, co) = (ChainOps::new(&t, DEFAULT_CAP), CochainOps::new(&t, DEFAULT_CAP));
            prop_assert!(triple_chain_complex(&t, 3, DEFAULT_CAP).unwrap().d_squared_failures().unwrap().is_empty());
            for n in 0..=2 {
                prop_assert_eq!(co.b(n).unwrap(), ch.b(n + 1).unwrap().transpose());
                let l = ch.lambda(n).unwrap();
                prop_assert_eq!(l.pow(&k, n as u32 + 1).unwrap(), seccyc::SparseMatrix::identity(&k, l.rows()));
            }
        }
    }
}

#[test]
fn problem_files_round_trip_through_the_public_api() {
    let (a, b, e) = TripleFixture::DualDual.raw();
    let t = triple(&Rationals, &a, &b, &e);
    assert_eq!((t.dim_a(), t.dim_b()), (2, 2));
    // C_n = A^(n+1) ⊗ B^(n(n+1)/2)
    let c = triple_chain_complex(&t, 3, DEFAULT_CAP).unwrap();
    assert_eq!(c.dims(), &[2, 8, 64, 1024]);
}
