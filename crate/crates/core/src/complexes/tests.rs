use super::*;
use crate::field::{PrimeField, Rational, Rationals};
use crate::structure::fixtures::TripleFixture;
use crate::structure::regular_bimodule;
use crate::tensor::DEFAULT_CAP;

fn scalar(m: &SparseMatrix<Rational>) -> Rational {
    assert_eq!(m.shape(), (1, 1));
    m.get(0, 0).cloned().unwrap_or_else(Rational::zero)
}

#[test]
fn trivial_triple_cochain_alternates() {
    let t = TripleFixture::Trivial.build(&Rationals);
    let c = triple_cochain_complex(&t, 5, DEFAULT_CAP).unwrap();
    assert_eq!(c.dims(), &[1, 1, 1, 1, 1, 1]);
    for n in 0..5 {
        let want = if n % 2 == 0 { Rational::zero() } else { Rational::one() };
        assert_eq!(scalar(c.link(n).unwrap()), want, "b_{n}");
    }
}

#[test]
fn trivial_triple_chain_alternates() {
    let t = TripleFixture::Trivial.build(&Rationals);
    let c = triple_chain_complex(&t, 5, DEFAULT_CAP).unwrap();
    for n in 1..=5 {
        // b_n: C_n -> C_{n-1} is Σ_{i<n} (-1)^i + (-1)^n
        let want = if n % 2 == 0 { Rational::one() } else { Rational::zero() };
        assert_eq!(scalar(c.link(n - 1).unwrap()), want, "b_{n}");
    }
}

#[test]
fn trivial_secondary_complexes_alternate() {
    let t = TripleFixture::Trivial.build(&Rationals);
    let m = TripleFixture::Trivial.modules(&Rationals).remove(0).1;
    let co = secondary_cochain_complex(&t, &m, 5, DEFAULT_CAP).unwrap();
    let ch = secondary_chain_complex(&t, &m, 5, DEFAULT_CAP).unwrap();
    for n in 0..5 {
        let want = if n % 2 == 0 { Rational::zero() } else { Rational::one() };
        assert_eq!(scalar(co.link(n).unwrap()), want);
        assert_eq!(scalar(ch.link(n).unwrap()), want);
    }
}

#[test]
fn trivial_operators() {
    let t = TripleFixture::Trivial.build(&Rationals);
    for n in 0..5 {
        let sign = if n % 2 == 0 { Rational::one() } else { Rational::from_int(-1) };
        let l = operator_matrix(&t, OperatorKind::Lambda, n, Side::Chain, DEFAULT_CAP).unwrap();
        assert_eq!(scalar(&l), sign);
        let nn = operator_matrix(&t, OperatorKind::N, n, Side::Chain, DEFAULT_CAP).unwrap();
        let want = if n % 2 == 0 { Rational::from_int(n as i64 + 1) } else { Rational::zero() };
        assert_eq!(scalar(&nn), want);
    }
}

#[test]
fn connes_b_vanishes_in_degree_zero() {
    for f in TripleFixture::ALL {
        let t = f.build(&Rationals);
        let b = operator_matrix(&t, OperatorKind::BConnes, 0, Side::Chain, DEFAULT_CAP).unwrap();
        assert!(b.is_zero());
        assert_eq!(b.shape(), (ChainOps::new(&t, DEFAULT_CAP).dim(1).unwrap(), t.dim_a()));
    }
}

#[test]
fn invalid_operator_requests() {
    let t = TripleFixture::Trivial.build(&Rationals);
    assert!(operator_matrix(&t, OperatorKind::TShift, 1, Side::Cochain, DEFAULT_CAP).is_err());
    assert!(operator_matrix(&t, OperatorKind::BConnes, 1, Side::Cochain, DEFAULT_CAP).is_err());
    assert!(operator_matrix(&t, OperatorKind::SHomotopy, 1, Side::Chain, DEFAULT_CAP).is_err());
    assert!(operator_matrix(&t, OperatorKind::SHomotopy, 0, Side::Cochain, DEFAULT_CAP).is_err());
}

#[test]
fn lambda_has_order_n_plus_one() {
    let k = Rationals;
    let t = TripleFixture::DualDual.build(&k);
    for n in 0..=3 {
        for side in [Side::Chain, Side::Cochain] {
            let l = operator_matrix(&t, OperatorKind::Lambda, n, side, DEFAULT_CAP).unwrap();
            assert_eq!(l.pow(&k, n as u32 + 1).unwrap(), SparseMatrix::identity(&k, l.rows()));
        }
    }
}

#[test]
fn chain_identities_hold() {
    let k = Rationals;
    for f in TripleFixture::ALL {
        let t = f.build(&k);
        let ops = ChainOps::new(&t, DEFAULT_CAP);
        for n in 1..=3 {
            let b = ops.b(n).unwrap();
            let bp = ops.b_prime(n).unwrap();
            let l_hi = one_minus(&k, &ops.lambda(n).unwrap()).unwrap();
            let l_lo = one_minus(&k, &ops.lambda(n - 1).unwrap()).unwrap();
            let (n_hi, n_lo) = (ops.norm(n).unwrap(), ops.norm(n - 1).unwrap());
            assert_eq!(l_lo.mul(&k, &bp).unwrap(), b.mul(&k, &l_hi).unwrap(), "{} (1-λ)b′ = b(1-λ) at {n}", f.name());
            assert_eq!(n_lo.mul(&k, &b).unwrap(), bp.mul(&k, &n_hi).unwrap(), "{} Nb = b′N at {n}", f.name());
            assert!(n_hi.mul(&k, &l_hi).unwrap().is_zero());
            assert!(l_hi.mul(&k, &n_hi).unwrap().is_zero());
        }
        assert!(ops.prime_complex(3).is_ok());
    }
}

#[test]
fn cochain_identities_hold() {
    let k = Rationals;
    for f in TripleFixture::ALL {
        let t = f.build(&k);
        let ops = CochainOps::new(&t, DEFAULT_CAP);
        for n in 0..=2 {
            let b = ops.b(n).unwrap();
            let bp = ops.b_prime(n).unwrap();
            let l_lo = one_minus(&k, &ops.lambda(n).unwrap()).unwrap();
            let l_hi = one_minus(&k, &ops.lambda(n + 1).unwrap()).unwrap();
            let (n_lo, n_hi) = (ops.norm(n).unwrap(), ops.norm(n + 1).unwrap());
            assert_eq!(l_hi.mul(&k, &b).unwrap(), bp.mul(&k, &l_lo).unwrap(), "{} (1-λ)b = b′(1-λ) at {n}", f.name());
            assert_eq!(b.mul(&k, &n_lo).unwrap(), n_hi.mul(&k, &bp).unwrap(), "{} bN = Nb′ at {n}", f.name());
        }
        assert!(ops.prime_complex(3).is_ok());
    }
}

#[test]
fn transpose_duality_low_degrees() {
    let k = Rationals;
    for f in TripleFixture::ALL {
        let t = f.build(&k);
        let ch = ChainOps::new(&t, DEFAULT_CAP);
        let co = CochainOps::new(&t, DEFAULT_CAP);
        for n in 0..=2 {
            assert_eq!(co.b(n).unwrap(), ch.b(n + 1).unwrap().transpose(), "{} b_{n}", f.name());
            assert_eq!(co.b_prime(n).unwrap(), ch.b_prime(n + 1).unwrap().transpose());
            assert_eq!(co.lambda(n).unwrap(), ch.lambda(n).unwrap().transpose());
        }
    }
}

#[test]
fn contracting_homotopy_sign() {
    let k = Rationals;
    for f in TripleFixture::ALL {
        let t = f.build(&k);
        let ops = CochainOps::new(&t, DEFAULT_CAP);
        for n in 1..=2 {
            // s_{n+1} b′_n + b′_{n-1} s_n on C^n
            let lhs = ops
                .s_homotopy(n + 1)
                .unwrap()
                .mul(&k, &ops.b_prime(n).unwrap())
                .unwrap()
                .add(&k, &ops.b_prime(n - 1).unwrap().mul(&k, &ops.s_homotopy(n).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, SparseMatrix::identity(&k, ops.dim(n).unwrap()), "{} at {n}", f.name());
        }
    }
}

#[test]
fn secondary_complexes_square_to_zero_over_f5() {
    let k = PrimeField::new(5).unwrap();
    for f in TripleFixture::ALL {
        let t = f.build(&k);
        for (_, m) in f.modules(&k) {
            assert!(secondary_cochain_complex(&t, &m, 3, DEFAULT_CAP).is_ok());
            assert!(secondary_chain_complex(&t, &m, 3, DEFAULT_CAP).is_ok());
        }
    }
}

#[test]
fn secondary_dims() {
    let k = Rationals;
    let t = TripleFixture::DualDual.build(&k);
    let m = regular_bimodule(&t.a);
    let c = secondary_cochain_complex(&t, &m, 3, DEFAULT_CAP).unwrap();
    // dim M · dimA^n · dimB^{n(n-1)/2}
    assert_eq!(c.dims(), &[2, 4, 16, 128]);
}

#[test]
fn cap_is_enforced() {
    let t = TripleFixture::DualDual.build(&Rationals);
    assert!(matches!(triple_chain_complex(&t, 4, 1000), Err(Error::DegreeTooLarge { .. })));
}

#[test]
fn cyclic_trivial_patterns() {
    let k = Rationals;
    let t = TripleFixture::Trivial.build(&k);
    let (c, sub) = cyclic_subcomplex(&t, 5, DEFAULT_CAP, false).unwrap();
    assert_eq!(sub.complex.dims(), &[1, 0, 1, 0, 1, 0]);
    sub.inclusion.verify(&sub.complex, &c).unwrap();
    let (c, q) = cyclic_quotient_complex(&t, 5, DEFAULT_CAP, false).unwrap();
    assert_eq!(q.complex.dims(), &[1, 0, 1, 0, 1, 0]);
    q.projection.verify(&c, &q.complex).unwrap();
}

#[test]
fn positive_characteristic_needs_override() {
    let k = PrimeField::new(7).unwrap();
    let t = TripleFixture::Trivial.build(&k);
    assert!(matches!(cyclic_subcomplex(&t, 2, DEFAULT_CAP, false), Err(Error::CharacteristicRefused(_))));
    assert!(cyclic_subcomplex(&t, 2, DEFAULT_CAP, true).is_ok());
}

#[test]
fn bicomplex_structure() {
    let k = Rationals;
    for f in [TripleFixture::Trivial, TripleFixture::DualOverGround, TripleFixture::DualDual] {
        let t = f.build(&k);
        let cb = cyclic_bicomplex(&t, 3, DEFAULT_CAP, false).unwrap();
        assert!(cb.bicomplex.square_failures(3).unwrap().is_empty());
        assert!(cb.bicomplex.composite_failures().unwrap().is_empty());
        cb.inclusion.verify(&cb.tot_prime, &cb.tot).unwrap();
        cb.truncation.verify(&cb.tot, &cb.tot_shift2).unwrap();
        let passing: Vec<&str> = cb.projections.iter().map(|(n, _)| n.as_str()).collect();
        assert!(passing.contains(&"(x, y) ↦ x + (1-λ)t(y)"), "{}: {passing:?}", f.name());
        assert_eq!(cb.sections.len(), 1);
    }
}
