//! Degree-zero descriptions of the homology theories, checked against
//! brute-force spans.

use serde::Serialize;

use crate::classical::classical_complexes;
use crate::complexes::{cyclic_quotient_complex, secondary_chain_complex, triple_chain_complex};
use crate::error::Result;
use crate::field::Field;
use crate::homology::homology_dims;
use crate::linalg::Echelon;
use crate::sparse::{lin_comb, SparseVec};
use crate::structure::{Bimodule, Triple};

/// A computed degree-zero dimension against its closed description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkCheck {
    pub name: String,
    pub computed: usize,
    pub expected: usize,
    pub equal: bool,
}

impl RemarkCheck {
    fn new(name: String, computed: usize, expected: usize) -> Self {
        RemarkCheck { name, computed, expected, equal: computed == expected }
    }
}

fn span_dim<K: Field>(k: &K, ambient: usize, vectors: impl IntoIterator<Item = SparseVec<K::Elem>>) -> usize {
    let mut e = Echelon::<K>::new(ambient, false);
    for v in vectors {
        e.insert(k, &v);
    }
    e.rank()
}

/// `dim M / span{a m - m a}` over basis elements.
pub fn coinvariants_dim<K: Field>(t: &Triple<K>, m: &Bimodule<K>) -> usize {
    let k = t.field();
    let one = k.one();
    let minus = k.neg(&one);
    let comms = (0..t.dim_a()).flat_map(|a| (0..m.dim()).map(move |x| (a, x))).map(|(a, x)| {
        let av = [(a, one.clone())];
        let xv = [(x, one.clone())];
        lin_comb(k, &one, &m.act_left(&av, &xv), &minus, &m.act_right(&xv, &av))
    });
    m.dim() - span_dim(k, m.dim(), comms.collect::<Vec<_>>())
}

/// `dim A / [A, A]` over basis elements.
pub fn abelianization_dim<K: Field>(t: &Triple<K>) -> usize {
    let k = t.field();
    let one = k.one();
    let minus = k.neg(&one);
    let d = t.dim_a();
    let comms: Vec<_> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| lin_comb(k, &one, t.a.basis_product(i, j), &minus, t.a.basis_product(j, i)))
        .collect();
    d - span_dim(k, d, comms)
}

fn h0<K: Field>(c: &crate::complexes::ChainComplex<K>) -> usize {
    homology_dims(c).degrees[0].betti
}

/// `H_0((A,B,ε); M)` for each module, `HH_0(A,B,ε) = HH_0(A)` when `A` is
/// commutative, and `HC_0(A,B,ε) = A/[A,A]` when the cyclic quotient may be
/// formed over `k`.
pub fn degree_zero_checks<K: Field>(
    t: &Triple<K>,
    modules: &[(&str, Bimodule<K>)],
    cap: u128,
    allow_positive_characteristic: bool,
) -> Result<Vec<RemarkCheck>> {
    let k = t.field();
    let mut out = Vec::new();
    for (name, m) in modules {
        let c = secondary_chain_complex(t, m, 1, cap)?;
        out.push(RemarkCheck::new(format!("H_0 with M = {name} is M/[A,M]"), h0(&c), coinvariants_dim(t, m)));
    }
    if t.a.is_commutative() {
        let hh = h0(&triple_chain_complex(t, 1, cap)?);
        let classical = h0(&classical_complexes(&t.a, None, 1, cap, false)?.chain);
        out.push(RemarkCheck::new("HH_0 equals HH_0(A)".into(), hh, classical));
    }
    if k.characteristic() == 0 || allow_positive_characteristic {
        let (_, q) = cyclic_quotient_complex(t, 1, cap, allow_positive_characteristic)?;
        out.push(RemarkCheck::new("HC_0 is A/[A,A]".into(), h0(&q.complex), abelianization_dim(t)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::structure::fixtures::TripleFixture;
    use crate::tensor::DEFAULT_CAP;

    #[test]
    fn remarks_hold_on_all_fixtures() {
        for f in TripleFixture::ALL {
            let t = f.build(&Rationals);
            let checks = degree_zero_checks(&t, &f.modules(&Rationals), DEFAULT_CAP, false).unwrap();
            assert!(checks.len() >= 3, "{}", f.name());
            assert!(checks.iter().all(|c| c.equal), "{}: {checks:?}", f.name());
        }
    }

    #[test]
    fn upper_triangular_abelianization() {
        let t = TripleFixture::UpperTriangular.build(&Rationals);
        assert_eq!(abelianization_dim(&t), 2);
        let checks = degree_zero_checks(&t, &[], DEFAULT_CAP, false).unwrap();
        assert_eq!(checks, vec![RemarkCheck::new("HC_0 is A/[A,A]".into(), 2, 2)]);
    }

    #[test]
    fn dual_numbers_in_themselves() {
        let t = TripleFixture::DualDual.build(&Rationals);
        let m = crate::structure::regular_bimodule(&t.a);
        assert_eq!(coinvariants_dim(&t, &m), 2);
        let c = secondary_chain_complex(&t, &m, 1, DEFAULT_CAP).unwrap();
        assert_eq!(h0(&c), 2);
    }

    #[test]
    fn positive_characteristic_skips_cyclic() {
        let k = PrimeField::new(5).unwrap();
        let t = TripleFixture::DualOverGround.build(&k);
        let checks = degree_zero_checks(&t, &TripleFixture::DualOverGround.modules(&k), DEFAULT_CAP, false).unwrap();
        assert!(checks.iter().all(|c| c.equal));
        assert!(!checks.iter().any(|c| c.name.starts_with("HC")));
    }
}
