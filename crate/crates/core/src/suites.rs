//! Verification suites: every machine check grouped by topic, with
//! witnesses on failure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::{classical_complexes, classical_connes_check};
use crate::complexes::{
    one_minus, secondary_chain_complex, secondary_cochain_complex, triple_chain_complex, triple_cochain_complex,
    ChainComplex, ChainOps, CochainOps,
};
use crate::connes::{acyclicity, connes_cohomology, connes_homology};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::homology_dims;
use crate::linalg::rank;
use crate::remarks::degree_zero_checks;
use crate::simplicial::{
    build_bar_family, build_coefficient_family, build_simplicial_algebra, check_action_axioms, check_action_compatibility,
    check_algebra_morphisms, check_simplicial_identities, coboundary_of_equivariant, equivariant_hom_basis, psi,
    CoefficientKind, SampleOptions,
};
use crate::sparse::SparseMatrix;
use crate::structure::{Bimodule, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Simplicial,
    Operators,
    Acyclicity,
    ConnesCo,
    ConnesHo,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Simplicial, Suite::Operators, Suite::Acyclicity, Suite::ConnesCo, Suite::ConnesHo, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Simplicial => "simplicial",
            Suite::Operators => "operators",
            Suite::Acyclicity => "acyclicity",
            Suite::ConnesCo => "connes-co",
            Suite::ConnesHo => "connes-ho",
            Suite::Oracle => "oracle",
        }
    }

    /// Whether the suite needs characteristic zero (or an explicit override).
    pub fn cyclic(self) -> bool {
        matches!(self, Suite::ConnesCo | Suite::ConnesHo)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// One pass/fail check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, witness: None }
    }

    pub fn new(name: impl Into<String>, passed: bool, witness: impl FnOnce() -> String) -> Self {
        Check { name: name.into(), passed, witness: (!passed).then(witness) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Recorded outcomes that are not pass/fail assertions.
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cap: u128,
    pub samples: usize,
    pub allow_positive_characteristic: bool,
    /// Top chain degree for `d² = 0`, identities and the oracle.
    pub chain_top: usize,
    /// Top cochain degree for `d² = 0` and identities.
    pub cochain_top: usize,
    /// Top degree of the simplicial identity checks.
    pub simplicial_top: usize,
    /// Top degree of the compatibility checks.
    pub compatibility_top: usize,
    /// Top degree of the exact-sequence constructions.
    pub connes_top: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: crate::simplicial::DEFAULT_SEED,
            cap: crate::tensor::DEFAULT_CAP,
            samples: crate::simplicial::DEFAULT_SAMPLES,
            allow_positive_characteristic: false,
            chain_top: 4,
            cochain_top: 3,
            simplicial_top: 3,
            compatibility_top: 2,
            connes_top: 4,
        }
    }
}

/// Runs one suite on `t` with the given coefficient modules.
pub fn run_suite<K: Field>(t: &Triple<K>, modules: &[(&str, Bimodule<K>)], suite: Suite, opts: &SuiteOptions) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome { suite, checks: Vec::new(), notes: Vec::new() };
    match suite {
        Suite::Simplicial => simplicial(t, modules, opts, &mut out)?,
        Suite::Operators => operators(t, modules, opts, &mut out)?,
        Suite::Acyclicity => {
            let r = acyclicity(t, opts.cochain_top + 1, opts.cap)?;
            out.checks.push(Check::new("contracting homotopy has a uniform sign", r.theta.is_some(), || {
                format!("θ = +1 fails at {:?}, θ = -1 fails at {:?}", r.failures_plus, r.failures_minus)
            }));
            for (n, b) in &r.prime_homology {
                out.checks.push(Check::new(format!("H^{n}(C, b′) = 0"), *b == 0, || format!("dimension {b}")));
            }
            if let Some(theta) = r.theta {
                out.notes.push(format!("θ = {theta:+} on degrees {:?}", r.checked_degrees));
            }
        }
        Suite::ConnesCo => connes_co(t, opts, &mut out)?,
        Suite::ConnesHo => connes_ho(t, opts, &mut out)?,
        Suite::Oracle => oracle(t, modules, opts, &mut out)?,
    }
    Ok(out)
}

fn simplicial<K: Field>(t: &Triple<K>, modules: &[(&str, Bimodule<K>)], opts: &SuiteOptions, out: &mut SuiteOutcome) -> Result<()> {
    let k = t.field();
    let top = opts.simplicial_top;
    let sample = SampleOptions { seed: opts.seed, samples: opts.samples, exhaustive_up_to: 1 };
    let ctop = opts.compatibility_top;

    let mut identities = |family: &crate::simplicial::SimplicialFamily<K>| {
        let r = check_simplicial_identities(k, family, top);
        out.checks.push(Check::new(format!("simplicial identities of {} through degree {}", r.label, r.top), r.passed(), || {
            format!("{:?}", r.first_failure())
        }));
    };
    let (bar, _) = build_bar_family(t, top, opts.cap)?;
    identities(&bar);
    let alg = build_simplicial_algebra(t, top, opts.cap)?;
    identities(&alg.family);
    let mut coefficient = vec![(None, CoefficientKind::H), (None, CoefficientKind::L)];
    for (_, m) in modules {
        coefficient.push((Some(m), CoefficientKind::S));
        coefficient.push((Some(m), CoefficientKind::C));
    }
    for (m, kind) in &coefficient {
        let (f, _) = build_coefficient_family(t, *m, *kind, top, opts.cap)?;
        identities(&f);
    }

    let alg = build_simplicial_algebra(t, ctop, opts.cap)?;
    let r = check_algebra_morphisms(&alg, ctop, &sample)?;
    out.checks.push(Check::new(format!("faces and degeneracies of {} are algebra maps", alg.family.label), r.passed(), || {
        format!("{:?}", r.first_failure())
    }));
    let mut compat = |family: &crate::simplicial::SimplicialFamily<K>, act: &crate::simplicial::ActionFamily<K>| -> Result<()> {
        let r = check_action_compatibility(&alg, family, act, ctop, &sample)?;
        out.checks.push(Check::new(format!("action on {} is compatible through degree {ctop}", family.label), r.passed(), || {
            format!("{:?}", r.first_failure())
        }));
        let bad = check_action_axioms(&alg, act, ctop, opts.seed);
        out.checks.push(Check::new(format!("action on {} is unital and associative", family.label), bad.is_empty(), || {
            format!("fails in degrees {bad:?}")
        }));
        Ok(())
    };
    let (bar, act) = build_bar_family(t, ctop, opts.cap)?;
    compat(&bar, &act)?;
    for (m, kind) in &coefficient {
        let (f, act) = build_coefficient_family(t, *m, *kind, ctop, opts.cap)?;
        compat(&f, &act)?;
    }
    out.notes.push(format!("compatibility exhaustive through degree 1, then {} seeded pairs per map (seed {})", opts.samples, opts.seed));

    // Hom_A(B_n, ℋ^n) ≅ C^n, compatibly with the differentials
    let (bar, _) = build_bar_family(t, 2, opts.cap)?;
    let (h, _) = build_coefficient_family(t, None, CoefficientKind::H, 2, opts.cap)?;
    let co = CochainOps::new(t, opts.cap);
    for n in 0..=1 {
        let hom = equivariant_hom_basis(t, n, opts.cap)?;
        let cols = hom.basis.iter().map(|g| psi(t, n, g)).collect::<Result<Vec<_>>>()?;
        let dc = co.dim(n)?;
        let m = SparseMatrix::from_columns(k, dc, cols.clone())?;
        let (r, d) = (rank(k, &m), hom.basis.len());
        out.checks.push(Check::new(format!("Ψ_{n} is an isomorphism onto C^{n}"), r == dc && d == dc, || {
            format!("dim Hom = {d}, rank Ψ = {r}, dim C^{n} = {dc}")
        }));
        let b = co.b(n)?;
        let mut bad = None;
        for (j, (g, col)) in hom.basis.iter().zip(&cols).enumerate() {
            let dg = coboundary_of_equivariant(k, &bar, &h, n, g)?;
            if psi(t, n + 1, &dg)? != b.mul_vec(k, col) {
                bad = Some(j);
                break;
            }
        }
        out.checks.push(Check::new(format!("Ψ_{} ∂ = b Ψ_{n}", n + 1), bad.is_none(), || format!("basis map {bad:?}")));
    }
    Ok(())
}

fn d_squared<K: Field>(c: &ChainComplex<K>, out: &mut SuiteOutcome) -> Result<()> {
    let bad = c.d_squared_failures()?;
    out.checks.push(Check::new(format!("d² = 0 on {} through degree {}", c.label, c.top()), bad.is_empty(), || {
        format!("nonzero composite at {bad:?}")
    }));
    Ok(())
}

fn equal_matrices<E: Clone + PartialEq + Send + Sync>(name: String, a: &SparseMatrix<E>, b: &SparseMatrix<E>) -> Check {
    Check::new(name, a == b, || {
        if a.shape() != b.shape() {
            format!("shapes {:?} and {:?}", a.shape(), b.shape())
        } else {
            let first = a.entries().zip(b.entries()).find(|(x, y)| x != y).map(|(x, _)| (x.0, x.1));
            format!("first differing entry near {first:?}")
        }
    })
}

fn operators<K: Field>(t: &Triple<K>, modules: &[(&str, Bimodule<K>)], opts: &SuiteOptions, out: &mut SuiteOutcome) -> Result<()> {
    let k = t.field();
    let (ctop, cotop) = (opts.chain_top, opts.cochain_top);
    d_squared(&triple_chain_complex(t, ctop, opts.cap)?, out)?;
    d_squared(&triple_cochain_complex(t, cotop, opts.cap)?, out)?;
    for (name, m) in modules {
        let mut ch = secondary_chain_complex(t, m, ctop, opts.cap)?;
        ch.label = format!("{} with M = {name}", ch.label);
        d_squared(&ch, out)?;
        let mut co = secondary_cochain_complex(t, m, cotop, opts.cap)?;
        co.label = format!("{} with M = {name}", co.label);
        d_squared(&co, out)?;
    }

    let ch = ChainOps::new(t, opts.cap);
    d_squared(&ch.prime_complex(ctop)?, out)?;
    for n in 0..=ctop {
        let l = ch.lambda(n)?;
        let id = SparseMatrix::identity(k, l.rows());
        out.checks.push(equal_matrices(format!("λ^{} = id on C_{n}", n + 1), &l.pow(k, n as u32 + 1)?, &id));
        let (lm, nn) = (one_minus(k, &l)?, ch.norm(n)?);
        let zero = SparseMatrix::zero(l.rows(), l.cols());
        out.checks.push(equal_matrices(format!("N(1-λ) = 0 on C_{n}"), &nn.mul(k, &lm)?, &zero));
        out.checks.push(equal_matrices(format!("(1-λ)N = 0 on C_{n}"), &lm.mul(k, &nn)?, &zero));
        if n == 0 {
            continue;
        }
        let (b, bp) = (ch.b(n)?, ch.b_prime(n)?);
        let (l_lo, l_hi) = (one_minus(k, &ch.lambda(n - 1)?)?, lm);
        let (n_lo, n_hi) = (ch.norm(n - 1)?, nn);
        out.checks.push(equal_matrices(format!("(1-λ)b′ = b(1-λ) on C_{n}"), &l_lo.mul(k, &bp)?, &b.mul(k, &l_hi)?));
        out.checks.push(equal_matrices(format!("Nb = b′N on C_{n}"), &n_lo.mul(k, &b)?, &bp.mul(k, &n_hi)?));
    }

    let co = CochainOps::new(t, opts.cap);
    d_squared(&co.prime_complex(cotop)?, out)?;
    for n in 0..=cotop {
        let l = co.lambda(n)?;
        let id = SparseMatrix::identity(k, l.rows());
        out.checks.push(equal_matrices(format!("λ^{} = id on C^{n}", n + 1), &l.pow(k, n as u32 + 1)?, &id));
        if n == cotop {
            continue;
        }
        let (b, bp) = (co.b(n)?, co.b_prime(n)?);
        let (l_lo, l_hi) = (one_minus(k, &l)?, one_minus(k, &co.lambda(n + 1)?)?);
        let (n_lo, n_hi) = (co.norm(n)?, co.norm(n + 1)?);
        out.checks.push(equal_matrices(format!("(1-λ)b = b′(1-λ) on C^{n}"), &l_hi.mul(k, &b)?, &bp.mul(k, &l_lo)?));
        out.checks.push(equal_matrices(format!("bN = Nb′ on C^{n}"), &b.mul(k, &n_lo)?, &n_hi.mul(k, &bp)?));
        out.checks.push(equal_matrices(format!("b^{n} is the transpose of b_{}", n + 1), &b, &ch.b(n + 1)?.transpose()));
    }

    // Betti numbers of the dual pair, windowed on both sides
    let top = cotop + 1;
    let hc = homology_dims(&triple_chain_complex(t, top, opts.cap)?).windowed_betti();
    let hco = homology_dims(&triple_cochain_complex(t, top, opts.cap)?).windowed_betti();
    for n in 0..=cotop {
        let (a, b) = (hco[n], hc[n]);
        out.checks.push(Check::new(format!("dim HH^{n} = dim HH_{n}"), a.is_some() && a == b, || format!("{a:?} against {b:?}")));
    }
    Ok(())
}

fn connes_co<K: Field>(t: &Triple<K>, opts: &SuiteOptions, out: &mut SuiteOutcome) -> Result<()> {
    let r = connes_cohomology(t, opts.connes_top, opts.cap, opts.allow_positive_characteristic)?;
    out.checks.push(Check::pass("0 → C_λ → C → C/C_λ → 0 is degreewise exact"));
    for node in &r.exactness.checked {
        out.checks.push(Check::new(format!("exact at {}", node.label), node.exact, || {
            format!("incoming rank {}, kernel dimension {}", node.incoming_rank, node.kernel_dim)
        }));
    }
    out.checks.push(Check::new("connecting maps independent of the lift", r.les.lift_independent, String::new));
    for s in &r.shifts {
        out.checks.push(Check::new(format!("dim H^{}(C/C_λ) = dim HC^{}", s.n, s.n - 1), s.equal, || {
            format!("{} against {}", s.quotient, s.cyclic_below)
        }));
    }
    out.notes.push(format!("node dimensions {:?}", r.les.node_dims()));
    out.notes.push(format!("{} nodes outside the window not asserted", r.exactness.skipped.len()));
    Ok(())
}

fn connes_ho<K: Field>(t: &Triple<K>, opts: &SuiteOptions, out: &mut SuiteOutcome) -> Result<()> {
    let r = connes_homology(t, opts.connes_top, opts.cap, opts.allow_positive_characteristic)?;
    out.checks.push(Check::new("bicomplex squares anticommute", r.square_failures.is_empty(), || {
        format!("{:?}", r.square_failures)
    }));
    out.checks.push(Check::new("bicomplex rows are complexes", r.composite_failures.is_empty(), || {
        r.composite_failures.join("; ")
    }));
    for row in &r.rows {
        out.checks.push(Check::new(format!("Ker(1-λ) = Im N on C_{}", row.q), row.kernel_one_minus_lambda_is_image_norm, || {
            format!("rank N {} + rank(1-λ) {} ≠ {}", row.rank_norm, row.rank_one_minus_lambda, row.dim)
        }));
        out.checks.push(Check::new(format!("Ker N = Im(1-λ) on C_{}", row.q), row.kernel_norm_is_image_one_minus_lambda, || {
            format!("rank N {} + rank(1-λ) {} ≠ {}", row.rank_norm, row.rank_one_minus_lambda, row.dim)
        }));
    }
    out.checks.push(Check::pass("0 → Tot′ → Tot → Tot[2] → 0 is degreewise exact"));
    for node in &r.exactness.checked {
        out.checks.push(Check::new(format!("exact at {}", node.label), node.exact, || {
            format!("incoming rank {}, kernel dimension {}", node.incoming_rank, node.kernel_dim)
        }));
    }
    out.checks.push(Check::new("connecting maps independent of the lift", r.les.lift_independent, String::new));
    for (n, a, b) in &r.tot_prime_vs_hochschild {
        out.checks.push(Check::new(format!("dim H_{n}(Tot′) = dim HH_{n}"), a == b, || format!("{a} against {b}")));
    }
    out.checks.push(Check::new("S and B produced", !r.periodicity.is_empty() && !r.connecting.is_empty(), String::new));
    for c in r.connecting_checks.iter().filter(|c| c.formula == "(1-λ)tN") {
        out.checks.push(Check::new(format!("B on H_{} is (1-λ)tN on the first column, read through {}", c.n, c.projection), c.sign == Some(1), || {
            format!("lands in cycles: {}, sign {:?}", c.lands_in_cycles, c.sign)
        }));
    }
    for c in r.connecting_checks.iter().filter(|c| c.formula != "(1-λ)tN") {
        let verdict = match c.sign {
            Some(s) => format!("agrees with sign {s:+}"),
            None if c.lands_in_cycles => "disagrees".into(),
            None => "leaves the cycles".into(),
        };
        out.notes.push(format!("{} on H_{} through {}: {verdict}", c.formula, c.n, c.projection));
    }
    for c in &r.candidates {
        let verdict = match (c.well_typed, c.chain_map) {
            (false, _) => "ill-typed".to_string(),
            (true, Some(true)) => "chain map".into(),
            (true, Some(false)) => "not a chain map".into(),
            (true, None) => "untested".into(),
        };
        out.notes.push(format!("candidate {}: {verdict} ({})", c.name, c.note));
    }
    out.notes.push(format!("node dimensions {:?}", r.les.node_dims()));
    Ok(())
}

fn oracle<K: Field>(t: &Triple<K>, modules: &[(&str, Bimodule<K>)], opts: &SuiteOptions, out: &mut SuiteOutcome) -> Result<()> {
    let k = t.field();
    for c in degree_zero_checks(t, modules, opts.cap, opts.allow_positive_characteristic)? {
        out.checks.push(Check::new(c.name.clone(), c.equal, || format!("{} against {}", c.computed, c.expected)));
    }
    if t.dim_b() != 1 {
        out.notes.push("B is not the ground field; the classical comparison does not apply".into());
        return Ok(());
    }
    let top = opts.chain_top;
    let set = classical_complexes(&t.a, None, top, opts.cap, false)?;
    let chain = triple_chain_complex(t, top, opts.cap)?;
    let cochain = triple_cochain_complex(t, top, opts.cap)?;
    let (ch, co) = (ChainOps::new(t, opts.cap), CochainOps::new(t, opts.cap));
    let eq = |name: String, a: Option<&SparseMatrix<K::Elem>>, b: Option<&SparseMatrix<K::Elem>>| match (a, b) {
        (Some(a), Some(b)) => equal_matrices(name, a, b),
        _ => Check::new(name, false, || "missing matrix".into()),
    };
    for i in 0..top {
        out.checks.push(eq(format!("chain b_{} matches the classical matrix", i + 1), chain.link(i), set.chain.link(i)));
        out.checks.push(eq(format!("cochain b^{i} matches the classical matrix"), cochain.link(i), set.cochain.link(i)));
        out.checks.push(eq(format!("chain b′_{} matches the classical matrix", i + 1), Some(&ch.b_prime(i + 1)?), set.chain_prime.link(i)));
        out.checks.push(eq(format!("cochain b′^{i} matches the classical matrix"), Some(&co.b_prime(i)?), set.cochain_prime.link(i)));
    }
    for n in 0..=top {
        out.checks.push(equal_matrices(format!("chain λ_{n} matches the classical matrix"), &ch.lambda(n)?, &set.chain_lambda[n]));
        out.checks.push(equal_matrices(format!("cochain λ^{n} matches the classical matrix"), &co.lambda(n)?, &set.cochain_lambda[n]));
    }
    let betti = |a: &ChainComplex<K>, b: &ChainComplex<K>, name: &str, out: &mut SuiteOutcome| {
        let (x, y) = (homology_dims(a).windowed_betti(), homology_dims(b).windowed_betti());
        out.checks.push(Check::new(format!("{name} Betti numbers match the classical ones"), x == y, || format!("{x:?} against {y:?}")));
    };
    betti(&chain, &set.chain, "HH_•", out);
    betti(&cochain, &set.cochain, "HH^•", out);
    for (name, m) in modules {
        let set = classical_complexes(&t.a, Some(m), top, opts.cap, false)?;
        let co = secondary_cochain_complex(t, m, top, opts.cap)?;
        let ch = secondary_chain_complex(t, m, top, opts.cap)?;
        let (cc, cch) = (set.coefficient_cochain.as_ref(), set.coefficient_chain.as_ref());
        for i in 0..top {
            out.checks.push(eq(format!("δ^{i} with M = {name} matches the classical matrix"), co.link(i), cc.and_then(|c| c.link(i))));
            out.checks.push(eq(format!("∂_{} with M = {name} matches the classical matrix", i + 1), ch.link(i), cch.and_then(|c| c.link(i))));
        }
        if let (Some(cc), Some(cch)) = (cc, cch) {
            betti(&co, cc, &format!("H^• with M = {name}"), out);
            betti(&ch, cch, &format!("H_• with M = {name}"), out);
        }
    }
    if k.characteristic() == 0 {
        let classical = classical_connes_check(&t.a, opts.cochain_top, opts.cap)?;
        let co = connes_cohomology(t, opts.cochain_top, opts.cap, false)?;
        let ho = connes_homology(t, opts.cochain_top, opts.cap, false)?;
        let (x, y) = (co.les.node_dims(), classical.cohomology_nodes.clone());
        out.checks.push(Check::new("cohomology sequence matches the classical one", x == y, || format!("{x:?} against {y:?}")));
        let (x, y) = (ho.les.node_dims(), classical.homology_nodes.clone());
        out.checks.push(Check::new("homology sequence matches the classical one", x == y, || format!("{x:?} against {y:?}")));
        out.checks.push(Check::new("classical sequences are exact", classical.passed(), || format!("{classical:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::structure::fixtures::TripleFixture;

    fn small() -> SuiteOptions {
        SuiteOptions { chain_top: 3, cochain_top: 2, simplicial_top: 2, connes_top: 3, samples: 32, ..SuiteOptions::default() }
    }

    #[test]
    fn every_suite_passes_on_small_fixtures() {
        for f in [TripleFixture::Trivial, TripleFixture::DualOverGround, TripleFixture::UpperTriangular] {
            let t = f.build(&Rationals);
            let modules = f.modules(&Rationals);
            for s in Suite::ALL {
                let r = run_suite(&t, &modules, s, &small()).unwrap();
                assert!(r.passed(), "{} {s}: {:?}", f.name(), r.first_failure());
                assert!(!r.checks.is_empty());
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn cyclic_suites_refuse_positive_characteristic() {
        let k = PrimeField::new(5).unwrap();
        let t = TripleFixture::DualOverGround.build(&k);
        assert!(run_suite(&t, &[], Suite::ConnesCo, &small()).is_err());
        let opts = SuiteOptions { allow_positive_characteristic: true, ..small() };
        assert!(run_suite(&t, &[], Suite::ConnesCo, &opts).is_ok());
    }

    #[test]
    fn runs_are_deterministic() {
        let t = TripleFixture::DualDual.build(&Rationals);
        let modules = TripleFixture::DualDual.modules(&Rationals);
        let a = run_suite(&t, &modules, Suite::Simplicial, &small()).unwrap();
        let b = run_suite(&t, &modules, Suite::Simplicial, &small()).unwrap();
        assert_eq!(a, b);
    }
}
