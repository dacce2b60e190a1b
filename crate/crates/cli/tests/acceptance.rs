//! Acceptance criteria 1 to 11, one line per criterion.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use seccyc::classical::classical_complexes;
use seccyc::complexes::{
    secondary_chain_complex, secondary_cochain_complex, triple_chain_complex, triple_cochain_complex, ChainComplex, ChainOps,
    CochainOps,
};
use seccyc::connes::{connes_cohomology, connes_homology};
use seccyc::homology::homology_dims;
use seccyc::remarks::degree_zero_checks;
use seccyc::structure::fixtures::{self, TripleFixture};
use seccyc::structure::{regular_bimodule, validate_algebra, validate_bimodule, validate_triple, Validation};
use seccyc::suites::{run_suite, Suite, SuiteOptions};
use seccyc::tensor::DEFAULT_CAP;
use seccyc::{Field, PrimeField, Rationals};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let e = start.elapsed();
    ensure(e <= limit, || format!("took {e:.1?}, limit {limit:?}"))?;
    Ok(e)
}

fn suite_on(f: TripleFixture, suite: Suite) -> Result<usize, String> {
    let t = f.build(&Rationals);
    let r = run_suite(&t, &f.modules(&Rationals), suite, &SuiteOptions::default()).map_err(|e| format!("{}: {e}", f.name()))?;
    ensure(r.passed(), || format!("{}: {:?}", f.name(), r.first_failure()))?;
    Ok(r.checks.len())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let k = Rationals;
    let bad = validate_algebra(&k, &fixtures::bad_unit()).map_err(|e| e.to_string())?;
    let r = bad.report().ok_or("bad unit accepted")?;
    ensure(r.violations.iter().any(|v| v.axiom == "left unit" && v.witness == ["u", "x"]), || format!("{r}"))?;

    let ut = validate_algebra(&k, &fixtures::upper_triangular()).unwrap().expect_valid();
    let d = validate_algebra(&k, &fixtures::dual_numbers()).unwrap().expect_valid();
    let nc = validate_triple(&ut, &d, &fixtures::non_central_epsilon()).map_err(|e| e.to_string())?;
    let r = nc.report().ok_or("non-central epsilon accepted")?;
    ensure(r.has("epsilon central") && r.violations.iter().all(|v| v.witness.contains(&"x".to_string())), || format!("{r}"))?;

    let t = TripleFixture::DualOverGround.build(&k);
    let broken = validate_bimodule(&t, &fixtures::broken_dual_module()).map_err(|e| e.to_string())?;
    let r = broken.report().ok_or("broken bimodule accepted")?;
    ensure(r.violations.iter().any(|v| v.axiom == "right unit" && v.witness[0] == "m0"), || format!("{r}"))?;

    for raw in [fixtures::ground(), fixtures::dual_numbers(), fixtures::upper_triangular()] {
        ensure(validate_algebra(&k, &raw).unwrap().is_valid(), || format!("{:?} rejected", raw.basis))?;
    }
    for f in TripleFixture::ALL {
        let (a, b, e) = f.raw();
        let a = validate_algebra(&k, &a).unwrap().expect_valid();
        let b = validate_algebra(&k, &b).unwrap().expect_valid();
        let t = match validate_triple(&a, &b, &e).unwrap() {
            Validation::Valid(t) => t,
            Validation::Invalid(r) => return Err(format!("{} rejected: {r}", f.name())),
        };
        for raw in [f.augmentation_module(), fixtures::regular(&f.raw().0)] {
            ensure(validate_bimodule(&t, &raw).unwrap().is_valid(), || format!("{} module rejected", f.name()))?;
        }
    }
    let e = within(Duration::from_secs(1), start)?;
    Ok(format!("3 violations caught with witnesses, all valid fixtures accepted ({e:.2?})"))
}

fn d_squared<K: Field>(k: &K) -> Result<usize, String> {
    let mut n = 0;
    for f in [TripleFixture::Trivial, TripleFixture::DualOverGround, TripleFixture::DualDual] {
        let t = f.build(k);
        let mut complexes: Vec<ChainComplex<K>> = vec![
            triple_chain_complex(&t, 4, DEFAULT_CAP).map_err(|e| e.to_string())?,
            triple_cochain_complex(&t, 3, DEFAULT_CAP).map_err(|e| e.to_string())?,
        ];
        for (_, m) in f.modules(k) {
            complexes.push(secondary_chain_complex(&t, &m, 4, DEFAULT_CAP).map_err(|e| e.to_string())?);
            complexes.push(secondary_cochain_complex(&t, &m, 3, DEFAULT_CAP).map_err(|e| e.to_string())?);
        }
        for c in &complexes {
            let bad = c.d_squared_failures().map_err(|e| e.to_string())?;
            ensure(bad.is_empty(), || format!("{} {}: d² ≠ 0 at {bad:?}", f.name(), c.label))?;
            n += 1;
        }
    }
    Ok(n)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let n = d_squared(&Rationals)? + d_squared(&PrimeField::new(5).unwrap())?;
    let e = within(Duration::from_secs(300), start)?;
    Ok(format!("{n} complexes over Q and F5 square to zero ({e:.1?})"))
}

fn criterion_3() -> Outcome {
    let n: usize = TripleFixture::ALL.into_iter().map(|f| suite_on(f, Suite::Simplicial)).sum::<Result<_, _>>()?;
    Ok(format!("{n} simplicial, compatibility and equivariance checks on all fixtures"))
}

fn criterion_4() -> Outcome {
    let n: usize = TripleFixture::ALL.into_iter().map(|f| suite_on(f, Suite::Operators)).sum::<Result<_, _>>()?;
    Ok(format!("{n} exact matrix identities on all fixtures"))
}

fn criterion_5() -> Outcome {
    let mut thetas = Vec::new();
    for f in TripleFixture::ALL {
        let t = f.build(&Rationals);
        let r = seccyc::connes::acyclicity(&t, 4, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(r.theta.is_some(), || format!("{}: no uniform sign", f.name()))?;
        let degrees: Vec<usize> = r.prime_homology.iter().map(|(n, _)| *n).collect();
        ensure(degrees == [1, 2, 3], || format!("{}: degrees {degrees:?}", f.name()))?;
        ensure(r.prime_homology.iter().all(|(_, b)| *b == 0), || format!("{}: {:?}", f.name(), r.prime_homology))?;
        thetas.push(r.theta.unwrap());
    }
    ensure(thetas.windows(2).all(|w| w[0] == w[1]), || format!("signs differ: {thetas:?}"))?;
    Ok(format!("θ = {:+} on all fixtures, H^1..H^3 of b′ vanish", thetas[0]))
}

fn criterion_6() -> Outcome {
    let mut n = 0;
    for f in [TripleFixture::DualOverGround, TripleFixture::UpperTriangular] {
        n += suite_on(f, Suite::Oracle)?;
    }
    // the oracle's own pattern for C^•(D, D)
    let t = TripleFixture::DualOverGround.build(&Rationals);
    let m = regular_bimodule(&t.a);
    let set = classical_complexes(&t.a, Some(&m), 5, DEFAULT_CAP, false).map_err(|e| e.to_string())?;
    let ours = homology_dims(&secondary_cochain_complex(&t, &m, 5, DEFAULT_CAP).map_err(|e| e.to_string())?).windowed_betti();
    let theirs = homology_dims(set.coefficient_cochain.as_ref().unwrap()).windowed_betti();
    ensure(ours == theirs, || format!("HH^•(D, D): {ours:?} against {theirs:?}"))?;
    let pattern: Vec<usize> = theirs.into_iter().flatten().collect();
    Ok(format!("{n} entrywise and Betti comparisons for D and UT2; HH^•(D, D) = {pattern:?} on both sides"))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for f in TripleFixture::ALL {
        let t = f.build(&Rationals);
        for c in degree_zero_checks(&t, &f.modules(&Rationals), DEFAULT_CAP, false).map_err(|e| e.to_string())? {
            ensure(c.equal, || format!("{} {}: {} against {}", f.name(), c.name, c.computed, c.expected))?;
            n += 1;
        }
    }
    Ok(format!("{n} degree-zero identities on all fixtures"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for f in [TripleFixture::DualDual, TripleFixture::DualOverGround] {
        let t = f.build(&Rationals);
        let r = connes_cohomology(&t, 4, DEFAULT_CAP, false).map_err(|e| format!("{}: {e}", f.name()))?;
        ensure(r.exactness.passed() && r.les.lift_independent, || format!("{}: {:?}", f.name(), r.exactness.first_failure()))?;
        let degrees: Vec<usize> = r.exactness.checked.iter().filter_map(|c| r.les.nodes[c.index].degree).collect();
        ensure((0..=2).all(|d| degrees.contains(&d)), || format!("{}: exactness only at {degrees:?}", f.name()))?;
        let shifted: Vec<usize> = r.shifts.iter().filter(|s| s.equal).map(|s| s.n).collect();
        ensure(shifted == [1, 2, 3], || format!("{}: {:?}", f.name(), r.shifts))?;
        parts.push(format!("{} {} nodes", f.name(), r.exactness.checked.len()));
    }
    let e = within(Duration::from_secs(600), start)?;
    Ok(format!("exact at {}; H^n(C/C_λ) = HC^(n-1) for n ≤ 3 ({e:.1?})", parts.join(", ")))
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for f in TripleFixture::ALL {
        let t = f.build(&Rationals);
        let r = connes_homology(&t, 4, DEFAULT_CAP, false).map_err(|e| format!("{}: {e}", f.name()))?;
        ensure(r.passed(), || format!("{}: {:?}", f.name(), r.exactness.first_failure()))?;
        ensure(r.rows.len() == 5, || format!("{}: rows {}", f.name(), r.rows.len()))?;
        let degrees: Vec<usize> = r.exactness.checked.iter().filter_map(|c| r.les.nodes[c.index].degree).collect();
        ensure((0..=2).all(|d| degrees.contains(&d)), || format!("{}: exactness only at {degrees:?}", f.name()))?;
        ensure(r.tot_prime_vs_hochschild.iter().filter(|(n, _, _)| *n <= 2).count() == 3, || f.name().to_string())?;
        ensure(!r.periodicity.is_empty() && !r.connecting.is_empty(), || format!("{}: S or B missing", f.name()))?;
        ensure(!r.candidates.is_empty(), || format!("{}: no candidates recorded", f.name()))?;
        let chain_maps = r.candidates.iter().filter(|c| c.chain_map == Some(true)).count();
        parts.push(format!("{} ({} of {} candidates are chain maps)", f.name(), chain_maps, r.candidates.len()));
    }
    Ok(format!("squares, rows, Tot sequence and H(Tot′) = HH verified for {}", parts.join(", ")))
}

fn criterion_10() -> Outcome {
    for f in TripleFixture::ALL {
        let t = f.build(&Rationals);
        let (ch, co) = (ChainOps::new(&t, DEFAULT_CAP), CochainOps::new(&t, DEFAULT_CAP));
        for n in 0..=3 {
            let (a, b) = (co.b(n).map_err(|e| e.to_string())?, ch.b(n + 1).map_err(|e| e.to_string())?);
            ensure(a == b.transpose(), || format!("{}: b^{n} is not the transpose of b_{}", f.name(), n + 1))?;
        }
        let h = homology_dims(&triple_chain_complex(&t, 4, DEFAULT_CAP).map_err(|e| e.to_string())?).windowed_betti();
        let hc = homology_dims(&triple_cochain_complex(&t, 4, DEFAULT_CAP).map_err(|e| e.to_string())?).windowed_betti();
        ensure(h[..4] == hc[..4] && h[..4].iter().all(Option::is_some), || format!("{}: {h:?} against {hc:?}", f.name()))?;
    }
    Ok("transposition exact and HH^n = HH_n for n ≤ 3 on all fixtures".into())
}

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn verify_all(jobs: usize, out: &std::path::Path) -> Result<(serde_json::Value, Duration), String> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_seccyc"))
        .args(["verify", "--suite", "all", "--field", "Q", "--jobs", &jobs.to_string(), "--out"])
        .arg(out)
        .arg(problem("dual_numbers_triple.json"))
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(status.code() == Some(0), || format!("--jobs {jobs}: exit {status}"))?;
    let text = std::fs::read_to_string(out.join("report.json")).map_err(|e| e.to_string())?;
    Ok((serde_json::from_str(&text).map_err(|e| e.to_string())?, elapsed))
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (one, t1) = verify_all(1, &dir.path().join("jobs1"))?;
    let (four, t4) = verify_all(4, &dir.path().join("jobs4"))?;
    ensure(one["content"] == four["content"], || "reports differ between --jobs 1 and --jobs 4".into())?;
    ensure(one["report_digest"] == four["report_digest"], || "digests differ".into())?;
    let limit = Duration::from_secs(15 * 60);
    ensure(t1 <= limit && t4 <= limit, || format!("took {t1:.0?} and {t4:.0?}"))?;
    let rss: Vec<u64> = [&one, &four].iter().filter_map(|r| r["run"]["peak_rss_kb"].as_u64()).collect();
    ensure(rss.iter().all(|&kb| kb <= 4 * 1024 * 1024), || format!("peak memory {rss:?} kB"))?;
    let mem = rss.iter().max().map(|kb| format!(", peak {} MB", kb / 1024)).unwrap_or_default();
    Ok(format!("identical reports at --jobs 1 ({t1:.1?}) and --jobs 4 ({t4:.1?}){mem}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("validation", criterion_1),
        ("d² = 0", criterion_2),
        ("simplicial suites", criterion_3),
        ("operator identities", criterion_4),
        ("acyclicity", criterion_5),
        ("classical oracle", criterion_6),
        ("degree-zero remarks", criterion_7),
        ("cohomology exact sequence", criterion_8),
        ("homology exact sequence", criterion_9),
        ("duality", criterion_10),
        ("performance envelope", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("criterion {:>2} {name}: PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
