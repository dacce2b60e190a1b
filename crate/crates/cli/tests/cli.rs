use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn seccyc(args: &[&str], file: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seccyc")).args(args).arg(file).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn cyclic_homology_of_the_ground_field() {
    let o = seccyc(&["compute", "--theory", "hc-homology", "--max-degree", "4"], &problem("trivial.json"));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let betti: Vec<u64> = r["content"]["betti"][0]["degrees"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, [1, 0, 1, 0, 1]);
    assert!(r["content"]["betti"][0]["degrees"].as_array().unwrap().iter().all(|d| d["windowed"] == true));
}

#[test]
fn connes_cohomology_suite_passes() {
    let o = seccyc(&["verify", "--suite", "connes-co", "--field", "Q"], &problem("dual_numbers_triple.json"));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let checks = r["content"]["suites"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
    for n in 0..=3 {
        assert!(checks.iter().any(|c| c["name"].as_str().unwrap().starts_with("exact at") && c["name"].as_str().unwrap().ends_with(&format!("[{n}]"))));
    }
}

#[test]
fn prime_field_run_records_a_warning() {
    let args = ["compute", "--theory", "sec-cohomology", "--coefficients", "M", "--field", "Fp:5", "--max-degree", "3"];
    let o = seccyc(&args, &problem("dual.json"));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["content"]["field"], "Fp:5");
    assert!(!r["content"]["warnings"].as_array().unwrap().is_empty());
    assert_eq!(r["content"]["settings"]["coefficients"], "M");
}

#[test]
fn cyclic_theory_over_prime_field_needs_the_override() {
    let f = problem("dual_over_ground.json");
    let o = seccyc(&["compute", "--theory", "hc-cohomology", "--field", "Fp:7"], &f);
    assert_eq!(o.status.code(), Some(2));
    let o = seccyc(&["compute", "--theory", "hc-cohomology", "--field", "Fp:7", "--allow-positive-characteristic"], &f);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let out = tempfile::tempdir().unwrap();
    let dir = out.path().join("r");
    let d = dir.to_str().unwrap();
    let o = seccyc(&["compute", "--theory", "hh-homology", "--out", d], &problem("bad_unit.json"));
    assert_eq!(o.status.code(), Some(1));
    assert!(!dir.exists(), "compute on an invalid file writes nothing");
    let o = seccyc(&["validate", "--out", d], &problem("non_central.json"));
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(r["content"]["validation"][0]["violations"][0]["axiom"], "epsilon central");
    assert_eq!(seccyc(&["validate"], &problem("upper_triangular.json")).status.code(), Some(0));
    assert_eq!(seccyc(&["compute", "--theory", "nonsense"], &problem("trivial.json")).status.code(), Some(2));
    assert_eq!(seccyc(&["validate", "--field", "Fp:6"], &problem("trivial.json")).status.code(), Some(2));
    let o = seccyc(&["compute", "--theory", "hh-homology", "--max-degree", "9", "--cap", "1000"], &problem("dual_numbers_triple.json"));
    assert_eq!(o.status.code(), Some(3));
    let missing = seccyc(&["compute", "--theory", "sec-homology", "--coefficients", "M"], &problem("trivial.json"));
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn malformed_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.json");
    std::fs::write(&f, r#"{"field": "Q", "A": {"dim": 1}}"#).unwrap();
    assert_eq!(seccyc(&["validate"], &f).status.code(), Some(2));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(problem("trivial.json")).unwrap()).unwrap();
    v["A"]["table"][0]["c"] = Value::String("1/0".into());
    std::fs::write(&f, v.to_string()).unwrap();
    assert_eq!(seccyc(&["validate"], &f).status.code(), Some(2));
}

#[test]
fn validate_leaves_the_file_alone() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.json");
    std::fs::copy(problem("broken_module.json"), &f).unwrap();
    let before = std::fs::read(&f).unwrap();
    assert_eq!(seccyc(&["validate"], &f).status.code(), Some(1));
    assert_eq!(std::fs::read(&f).unwrap(), before);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let out = dir.path().join(name);
        let args = ["verify", "--suite", "simplicial", "--seed", "7", "--jobs", jobs, "--out", out.to_str().unwrap()];
        assert_eq!(seccyc(&args, &problem("dual.json")).status.code(), Some(0));
        let r: Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
        (r, std::fs::read(out.join("betti.csv")).unwrap())
    };
    let (a, csv_a) = run("a", "1");
    let (b, csv_b) = run("b", "3");
    assert_eq!(a["content"], b["content"]);
    assert_eq!(a["report_digest"], b["report_digest"]);
    assert_eq!(csv_a, csv_b);
    assert_eq!(a["content"]["settings"]["seed"], 7);
}

#[test]
fn csv_has_one_row_per_degree() {
    let o = seccyc(&["compute", "--theory", "hh-cohomology", "--max-degree", "3", "--format", "csv"], &problem("dual_over_ground.json"));
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "kind,name,degree,value,windowed");
    assert_eq!(rows.len(), 5);
    assert!(rows[1..].iter().all(|r| r.starts_with("betti,hh-cohomology,")));
}

#[test]
fn secondary_cohomology_agrees_with_the_library() {
    use seccyc::complexes::secondary_cochain_complex;
    use seccyc::homology::homology_dims;
    use seccyc::structure::fixtures::TripleFixture;
    use seccyc::structure::regular_bimodule;
    use seccyc::Rationals;

    let o = seccyc(&["compute", "--theory", "sec-cohomology", "--coefficients", "A", "--max-degree", "3"], &problem("dual_numbers_triple.json"));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let cli: Vec<u64> = r["content"]["betti"][0]["degrees"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    let t = TripleFixture::DualDual.build(&Rationals);
    let c = secondary_cochain_complex(&t, &regular_bimodule(&t.a), 4, seccyc::tensor::DEFAULT_CAP).unwrap();
    let lib: Vec<u64> = homology_dims(&c).betti()[..4].iter().map(|&b| b as u64).collect();
    assert_eq!(cli, lib);
}

#[test]
fn file_options_choose_suites_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let mut p: Value = serde_json::from_slice(&std::fs::read(problem("trivial.json")).unwrap()).unwrap();
    p["options"] = serde_json::json!({ "suites": ["oracle", "operators"], "seed": 9 });
    let f = dir.path().join("p.json");
    std::fs::write(&f, serde_json::to_vec(&p).unwrap()).unwrap();
    let o = seccyc(&["verify"], &f);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["content"]["settings"]["suites"], serde_json::json!(["operators", "oracle"]));
    assert_eq!(r["content"]["settings"]["seed"], 9);
    let o = seccyc(&["verify", "--suite", "simplicial"], &f);
    assert_eq!(json(&o)["content"]["settings"]["suites"], serde_json::json!(["simplicial"]));

    p["options"] = serde_json::json!({ "suites": ["nonsense"] });
    std::fs::write(&f, serde_json::to_vec(&p).unwrap()).unwrap();
    assert_eq!(seccyc(&["verify"], &f).status.code(), Some(2));
}
