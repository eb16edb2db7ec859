use std::path::Path;
use std::process::Command as Proc;

use su3_bethe::{Error, RKind, Rat};
use su3sp::case::{standard_l1, standard_m1, to_json, Suite};
use su3sp::corpus::{generate, CorpusSpec};
use su3sp::{load_case, load_cases, load_report, parse_cases, run, save_cases, save_report, CaseFile, Command, Route, RunOptions};

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_su3sp")
}

fn oracle_case() -> CaseFile {
    let mut c = CaseFile::new("oracle-1-1", vec![q(2, 3)], vec![q(1, 3)], vec![q(11, 5)], vec![q(-1, 7)]);
    c.chain = Some(vec![q(1, 7), q(-3, 5), q(9, 4)]);
    c
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_routes_standard_case_gives_four() {
    let rep = run(Command::CheckRoutes, &[standard_l1()], &RunOptions::default());
    assert!(rep.passed);
    let vals = &rep.cases[0].checks[0].values;
    assert_eq!(vals.len(), 4);
    for r in ["sum", "rec", "int1", "int3"] {
        assert_eq!(vals[r], "4", "route {r}");
    }
}

#[test]
fn check_routes_mu_standard_case() {
    let rep = run(Command::CheckRoutes, &[standard_m1()], &RunOptions::default());
    assert!(rep.passed);
    assert!(rep.cases[0].checks[0].values.values().all(|v| v == "-2"));
}

#[test]
fn compute_each_route() {
    for (route, want) in [(Route::Sum, "4"), (Route::Rec, "4"), (Route::Int1, "4"), (Route::Int3, "4")] {
        let opts = RunOptions { route, ..Default::default() };
        let rep = run(Command::Compute, &[standard_l1()], &opts);
        assert!(rep.passed);
        assert_eq!(rep.cases[0].checks[0].values[route.name()], want);
    }
}

#[test]
fn oracle_route_without_chain_fails_in_report() {
    let opts = RunOptions { route: Route::Oracle, ..Default::default() };
    let rep = run(Command::Compute, &[standard_l1()], &opts);
    assert!(!rep.passed);
    assert!(rep.cases[0].checks[0].error.as_deref().unwrap().contains("no chain"));
}

#[test]
fn oracle_compare_three_sites() {
    let rep = run(Command::OracleCompare, &[oracle_case()], &RunOptions::default());
    assert!(rep.passed);
    let v = &rep.cases[0].checks[0].values;
    assert_eq!(v["oracle"], v["sum"]);
    assert_ne!(v["sum"], "0");
}

#[test]
fn corpus_seed_seven() {
    let spec = CorpusSpec { seed: 7, count: 5, max_lm: 3, ..Default::default() };
    let cases = generate(&spec).unwrap();
    assert_eq!(cases.len(), 5);
    for c in &cases {
        assert!(c.genericity().is_empty());
        assert!(c.l + c.m <= 3 && c.l + c.m >= 1);
        c.validate().unwrap();
    }
    assert_eq!(cases, generate(&spec).unwrap());
    assert_ne!(cases, generate(&CorpusSpec { seed: 8, ..spec }).unwrap());
}

#[test]
fn corpus_with_chain_is_generic_including_chain() {
    let cases = generate(&CorpusSpec { seed: 3, count: 8, max_lm: 3, sites: 3, ..Default::default() }).unwrap();
    for c in &cases {
        assert_eq!(c.chain.as_ref().unwrap().len(), 3);
        assert!(c.genericity().is_empty());
    }
    let rep = run(Command::OracleCompare, &cases, &RunOptions::default());
    assert!(rep.passed);
}

#[test]
fn case_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut cases = generate(&CorpusSpec { seed: 11, count: 6, max_lm: 3, sites: 2, ..Default::default() }).unwrap();
    cases[0].checks = vec![Suite::Fill, Suite::Residues];
    cases[1].onshell_b = false;
    cases[2] = cases[2].clone().with_r(RKind::R1, q(-7, 3), q(22, 7));
    let p = dir.path().join("c.json");
    save_cases(&cases, &p).unwrap();
    assert_eq!(load_cases(&p).unwrap(), cases);
    let single = write(dir.path(), "one.json", &to_json(&standard_l1()));
    assert_eq!(load_case(&single).unwrap(), standard_l1());
}

#[test]
fn report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases = generate(&CorpusSpec { seed: 5, count: 4, max_lm: 2, ..Default::default() }).unwrap();
    let rep = run(Command::Identities, &cases, &RunOptions::default());
    let p = dir.path().join("r.json");
    save_report(&rep, &p).unwrap();
    assert_eq!(load_report(&p).unwrap(), rep);
}

#[test]
fn decimal_rejected_with_location() {
    let text = "{\n  \"id\": \"x\",\n  \"l\": 1,\n  \"m\": 0,\n  \"mu_b\": [],\n  \"lam_b\": [\"1.5\"],\n  \"lam_c\": [\"0\"],\n  \"mu_c\": []\n}\n";
    match parse_cases(text) {
        Err(Error::Parse { line, field, .. }) => {
            assert_eq!(line, 6);
            assert_eq!(field, "lam_b[0]");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn missing_l_rejected() {
    let text = r#"{"id": "x", "m": 0, "mu_b": [], "lam_b": [], "lam_c": [], "mu_c": []}"#;
    match parse_cases(text) {
        Err(Error::Parse { msg, .. }) => assert!(msg.contains("`l`"), "{msg}"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn cardinality_mismatch_rejected() {
    let text = r#"{"id": "x", "l": 2, "m": 0, "mu_b": [], "lam_b": ["1/2"], "lam_c": ["7"], "mu_c": []}"#;
    match parse_cases(text) {
        Err(Error::Parse { field, .. }) => assert_eq!(field, "x.lam_b"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn duplicate_ids_rejected() {
    let c = to_json(&vec![standard_l1(), standard_l1()]);
    assert!(parse_cases(&c).is_err());
}

#[test]
fn nongeneric_case_is_reported_before_computation() {
    let mut c = standard_l1();
    c.allow_nongeneric = false;
    let rep = run(Command::CheckRoutes, &[c], &RunOptions::default());
    assert!(!rep.passed);
    assert!(rep.cases[0].checks.is_empty());
    assert_eq!(rep.cases[0].genericity, vec!["1 - 0 = 1".to_string()]);
}

#[test]
fn reports_are_deterministic_and_ordered() {
    let mut cases = generate(&CorpusSpec { seed: 21, count: 6, max_lm: 3, sites: 2, ..Default::default() }).unwrap();
    cases.reverse();
    let seq = run(Command::Identities, &cases, &RunOptions { seed: 4, ..Default::default() });
    let par = run(Command::Identities, &cases, &RunOptions { seed: 4, parallel: 3, ..Default::default() });
    assert_eq!(seq.without_timing().to_json(), par.without_timing().to_json());
    let ids: Vec<&str> = seq.cases.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(seq.passed);
}

fn no_floats(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_u64(),
        serde_json::Value::Array(a) => a.iter().all(no_floats),
        serde_json::Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn limits_report_carries_calibration_and_no_floats() {
    let mut c = CaseFile::new("lim", vec![q(5, 2)], vec![q(-4, 3)], vec![q(9, 2)], vec![q(-13, 3)]).with_r(RKind::R1, q(9, 2), q(2, 5)).with_r(RKind::R3, q(-13, 3), q(-3, 7));
    c.limits.max_size = 2;
    let rep = run(Command::LimitsCheck, &[c], &RunOptions::default());
    assert!(rep.passed);
    assert_eq!(rep.cases[0].checks.len(), 2);
    for k in &rep.cases[0].checks {
        assert!(k.note.as_deref().unwrap().starts_with("calibration"));
        assert_eq!(k.values["lhs"], k.values["rhs"]);
    }
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    assert!(no_floats(&v));
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", &to_json(&vec![standard_l1(), standard_m1()]));
    let out = dir.path().join("rep.json");
    let st = Proc::new(bin()).args(["check-routes", "--input"]).arg(&good).arg("--output").arg(&out).status().unwrap();
    assert!(st.success());
    let rep = load_report(&out).unwrap();
    assert_eq!(rep.cases.len(), 2);
    assert_eq!(rep.cases[0].id, "standard-0-1");

    let mut bad_case = standard_l1();
    bad_case.allow_nongeneric = false;
    let bad = write(dir.path(), "bad.json", &to_json(&bad_case));
    let st = Proc::new(bin()).args(["check-routes", "--input"]).arg(&bad).output().unwrap();
    assert_eq!(st.status.code(), Some(1));

    let broken = write(dir.path(), "broken.json", "{\"id\": \"x\", \"l\": \"1/2\"}");
    let st = Proc::new(bin()).args(["compute", "--input"]).arg(&broken).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("parse error"));
}

#[test]
fn binary_corpus_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let st = Proc::new(bin()).args(["generate-corpus", "--seed", "7", "--count", "5", "--max-lm", "3", "--output"]).arg(p).status().unwrap();
        assert!(st.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let cases = load_cases(&a).unwrap();
    assert_eq!(cases.len(), 5);
    assert!(cases.iter().all(|c| c.genericity().is_empty()));
    let st = Proc::new(bin()).args(["check-routes", "--parallel", "2", "--input"]).arg(&a).output().unwrap();
    assert!(st.status.success());
}
