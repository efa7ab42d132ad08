use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

use homotope_cli::run;

fn call(args: &[&str]) -> (i32, Value, String) {
    let mut argv = vec!["homotope"];
    argv.extend_from_slice(args);
    let o = run(argv);
    let v = if o.stdout.is_empty() { Value::Null } else { serde_json::from_str(&o.stdout).expect("report is JSON") };
    (o.code, v, o.stderr)
}

fn check<'a>(v: &'a Value, id: &str) -> &'a Value {
    v["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn axioms_on_sym3() {
    let (code, v, err) = call(&["axioms", "--pair", "sym:R:3"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pair"], "sym:R:3");
    assert_eq!(v["passed"], true);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["J1+", "J1-", "J2+", "J2-"]);
    // sym(3) has dimension 6: 6³ basis triples for (J1) on each side
    assert_eq!(check(&v, "J1+")["cases"], 216);
}

#[test]
fn fibration_onto_the_point_space() {
    let (code, v, err) = call(&["fibration", "--pair", "asym:R:3", "--alpha", "family:3.c", "--params", r#"{"u":[0,0,1],"A":"dia(1,1,0)"}"#]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["data"]["base_dim"], 2);
    assert_eq!(v["data"]["fiber_dim"], 1);
    assert_eq!(v["checks"].as_array().unwrap().len(), 5);
    assert_eq!(v["passed"], true);
}

#[test]
fn classification_suite_passes() {
    let (code, v, err) = call(&["verify", "classification", "--max-size", "3", "--seed", "7"]);
    assert_eq!(code, 0, "{err}");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["id"] == "membership/1.b/R"));
    for id in ["ktwo-equivalence", "rivillis/spin:3,0", "rivillis/spin:2,1"] {
        assert_eq!(check(&v, id)["passed"], true, "{id}");
    }
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert_eq!(check(&v, "ktwo-equivalence")["cases"], 625);
}

#[test]
fn failing_check_exits_one_with_witness() {
    let (code, v, err) = call(&["svar-check", "--pair", "sym:R:2", "--alpha", "[[1,0,0],[0,0,0],[0,0,2]]"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert!(err.starts_with("check membership failed at ["), "{err}");
    assert!(check(&v, "membership")["witness"]["tuple"].is_array());
}

#[test]
fn homotope_of_a_non_member_is_a_failed_check() {
    let (code, v, err) = call(&["homotope", "--pair", "sym:R:2", "--alpha", "[[1,0,0],[0,0,0],[0,0,2]]"]);
    assert_eq!(code, 1);
    assert_eq!(check(&v, "membership")["passed"], false);
    assert!(err.starts_with("check membership failed"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["axioms", "--pair", "bogus"][..],
        &["frobnicate"],
        &["svar-check", "--pair", "sym:R:2"],
        &["svar-check", "--pair", "sym:R:2", "--alpha", "[[1,0],[0,1]]"],
        &["svar-check", "--pair", "sym:R:2", "--alpha", "not json"],
        &["liealg", "--kind", "gl", "--params", "[[1,0],[0,1],[1,1]]x"],
        &["ideal", "--pair", "sym:R:2"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    let o = run(["homotope", "--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("verify"));
    assert_eq!(run(["homotope", "--version"]).code, 0);
}

#[test]
fn alpha_from_file_checks_the_pair() {
    let dir = std::env::temp_dir().join(format!("homotope-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("alpha.json");
    std::fs::write(&path, r#"{"pair":"sym:R:2","matrix":[[1,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(call(&["svar-check", "--pair", "sym:R:2", "--file", p]).0, 0);
    assert_eq!(call(&["svar-check", "--pair", "sym:R:2", "--alpha", &format!("file:{p}")]).0, 0);
    assert_eq!(call(&["svar-check", "--pair", "sym:R:3", "--file", p]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_and_out_file() {
    let o = run(["homotope", "axioms", "--pair", "sym:R:2", "--format", "csv"]);
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "id,passed,cases,coverage,witness,detail");
    assert_eq!(lines[1], "J1+,true,27,exhaustive,,");
    assert_eq!(lines.len(), 5);

    let path = std::env::temp_dir().join(format!("homotope-out-{}.json", std::process::id()));
    let o = run(["homotope", "axioms", "--pair", "sym:R:2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn timing_is_opt_in() {
    let (_, v, _) = call(&["axioms", "--pair", "sym:R:1"]);
    assert!(v.get("timing_ms").is_none());
    let (_, v, _) = call(&["axioms", "--pair", "sym:R:1", "--timing"]);
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn liealg_kinds() {
    let (code, v, _) = call(&["liealg", "--kind", "o3", "--params", "[1,0,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["killing_signature"], serde_json::json!([1, 0, 2]));
    let (code, v, _) = call(&["liealg", "--kind", "orth", "--params", "dia(1,1,1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["dim"], 3);
    assert!(v["data"]["efk"].is_object());
    let (code, v, _) = call(&["liealg", "--kind", "gl", "--params", "[[1,0]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["dim"], 2);
}

#[test]
fn imbedding_of_ax_plus_b() {
    let (code, v, _) = call(&["imbed", "--pair", "rect:R:1x2", "--alpha", "[[1,0],[0,0]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["h_dim"], 1);
    assert_eq!(v["data"]["killing_signature"], serde_json::json!([1, 0, 2]));
}

#[test]
fn ideal_descriptors() {
    let (code, v, err) = call(&["ideal", "--pair", "asym:R:4", "--params", r#"{"kind":"point","u":[0,0,0,1]}"#]);
    assert_eq!(code, 0, "{err}");
    for id in ["inner", "kern-equals-perp", "kern-routes-agree", "complement", "point-proportional", "point-projective"] {
        assert_eq!(check(&v, id)["passed"], true, "{id}");
    }
    let (code, _, err) = call(&["ideal", "--pair", "spin:2,1", "--params", r#"{"kind":"isotropic","basis":[[1,0,1]]}"#]);
    assert_eq!(code, 0, "{err}");
    let (code, _, _) = call(&["ideal", "--pair", "spin:2,1", "--params", r#"{"kind":"isotropic","basis":[[1,0,0]]}"#]);
    assert_ne!(code, 0);
}

#[test]
fn other_suites_pass() {
    for suite in ["positivity", "isomorphisms", "polarized", "associative"] {
        let args: &[&str] = if suite == "isomorphisms" { &["verify", suite] } else { &["verify", suite, "--max-size", "2"] };
        let (code, v, err) = call(args);
        assert_eq!(code, 0, "{suite}: {err}");
        assert!(!v["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn traceform_and_homotope() {
    let (code, v, err) = call(&["traceform", "--pair", "hermC:2", "--alpha", "id"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["data"]["cartan_signature"], serde_json::json!([4, 0, 0]));
    let (code, v, err) = call(&["homotope", "--pair", "asym:R:3", "--alpha", "family:3.c", "--params", r#"{"u":[0,0,1],"A":"dia(1,1,0)"}"#]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["data"]["rank"], 2);
}

#[test]
fn binary_matches_library() {
    let args = ["axioms", "--pair", "rect:C:1x2"];
    let out = Command::new(env!("CARGO_BIN_EXE_homotope")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), run(std::iter::once("homotope").chain(args)).stdout);
    let out = Command::new(env!("CARGO_BIN_EXE_homotope")).args(["axioms"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn reports_are_deterministic(seed in 0u64..1000) {
        let s = seed.to_string();
        let args = ["homotope", "--seed", &s, "verify", "classification", "--max-size", "2", "--draws", "2", "--samples", "10"];
        let a = run(args);
        let b = run(args);
        prop_assert_eq!(a.code, 0);
        prop_assert_eq!(a.stdout, b.stdout);
    }
}
