use std::path::Path;
use std::process::{Command, Output};

const PAIR_R: &str = r#"{"name": "pair-R", "base_chart": {"affine": ["z"]}, "arrow_chart": {"affine": ["x", "y"]},
 "g2_chart": {"affine": ["x", "y", "z"]}, "g3_chart": {"affine": ["w", "x", "y", "z"]},
 "maps": {"g3_p1": ["w", "x"], "g3_p2": ["x", "y"], "g3_p3": ["y", "z"], "i": ["y", "x"], "m": ["x", "z"],
          "pr1": ["x", "y"], "pr2": ["y", "z"], "s": ["y"], "t": ["x"], "u": ["z", "z"]}}"#;

fn stackcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stackcalc"))
        .args(args)
        .env_remove("STACKCALC_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn lemmas_on_pair_groupoid_pass() {
    let out = stackcalc(&["run", "lemmas", "--example", "pair-R", "--seed", "7", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] lemmas:"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn valid_input_file_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "pair.json", PAIR_R);
    let out = stackcalc(&["validate", "--input", &path, "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn corrupted_multiplication_fails_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let bad = PAIR_R.replace(r#""m": ["x", "z"]"#, r#""m": ["y", "z"]"#);
    assert_ne!(bad, PAIR_R);
    let path = write(dir.path(), "corrupted.json", &bad);
    let out = stackcalc(&["validate", "--input", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"holds\": false"));
    assert!(text.contains("\"kind\": \"failure\""));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.json", "{\"base_chart\": ");
    let out = stackcalc(&["validate", "--input", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    let bad_expr = PAIR_R.replace(r#""t": ["x"]"#, r#""t": ["x +* 1"]"#);
    let path = write(dir.path(), "expr.json", &bad_expr);
    assert_eq!(stackcalc(&["validate", "--input", &path]).status.code(), Some(2));
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(stackcalc(&["lemmas", "--example", "nowhere"]).status.code(), Some(2));
    assert_eq!(stackcalc(&["lemmas", "--example", "pair-R", "--degree", "0"]).status.code(), Some(2));
    assert_eq!(stackcalc(&["lemmas", "--example", "pair-R", "--samples", "zero"]).status.code(), Some(2));
    assert_eq!(stackcalc(&["lemmas"]).status.code(), Some(2));
}

#[test]
fn reflection_cohomology_reports_the_obstruction() {
    let out = stackcalc(&["cohomology", "--example", "z2-reflection", "--degree", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"obstruction\""));
    assert!(text.contains("takes the value 2"));
    assert!(text.contains("\"x^3*d_x\""));
}

#[test]
fn seed_from_environment_and_output_file_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |file: &str| {
        let p = dir.path().join(file);
        let status = Command::new(env!("CARGO_BIN_EXE_stackcalc"))
            .args(["hom-category", "--example", "torus-bundle-R", "--format", "json", "--output"])
            .arg(&p)
            .env("STACKCALC_SEED", "42")
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        std::fs::read(p).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().contains("\"seed\": 42"));
}
