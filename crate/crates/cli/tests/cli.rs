use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use trimat_core::io::BetaFile;
use trimat_core::lab::{suite_main_theorem, RunOptions, SuiteReport, TrialConfig};
use trimat_core::{counterexample_check, FieldSpec, InequalityReport};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn trimat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimat"))
        .args(args)
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn algebra_dim_of_four_matrices() {
    let o = trimat(&["algebra-dim", "--module", &path("e-matrices.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn four_matrix_map_is_a_counterexample() {
    let o = trimat(&["check", "--beta", &path("pair4beta.json")]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("3 + 2 > 3 + 1: counterexample"), "{text}");
    assert!(text.contains("extension: dim 4, algebra dimension 5"), "{text}");
    let o = trimat(&["check-cyclic", "--beta", &path("pair4beta.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("2 > 1"));
}

#[test]
fn check_json_round_trips() {
    let o = trimat(&["check", "--beta", &path("pair4beta.json"), "--json"]);
    let parsed: InequalityReport = serde_json::from_slice(&o.stdout).unwrap();
    let file = BetaFile::read(&data("pair4beta.json")).unwrap();
    let beta = file.load(&data(""), 20).unwrap().beta;
    assert_eq!(parsed, counterexample_check(&beta).unwrap());
}

#[test]
fn small_extension_holds() {
    let o = trimat(&["check", "--beta", &path("small3beta.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 + 1 <= 2 + 1: holds"));
    let o = trimat(&["extend", "--beta", &path("small3beta.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["algebra_dimension"], 3);
}

#[test]
fn main_theorem_suite_matches_library() {
    let args = [
        "verify", "main-theorem", "--field", "5", "--trials", "200", "--seed", "42", "--max-dim", "8",
    ];
    let o = trimat(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failures, 0 violations"));

    let mut json_args = args.to_vec();
    json_args.extend(["--json", "--no-timing"]);
    let a = trimat(&json_args);
    let b = trimat(&[&json_args[..], &["--threads", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let parsed: SuiteReport = serde_json::from_slice(&a.stdout).unwrap();
    let cfg = TrialConfig::new(3, FieldSpec::prime(5).unwrap(), 8, 200, 42);
    let direct = suite_main_theorem(&cfg, RunOptions { threads: 1, timing: false });
    assert_eq!(parsed, direct);
}

#[test]
fn search_reports_violations_with_status_two() {
    let o = trimat(&["search", "--trials", "100", "--json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(2));
    let r: SuiteReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!r.violations.is_empty());
    for v in &r.violations {
        trimat_core::lab::replay(v).unwrap();
    }
}

#[test]
fn gorenstein_solver_recovers_planted_element() {
    let o = trimat(&["gorenstein-solve", "--beta", &path("ci222-gamma.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["solution"], serde_json::json!(["0", "1", "0", "0", "0", "0", "1", "0"]));
}

#[test]
fn inductive_step_on_square_of_maximal_ideal() {
    let o = trimat(&[
        "inductive-step",
        "--beta",
        &path("m2-zero-beta.json"),
        "--sub",
        &path("m2-sub.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 + 0 <= 3: holds"), "{text}");
    assert!(text.contains("3 + 0 <= 4: holds"), "{text}");
}

#[test]
fn annihilator_and_socle_queries() {
    let o = trimat(&["annihilator", "--module", &path("e-matrices.json"), "--poly", "x*w - y*z"]);
    assert_eq!(stdout(&o).trim(), "annihilates");
    let o = trimat(&["annihilator", "--module", &path("e-matrices.json"), "--poly", "x"]);
    assert_eq!(stdout(&o).trim(), "does not annihilate");
    let o = trimat(&["socle", "--ideal", &path("pair4.json"), "--poly", "z + w"]);
    assert_eq!(stdout(&o).trim(), "in the socle");
    let o = trimat(&["socle", "--module", &path("e-matrices.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 2);
}

#[test]
fn module_info_json() {
    let o = trimat(&["module-info", "--ideal", &path("pair4.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["socle_dim"], 2);
    assert_eq!(v["cyclic"], true);
}

#[test]
fn errors_exit_with_one() {
    let o = trimat(&["check", "--beta", "missing.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.json"));
    let o = trimat(&["check"]);
    assert_eq!(o.status.code(), Some(1));
    let o = trimat(&["verify", "main-theorem", "--field", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = trimat(&["socle", "--module", &path("e-matrices.json"), "--poly", "x"]);
    assert_eq!(o.status.code(), Some(1));
    let o = trimat(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}
