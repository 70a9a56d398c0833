use trimat_core::lab::{
    replay, replay_witness, search_counterexamples, suite_special_case, RunOptions, SuiteReport, SuiteStatus,
    TrialConfig, Witness,
};
use trimat_core::FieldSpec;

fn quiet(threads: usize) -> RunOptions {
    RunOptions { threads, timing: false }
}

#[test]
fn search_violations_replay_from_json() {
    let cfg = TrialConfig::new(4, FieldSpec::prime(2).unwrap(), 5, 80, 7);
    let report = search_counterexamples(&cfg, quiet(1));
    assert_eq!(report.status(), SuiteStatus::ViolationsFound);
    let json = serde_json::to_string(&report).unwrap();
    let back: SuiteReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    for v in &back.violations {
        replay(v).unwrap();
        assert!(v.lhs > v.rhs);
        assert!(v.shrunk.as_ref().unwrap().dim <= 5);
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let cfg = TrialConfig::new(4, FieldSpec::prime(2).unwrap(), 5, 80, 7);
    let mut v = search_counterexamples(&cfg, quiet(1)).violations.remove(0);
    v.lhs += 1;
    assert!(replay(&v).is_err());
}

#[test]
fn special_case_is_reproducible() {
    let mut cfg = TrialConfig::new(3, FieldSpec::rational(), 0, 12, 3);
    cfg.degree_cap = 8;
    let a = suite_special_case(&cfg, quiet(1));
    let b = suite_special_case(&cfg, quiet(2));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.passed());
    assert!(a.timing.is_none());
    let timed = suite_special_case(&cfg, RunOptions::default());
    assert!(timed.timing.is_some());
}

#[test]
fn module_witness_of_four_matrices() {
    let e = trimat_core::lab::four_matrix_module(FieldSpec::prime(3).unwrap());
    let w = Witness::Module {
        module: trimat_core::io::ModuleFile::from_module(&e),
    };
    assert_eq!(replay_witness(&w).unwrap(), (5, 4));
}
