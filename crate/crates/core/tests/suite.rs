use qmu::idsuite::{coverage_gaps, register_all, Expect, RunConfig};
use qmu::qcore::QError;

#[test]
fn whole_suite_behaves_as_expected() {
    let reg = register_all().unwrap();
    let rep = reg.run(&["all"], &RunConfig::new(20, 42)).unwrap();
    let off: Vec<_> = rep.cases.iter().filter(|c| !c.ok).map(|c| (&c.name, c.max_rel_residual, &c.error)).collect();
    assert!(off.is_empty(), "{off:?}");
    assert_eq!(rep.cases.len(), reg.len());
    assert!(coverage_gaps(&reg).is_empty());
    // every expected-pass case also keeps its truncation budget under its tolerance
    for c in rep.cases.iter().filter(|c| c.expected == Expect::Pass) {
        assert!(c.err_budget <= c.tol, "{} budget {:e}", c.name, c.err_budget);
    }
}

#[test]
fn runs_are_reproducible() {
    let reg = register_all().unwrap();
    let cfg = RunConfig::new(5, 9);
    let a = serde_json::to_string(&reg.run(&["mu-alpha", "hermite"], &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&reg.run(&["hermite", "mu-alpha"], &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
    let other = serde_json::to_string(&reg.run(&["mu-alpha", "hermite"], &RunConfig::new(5, 10)).unwrap()).unwrap();
    assert_ne!(a, other);
}

#[test]
fn impossible_tolerance_is_not_met() {
    let reg = register_all().unwrap();
    let mut cfg = RunConfig::new(20, 42);
    cfg.tol_override = Some(1e-30);
    let rep = reg.run(&["mu-alpha.translation"], &cfg).unwrap();
    assert!(!rep.cases[0].pass);
    assert!(!rep.all_ok());
}

#[test]
fn unknown_names_are_rejected() {
    let reg = register_all().unwrap();
    assert!(matches!(reg.run(&["mu-alpha", "nope"], &RunConfig::new(1, 1)), Err(QError::UnknownIdentity(_))));
}
