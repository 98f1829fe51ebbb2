//! A deliberately wrong adjoint must be caught by the catalogue.

use jetvar::operators::Fault;
use jetvar::paperlab::Lab;

#[test]
fn sign_flipped_adjoint_is_detected() {
    let lab = Lab::new().with_cases(20).with_fault(Fault::AdjointSignFlip);
    let ids = ["prop2", "scaling-cosym", "prop1", "remark-density"].map(String::from);
    let report = lab.run_suite("paper", Some(&ids)).unwrap();
    let failed: Vec<&str> = report
        .results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.check_id.as_str())
        .collect();
    assert_eq!(failed, ["prop2", "scaling-cosym"]);
    for r in report.results.iter().filter(|r| !r.passed()) {
        assert!(
            r.counterexample.as_deref().is_some_and(|c| !c.is_empty()),
            "{}",
            r.check_id
        );
    }
    assert!(!report.all_passed());
}

#[test]
fn sign_flip_breaks_adjoint_properties() {
    let lab = Lab::new().with_cases(20).with_fault(Fault::AdjointSignFlip);
    let ids = ["concomitant-witness", "presymp-skew"].map(String::from);
    let report = lab.run_suite("properties", Some(&ids)).unwrap();
    assert_eq!(report.summary.fail, 2, "{}", report.to_text());
}

#[test]
fn seeds_do_not_change_verdicts() {
    let ids = ["prop1", "prop2", "commutator-dt"].map(String::from);
    for seed in [1, 2, 3] {
        let report = Lab::new()
            .with_seed(seed)
            .with_cases(25)
            .run_suite("paper", Some(&ids))
            .unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
    }
}
