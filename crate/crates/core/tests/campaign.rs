use richctx::verifier::{
    resistance_report, run_named, run_property_suite, summary_table, to_json_lines, Scope,
    VerificationReport, PROPERTIES,
};

fn assert_all_pass(reports: &[VerificationReport]) {
    let failing: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    assert!(failing.is_empty(), "{}", summary_table(reports));
}

#[test]
fn every_property_on_all_contexts_up_to_four_by_four() {
    let scope = Scope::exhaustive(4, 4).unwrap();
    let reports = run_property_suite(&scope);
    assert_eq!(reports.len(), PROPERTIES.len());
    assert_all_pass(&reports);
    assert!(reports.iter().all(|r| r.contexts_checked == scope.len()));
}

#[test]
fn every_property_on_seeded_five_by_five_samples() {
    let scope = Scope::sampled(5, 5, 1000, 0).unwrap();
    let reports = run_property_suite(&scope);
    assert_all_pass(&reports);
    assert!(reports.iter().all(|r| r.seed == Some(0)));
}

#[test]
fn reports_are_deterministic() {
    let scope = Scope::sampled(4, 5, 50, 11).unwrap();
    let a = to_json_lines(&run_named(&scope, &["image-bound", "doubling"]).unwrap());
    let b = to_json_lines(&run_named(&scope, &["doubling", "image-bound"]).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 2);
}

#[test]
fn resistant_context_suite() {
    let r = resistance_report();
    assert!(r.passed);
    assert_eq!(r.contexts_checked, 12);
}
