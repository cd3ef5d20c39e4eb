use expcomb::oracle::SUITES;
use expcomb::{exhaustive_check, EnumerationBounds};

fn run(suite: &str, bounds: EnumerationBounds) {
    let report = exhaustive_check(suite, bounds).unwrap();
    for c in report.counterexamples.iter().take(10) {
        eprintln!("  {c}");
    }
    assert!(
        report.passed(),
        "{suite}: {} of {} cases failed",
        report.counterexamples.len(),
        report.cases
    );
}

#[test]
fn every_suite_passes_at_small_bounds() {
    for suite in SUITES {
        run(suite, EnumerationBounds::new(3, 1));
    }
}

#[test]
fn unknown_suites_are_rejected() {
    assert!(exhaustive_check("no-such-suite", EnumerationBounds::new(2, 1)).is_err());
}
