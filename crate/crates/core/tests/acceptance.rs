//! Acceptance gate: every verification check must pass at its pinned
//! tolerance. Prints one line per check.

use casimir_core::verify;

#[test]
fn acceptance_suite() {
    let checks = verify::run(None);
    assert!(!checks.is_empty());
    let mut failed = 0;
    for c in &checks {
        println!(
            "{} [{}] {} | measured {:+.9e} target {:+.9e} tol {:.3e} ({:.2}s)",
            if c.passed { "PASS" } else { "FAIL" },
            c.group,
            c.id,
            c.measured,
            c.target,
            c.tolerance,
            c.seconds
        );
        if !c.passed {
            failed += 1;
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance checks failed");
}
