//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Budgets and trial counts are pinned in
//! `klein33::selftest`.

use std::process::ExitCode;

use klein33::selftest::{self, DEFAULT_SEED};

fn main() -> ExitCode {
    assert_eq!(selftest::count(), 11);
    let mut failed = 0;
    for id in 1..=selftest::count() {
        let outcome = selftest::run_one(id, DEFAULT_SEED);
        println!("{}", outcome.line());
        if !outcome.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        selftest::count() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
