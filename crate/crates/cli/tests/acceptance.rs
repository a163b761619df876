//! Prints one PASS/FAIL line per acceptance criterion. Criterion 4 is
//! expected to fail: the minimal resolution of R/I_w0 has ranks (1,4,5,2);
//! every other criterion must pass. Runs without the libtest harness so the
//! lines are never captured.

use std::process::ExitCode;

use critlab_cli::acceptance::run_criteria;

const EXPECTED_FAILURES: [usize; 1] = [4];

fn main() -> ExitCode {
    let criteria = run_criteria();
    for c in &criteria {
        println!("{}", c.line());
    }
    let unexpected: Vec<usize> = criteria
        .iter()
        .filter(|c| c.pass == EXPECTED_FAILURES.contains(&c.id))
        .map(|c| c.id)
        .collect();
    if criteria.len() != 10 || !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        return ExitCode::FAILURE;
    }
    println!("acceptance: {} criteria, expected failures {EXPECTED_FAILURES:?}", criteria.len());
    ExitCode::SUCCESS
}
