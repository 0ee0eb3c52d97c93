//! One line per acceptance criterion; exits nonzero unless all pass.

use std::process::ExitCode;

use fpforge_cli::verify::{run, Status, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let report = run(&VerifyOptions::default());
    let mut all = true;
    for (n, name) in CRITERIA {
        let status = report.criterion_status(n);
        let passed = status == Some(Status::Pass);
        all &= passed;
        let checks: Vec<&str> = report.checks.iter().filter(|c| c.criterion == n).map(|c| c.id.as_str()).collect();
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {n:>2} {name} ({} checks)", checks.len());
        for c in report.checks.iter().filter(|c| c.criterion == n && c.status != Status::Pass) {
            println!("     {:?} {} observed {} expected {}", c.status, c.id, c.observed, c.expected);
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
