use std::process::ExitCode;

use serre_core::verify::{run_criterion, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &opts);
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} - {} ({}; {} ms)", r.id, r.name, r.detail, r.elapsed_ms);
        failed += usize::from(!r.passed);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
