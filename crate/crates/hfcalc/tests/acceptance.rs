use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=hfcalc::acceptance::CRITERIA.len() {
        let start = Instant::now();
        let r = hfcalc::acceptance::run(id);
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {}: {} ({:.1}s)", r.id, r.name, r.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!r.passed);
    }
    println!("{} of {} criteria passed", hfcalc::acceptance::CRITERIA.len() - failed, hfcalc::acceptance::CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
