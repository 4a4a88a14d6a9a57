use std::io::Write;

use logdr::verify::{run_criterion, CRITERIA};

const SEED: u64 = 20241;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for &(id, _, _) in CRITERIA.iter() {
        let r = run_criterion(id, SEED);
        let status = if r.passed() { "PASS" } else { "FAIL" };
        // written to stderr directly so the lines survive output capture
        let mut err = std::io::stderr().lock();
        writeln!(
            err,
            "{status} criterion {:>2} {:<55} cases={:<6} {:>8.3}s (limit {}s)",
            r.id,
            r.name,
            r.cases,
            r.elapsed.as_secs_f64(),
            r.limit.as_secs()
        )
        .unwrap();
        for f in &r.failures {
            writeln!(err, "    {f}").unwrap();
        }
        if !r.passed() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
