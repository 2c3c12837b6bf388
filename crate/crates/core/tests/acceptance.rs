//! One line per acceptance criterion. Runs without the test harness so
//! the lines always reach the output.

use rigidkit::suite::{run_criterion, CRITERIA};

/// The one known failing claim: at q = 2 the symplectic form is symmetric
/// and the affine cocycle is exactly the coboundary of (a, A) -> a_1 a_2.
const KNOWN_FAILURE: &str = "affine.cocycle.q2";

fn main() {
    let mut unexpected = Vec::new();
    for &(k, _, _) in CRITERIA.iter() {
        let r = run_criterion(k).expect("criterion");
        let status = if r.pass && r.within_limit() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {} ({:.2}s, limit {}s)",
            r.number,
            r.title,
            r.elapsed.as_secs_f64(),
            r.limit_seconds
        );
        for c in r.failing() {
            println!("    claim {} expected {} observed {}", c.id, c.expected, c.observed);
            if c.id != KNOWN_FAILURE {
                unexpected.push(c.id.clone());
            }
        }
        if !r.within_limit() {
            unexpected.push(format!("criterion {k} time limit"));
        }
        if k == 8 {
            let q2 = r.claims.iter().find(|c| c.id == KNOWN_FAILURE).expect("q = 2 claim present");
            assert_eq!(q2.observed, serde_json::json!([true, true]), "q = 2 cocycle should be a verified coboundary");
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
