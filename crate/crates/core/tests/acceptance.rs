//! One line per acceptance criterion. Runs without the test harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use teich_coords::coordinates::{PUNCTURE_GAP_EVEN, PUNCTURE_GAP_ODD};
use teich_coords::oracle::equidistant_limit_check;
use teich_coords::verify::{run_suite, Suite, SuiteKind, VerifyOptions, LIMIT_LENGTHS};

fn suite(kind: SuiteKind) -> Suite {
    run_suite(kind, VerifyOptions::default()).unwrap()
}

fn worst(s: &Suite) -> f64 {
    s.checks.iter().map(|c| c.max_error).fold(0.0, f64::max)
}

fn report(results: &mut Vec<(usize, bool)>, n: usize, title: &str, passed: bool, detail: String) {
    println!("criterion {n} {}: {title} ({detail})", if passed { "PASS" } else { "FAIL" });
    results.push((n, passed));
}

fn main() {
    let mut results = Vec::new();

    let s = suite(SuiteKind::ForwardOracle);
    let bundled_covered = s.checks.len() == 4;
    report(&mut results, 1, "forward map agrees with the hyperbolic oracle", s.passed() && bundled_covered, format!("max {:.2e}", worst(&s)));

    let s = suite(SuiteKind::Roundtrip);
    let fiber = s.checks.iter().filter(|c| c.name.contains("fiber")).all(|c| c.max_error <= 1e-12);
    report(&mut results, 2, "roundtrips on special triangulations and decoration fibers", s.passed() && fiber, format!("max {:.2e}", worst(&s)));

    let s = suite(SuiteKind::FiniteDifferences);
    report(&mut results, 3, "derivative identities by finite differences", s.passed(), format!("max {:.2e}", worst(&s)));

    let limit = equidistant_limit_check(1.0, &LIMIT_LENGTHS).unwrap();
    let last = limit.rows.last().unwrap();
    let s = suite(SuiteKind::Limit);
    report(
        &mut results,
        4,
        "equidistant curves converge to the horocycle",
        s.passed() && limit.monotone && LIMIT_LENGTHS == [1e-1, 1e-2, 1e-3] && last.deviation <= 2e-3,
        format!("deviation {:.2e} at l = {:e}", last.deviation, last.l),
    );

    let s = suite(SuiteKind::ClosedForms);
    let shears = s.checks.iter().filter(|c| c.name.ends_with("shears")).all(|c| c.max_error <= 1e-12);
    report(&mut results, 5, "closed-form inverses on the sphere and bigon", s.passed() && shears, format!("max {:.2e}", worst(&s)));

    let s = suite(SuiteKind::Compatibility);
    report(&mut results, 6, "lamination compatibility on bundled surfaces", s.passed() && s.checks.len() == 8, format!("max {:.2e}", worst(&s)));

    let s = suite(SuiteKind::Origin);
    report(&mut results, 7, "zero decoration passes the highest base point", s.passed(), format!("max {:.2e}", worst(&s)));

    let s = suite(SuiteKind::GapCoefficients);
    let chosen = (PUNCTURE_GAP_ODD, PUNCTURE_GAP_EVEN) == (2.0, 1.0);
    let monogon = s.checks.iter().find(|c| c.name.starts_with("monogon") && c.name.contains("close")).unwrap();
    report(
        &mut results,
        8,
        "puncture gap coefficients fixed by roundtrip closure",
        s.passed() && chosen && monogon.max_error <= 1e-10,
        format!("coefficients ({PUNCTURE_GAP_ODD}, {PUNCTURE_GAP_EVEN}), monogon {:.2e}", monogon.max_error),
    );

    let failed: Vec<usize> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
