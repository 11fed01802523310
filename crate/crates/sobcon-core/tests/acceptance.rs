//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance and range is pinned here; the checks themselves live in
//! `sobcon_core::verify` so the CLI `verify` command exercises the same code.

use sobcon_core::verify::*;
use std::time::{Duration, Instant};

fn gate(criterion: &str, result: CheckResult, budget: Option<Duration>, started: Instant) {
    let elapsed = started.elapsed();
    let status = if result.passed { "PASS" } else { "FAIL" };
    println!(
        "{criterion}: {status} [{:.2?}] :: {}",
        elapsed, result.details
    );
    assert!(result.passed, "{criterion} failed: {}", result.details);
    if let Some(limit) = budget {
        assert!(
            elapsed < limit,
            "{criterion} exceeded its runtime budget: {elapsed:.2?} >= {limit:?}"
        );
    }
}

#[test]
fn criterion_1_legendre_normalization() {
    let t = Instant::now();
    let r = check_legendre(20);
    gate(
        "criterion 1 (Legendre normalization, m = 0..20)",
        r,
        Some(Duration::from_secs(1)),
        t,
    );
}

#[test]
fn criterion_2_spline_theorem_suite() {
    let t = Instant::now();
    let conditions = check_spline_suite(8);
    let identity = check_piece_identity(8);
    let merged = CheckResult {
        name: "spline-suite".into(),
        passed: conditions.passed && identity.passed,
        details: format!("{}; {}", conditions.details, identity.details),
    };
    gate(
        "criterion 2 (spline conditions + piece identity, n <= 8)",
        merged,
        Some(Duration::from_secs(30)),
        t,
    );
}

#[test]
fn criterion_3_triple_equality() {
    let t = Instant::now();
    let r = check_triple_equality(8);
    gate(
        "criterion 3 (spline = recurrence = oracle, exact)",
        r,
        Some(Duration::from_secs(120)),
        t,
    );
}

#[test]
fn criterion_4_structure_theorem() {
    let t = Instant::now();
    let r = check_structure_theorem(12, 6);
    gate(
        "criterion 4 (deg B = k, B(0) = (n-k)^2, n <= 12, k <= 6)",
        r,
        None,
        t,
    );
}

#[test]
fn criterion_5_k3_reproduction() {
    let t = Instant::now();
    let explicit = check_k3_explicit(12);
    let ordering = check_k3_ordering(40);
    let anchors = check_k3_anchors(40);
    let lambda = check_k3_lambda(12);
    let passed = explicit.passed && ordering.passed && anchors.passed && lambda.passed;
    let merged = CheckResult {
        name: "k3".into(),
        passed,
        details: format!(
            "{}; {}; {}; {}",
            explicit.details, ordering.details, anchors.details, lambda.details
        ),
    };
    gate("criterion 5 (k = 3 reproduction)", merged, None, t);
}

#[test]
fn criterion_6_k5_reproduction() {
    let t = Instant::now();
    let explicit = check_k5_explicit(12);
    let interlacing = check_k5_interlacing(40);
    let ratios = check_k5_ratios(40);
    let trig = check_k5_trig(12);
    let lambda = check_k5_lambda(12);
    let passed =
        explicit.passed && interlacing.passed && ratios.passed && trig.passed && lambda.passed;
    let merged = CheckResult {
        name: "k5".into(),
        passed,
        details: format!(
            "{}; {}; {}; {}; {}",
            explicit.details, interlacing.details, ratios.details, trig.details, lambda.details
        ),
    };
    gate(
        "criterion 6 (k = 5 reproduction)",
        merged,
        Some(Duration::from_secs(300)),
        t,
    );
}

#[test]
fn criterion_7_interval_scaling() {
    let t = Instant::now();
    let r = check_scaling(5);
    gate(
        "criterion 7 (symmetric-interval scaling, exact)",
        r,
        None,
        t,
    );
}

#[test]
fn criterion_8_hypothesis_scan() {
    let t = Instant::now();
    let r = check_hypothesis_scan(20, 5);
    gate(
        "criterion 8 (maxima count and global-max location, k <= 5, n <= 20)",
        r,
        None,
        t,
    );
}
