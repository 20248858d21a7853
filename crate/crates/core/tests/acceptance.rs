//! End-to-end acceptance checks over the shipped corpus, one test per criterion.
//! Each test prints a single `criterion N: PASS|FAIL ...` line before asserting.

use std::path::Path;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use linbase::catalog::{load_corpus, run_suite, LoadedEntry, Status, Suite, VerificationReport};
use linbase::construct::{d, LOG_TOLERANCE};

/// Tolerance on natural-log margins for the order bound.
const ORDER_LOG_TOLERANCE: f64 = 1e-9;
/// `d` truncated to three decimals, times 1000.
const D_TRUNCATED: f64 = 3243.0;
const STRONG_BOUND_BUDGET: Duration = Duration::from_secs(300);
const ORACLE_BUDGET: Duration = Duration::from_secs(120);
const MIN_NAIVE_GROUPS: usize = 10;

fn corpus() -> &'static [LoadedEntry] {
    static CORPUS: OnceLock<Vec<LoadedEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
        load_corpus(&dir, 0).expect("shipped corpus loads and its claims hold")
    })
}

fn timed(suite: Suite) -> (VerificationReport, Duration) {
    let start = Instant::now();
    let report = run_suite(suite, corpus(), 0);
    (report, start.elapsed())
}

fn summary(r: &VerificationReport) -> String {
    format!(
        "{} pass, {} fail, {} red-flag, {} skip, {} cap-exceeded",
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::RedFlag),
        r.count(Status::Skip),
        r.count(Status::CapExceeded)
    )
}

fn verdict(criterion: u32, ok: bool, what: &str) {
    println!("criterion {criterion}: {} {what}", if ok { "PASS" } else { "FAIL" });
}

fn failures(r: &VerificationReport) -> String {
    r.rows
        .iter()
        .filter(|row| !matches!(row.status, Status::Pass | Status::Skip))
        .map(|row| format!("{} {}: {}", row.group, row.status.label(), row.detail))
        .collect::<Vec<_>>()
        .join("\n")
}

/// A clean suite run with at least `min_pass` passing rows.
fn suite_criterion(criterion: u32, suite: Suite, min_pass: usize) {
    let (r, took) = timed(suite);
    let ok = r.passed() && r.count(Status::CapExceeded) == 0 && r.count(Status::Pass) >= min_pass;
    verdict(criterion, ok, &format!("{} ({}) in {:.2?}", suite.cli_name(), summary(&r), took));
    assert!(ok, "{}", failures(&r));
}

#[test]
fn criterion_01_strong_base_bound() {
    let (r, took) = timed(Suite::StrongBound);
    let ok = r.passed() && r.count(Status::CapExceeded) == 0 && r.count(Status::Pass) > 0 && took <= STRONG_BOUND_BUDGET;
    verdict(1, ok, &format!("thm1 ({}) in {took:.2?}, budget {STRONG_BOUND_BUDGET:?}", summary(&r)));
    assert!(ok, "{}", failures(&r));
}

#[test]
fn criterion_02_order_bound() {
    assert_eq!(LOG_TOLERANCE, ORDER_LOG_TOLERANCE);
    let (r, took) = timed(Suite::OrderBound);
    let d_ok = (d() * 1000.0).trunc() == D_TRUNCATED;
    let ok = d_ok && r.passed() && r.count(Status::CapExceeded) == 0 && r.count(Status::Pass) > 0;
    verdict(2, ok, &format!("pw ({}) in {took:.2?}, d = {:.6}, tolerance {ORDER_LOG_TOLERANCE:e}", summary(&r), d()));
    assert!(d_ok, "d = {}", d());
    assert!(ok, "{}", failures(&r));
}

#[test]
fn criterion_03_order_exceeds_square_over_gf3() {
    let witnesses: Vec<(&str, u64, u64)> = corpus()
        .iter()
        .filter(|e| e.group().field().q() == 3)
        .map(|e| (e.name(), e.group().order().unwrap(), e.group().space().size() as u64))
        .filter(|&(_, order, v)| u128::from(order) > u128::from(v) * u128::from(v))
        .collect();
    let (r, _) = timed(Suite::Sharpness);
    let ok = !witnesses.is_empty() && r.passed();
    let shown: Vec<String> = witnesses.iter().map(|(n, o, v)| format!("{n}: {o} > {v}^2")).collect();
    verdict(3, ok, &format!("sharpness, {}", if shown.is_empty() { "no witness".into() } else { shown.join(", ") }));
    assert!(ok, "{}", failures(&r));
}

#[test]
fn criterion_04_strong_base_from_special_base() {
    suite_criterion(4, Suite::StrongFromSpecial, 1);
}

#[test]
fn criterion_05_semilinear_bases() {
    suite_criterion(5, Suite::Semilinear, 1);
}

#[test]
fn criterion_06_constructions() {
    suite_criterion(6, Suite::Constructions, 1);
}

#[test]
fn criterion_07_regular_orbit() {
    suite_criterion(7, Suite::RegularOrbit, 1);
}

#[test]
fn criterion_08_brute_force_oracle() {
    let (r, took) = timed(Suite::Oracle);
    let compared = r.rows.iter().filter(|row| row.status == Status::Pass && row.b.is_some()).count();
    let ok = r.passed() && r.count(Status::CapExceeded) == 0 && compared >= MIN_NAIVE_GROUPS && took <= ORACLE_BUDGET;
    verdict(
        8,
        ok,
        &format!("oracle ({}), {compared} groups compared with naive search (need {MIN_NAIVE_GROUPS}) in {took:.2?}", summary(&r)),
    );
    assert!(ok, "{}", failures(&r));
}

#[test]
fn criterion_09_structural_invariants() {
    suite_criterion(9, Suite::Structure, corpus().len());
}

#[test]
fn criterion_10_p_solvability() {
    suite_criterion(10, Suite::PSolvability, 1);
}
