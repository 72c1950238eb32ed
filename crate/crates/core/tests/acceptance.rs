//! Acceptance gate: one line per claim, with the pinned tolerances and
//! time budgets of the verification suite.

use rtt_verify::suite::{find_check, run_check, CheckResult, Status, SuiteConfig};

fn gate(name: &str) -> CheckResult {
    let check = find_check(name).expect("known check");
    let r = run_check(check, &SuiteConfig::default());
    let tag = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Error => "ERROR",
    };
    println!("{tag} {} [{} ms]", r.name, r.elapsed_ms);
    for line in r.detail.split(" | ") {
        println!("    {line}");
    }
    r
}

fn assert_pass(name: &str) {
    let r = gate(name);
    assert_eq!(r.status, Status::Pass, "{}: {}", r.name, r.detail);
}

#[test]
fn c01_kappa_constraint() {
    assert_pass("c01_kappa_constraint");
}

#[test]
fn c02_g_conjugation() {
    assert_pass("c02_g_conjugation");
}

#[test]
fn c03_rtt_spans() {
    assert_pass("c03_rtt_spans");
}

#[test]
fn c04_q_prime() {
    assert_pass("c04_q_prime");
}

#[test]
fn c05_bhp_triviality() {
    assert_pass("c05_bhp_triviality");
}

#[test]
fn c06_bhp_map() {
    assert_pass("c06_bhp_map");
}

#[test]
fn c07_singular_limit() {
    assert_pass("c07_singular_limit");
}

#[test]
fn c08_hietarinta() {
    assert_pass("c08_hietarinta");
}

#[test]
fn c09_gl11() {
    assert_pass("c09_gl11");
}

#[test]
fn c10_non_removability() {
    assert_pass("c10_non_removability");
}
