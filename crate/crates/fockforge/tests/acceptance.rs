//! Acceptance suite: one test per numbered criterion, each printing its
//! pass/fail line. `fockforge verify` runs the same checks from the CLI.

use fockforge::verify;

fn check(report: verify::CriterionReport) {
    println!("{}", report.render());
    assert!(report.pass, "{}", report.render());
}

#[test]
fn criterion_01_gaussian_norm() {
    check(verify::criterion_01());
}

#[test]
fn criterion_02_gaussian_pairing() {
    check(verify::criterion_02());
}

#[test]
fn criterion_03_ccr_heisenberg() {
    check(verify::criterion_03());
}

#[test]
fn criterion_04_adjointness() {
    check(verify::criterion_04());
}

#[test]
fn criterion_05_pythagorean() {
    check(verify::criterion_05());
}

#[test]
fn criterion_06_shale_operator() {
    check(verify::criterion_06());
}

#[test]
fn criterion_07_intertwining() {
    check(verify::criterion_07());
}

#[test]
fn criterion_08_unitarity() {
    check(verify::criterion_08());
}

#[test]
fn criterion_09_cocycle() {
    check(verify::criterion_09());
}

#[test]
fn criterion_10_weyl_regularity() {
    check(verify::criterion_10());
}

#[test]
fn criterion_11_implementer_kernel() {
    check(verify::criterion_11());
}

#[test]
fn criterion_12_divergence_certificates() {
    check(verify::criterion_12());
}

#[test]
fn criterion_13_oracle_equivalence() {
    check(verify::criterion_13());
}
