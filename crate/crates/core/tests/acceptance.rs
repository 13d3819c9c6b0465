//! Acceptance gate: one test per criterion, each printing its PASS/FAIL
//! line (run with `--nocapture` to see them on success).

use primelab_core::acceptance::{run_criterion, CriterionReport};

fn assert_criterion(id: u32) {
    let rep: CriterionReport = run_criterion(id, 0);
    println!("{rep}");
    assert!(rep.passed, "{rep}");
}

#[test]
fn criterion_01_renormalized_casimir_densities() {
    assert_criterion(1);
}

#[test]
fn criterion_02_damped_sum_closed_form_identity() {
    assert_criterion(2);
}

#[test]
fn criterion_03_mertens_constant_eight_digits() {
    assert_criterion(3);
}

#[test]
fn criterion_04_asymptotic_series_coefficients() {
    assert_criterion(4);
}

#[test]
fn criterion_05_leading_log_law() {
    assert_criterion(5);
}

#[test]
fn criterion_06_harmonic_residual_decay_exponent() {
    assert_criterion(6);
}

#[test]
fn criterion_07_linear_residual_decay_exponent() {
    assert_criterion(7);
}

#[test]
fn criterion_08_second_difference_reproduces_linear_sum() {
    assert_criterion(8);
}

#[test]
fn criterion_09_central_terms() {
    assert_criterion(9);
}

#[test]
fn criterion_10_two_point_function_samples() {
    assert_criterion(10);
}

#[test]
fn criterion_11_non_renormalizability_signature() {
    assert_criterion(11);
}

#[test]
fn criterion_12_prime_zeta_cross_method() {
    assert_criterion(12);
}
