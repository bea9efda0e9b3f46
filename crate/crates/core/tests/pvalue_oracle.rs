//! Validates the Student-t tail probabilities against direct numerical
//! integration of the t density.
//!
//! Substituting `x = sqrt(nu) tan(theta)` turns the tail integral of the
//! unnormalized density `(1 + x^2/nu)^-(nu+1)/2` into
//! `sqrt(nu) * integral of cos(theta)^(nu-1)` over a finite interval, so
//! the whole infinite tail is captured with no truncation. The two-sided
//! probability is the ratio of the tail integral to the half-line
//! integral; the normalizing constants cancel. This shares nothing with
//! the incomplete-beta route used by the implementation.

use residlm_core::p_value_two_sided;

/// Composite Simpson rule on [a, b] with `steps` subintervals (even).
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, steps: usize) -> f64 {
    assert!(steps % 2 == 0);
    let h = (b - a) / steps as f64;
    let mut sum = f(a) + f(b);
    for k in 1..steps {
        let factor = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += factor * f(a + k as f64 * h);
    }
    sum * h / 3.0
}

/// Two-sided tail probability by quadrature.
fn p_two_sided_by_quadrature(t: f64, dof: usize) -> f64 {
    let nu = dof as f64;
    let integrand = move |theta: f64| theta.cos().powf(nu - 1.0);
    let half = std::f64::consts::FRAC_PI_2;
    let theta_t = (t.abs() / nu.sqrt()).atan();
    let tail = simpson(&integrand, theta_t, half, 200_000);
    let total = simpson(&integrand, 0.0, half, 200_000);
    tail / total
}

#[test]
fn frozen_critical_value_at_dof_14() {
    // 2.145 is the two-sided 5% critical value with 14 degrees of freedom.
    let p = p_value_two_sided(2.145, 14);
    assert!((p - 0.0500).abs() < 0.0005, "p = {p}");
    // Tighter, against the quadrature oracle directly.
    let oracle = p_two_sided_by_quadrature(2.145, 14);
    assert!((p - oracle).abs() < 1e-9, "p = {p}, oracle = {oracle}");
}

#[test]
fn matches_quadrature_across_t_and_dof() {
    for &dof in &[1usize, 2, 5, 9, 14, 30, 120] {
        for &t in &[0.1, 0.5, 1.0, 1.7, 2.5, 4.0, 8.0] {
            let p = p_value_two_sided(t, dof);
            let oracle = p_two_sided_by_quadrature(t, dof);
            assert!(
                (p - oracle).abs() < 1e-9,
                "t = {t}, dof = {dof}: p = {p}, oracle = {oracle}"
            );
            // Symmetry.
            assert_eq!(p, p_value_two_sided(-t, dof));
        }
    }
}

#[test]
fn monotone_decreasing_in_absolute_t() {
    for &dof in &[1usize, 3, 10, 60] {
        let mut last = 1.0;
        for i in 1..200 {
            let t = i as f64 * 0.1;
            let p = p_value_two_sided(t, dof);
            assert!(p < last, "p not decreasing at t = {t}, dof = {dof}");
            assert!((0.0..=1.0).contains(&p));
            last = p;
        }
    }
}
