mod common;

use common::{bisect, integrate_gl, rel_err, tanh_sinh_ends};
use projbound::jacobi::{
    gauss_jacobi, incomplete_weight_integral, jacobi_deriv, jacobi_eval, jacobi_eval_all,
    jacobi_norm_nu, largest_root, tau, value_at_one,
};
use projbound::{Field, JacobiParams};
use proptest::prelude::*;

fn field_params() -> Vec<(Field, usize, JacobiParams)> {
    Field::ALL
        .iter()
        .flat_map(|&f| (2..=6).map(move |m| (f, m, f.jacobi_params(m).unwrap())))
        .collect()
}

/// `int_{-1}^1 u(t) w(t) dt` through `t = cos(theta)`; for the field parameters the
/// transformed weight `sin^{2a+1} cos^{2b+1}` of the half angle is smooth.
fn weighted_integral<F: Fn(f64) -> f64>(params: JacobiParams, u: F) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let scale = 2f64.powf(a + b + 1.0);
    integrate_gl(
        |th| {
            let (s, c) = (0.5 * th).sin_cos();
            scale * s.powf(2.0 * a + 1.0) * c.powf(2.0 * b + 1.0) * u(th.cos())
        },
        160,
        0.0,
        std::f64::consts::PI,
    )
}

/// Explicit sum `sum_s C(k+a, k-s) C(k+b, s) ((t-1)/2)^s ((t+1)/2)^{k-s}`.
fn jacobi_explicit(a: f64, b: f64, k: usize, t: f64) -> f64 {
    let binom = |x: f64, j: usize| (0..j).fold(1.0, |acc, i| acc * (x - i as f64) / (i as f64 + 1.0));
    let kf = k as f64;
    (0..=k)
        .map(|s| {
            binom(kf + a, k - s)
                * binom(kf + b, s)
                * ((t - 1.0) / 2.0).powi(s as i32)
                * ((t + 1.0) / 2.0).powi((k - s) as i32)
        })
        .sum()
}

#[test]
fn orthogonality_for_field_parameters() {
    for (field, m, params) in field_params() {
        for k in 1..=20 {
            for j in 0..k {
                let v = weighted_integral(params, |t| {
                    jacobi_eval(params, j, t) * jacobi_eval(params, k, t)
                });
                assert!(v.abs() < 1e-11, "{field} m={m} <P_{j}, P_{k}> = {v:e}");
            }
        }
    }
}

#[test]
fn squared_norms_match_nu() {
    for (field, m, params) in field_params() {
        for k in 0..=20 {
            let v = weighted_integral(params, |t| jacobi_eval(params, k, t).powi(2));
            let expected = 1.0 / jacobi_norm_nu(params, k);
            assert!(rel_err(v, expected) < 1e-11, "{field} m={m} k={k}: {v} vs {expected}");
        }
        assert!(rel_err(weighted_integral(params, |_| 1.0), tau(params)) < 1e-13);
    }
}

#[test]
fn normalization_at_one() {
    for (_, _, params) in field_params() {
        let a = params.alpha();
        for k in 0..=30 {
            let binom = (1..=k).fold(1.0, |acc, i| acc * (a + i as f64) / i as f64);
            assert!(rel_err(jacobi_eval(params, k, 1.0), binom) < 1e-12);
            assert!(rel_err(value_at_one(params, k), binom) < 1e-12);
        }
    }
}

#[test]
fn sup_norm_is_attained_at_one() {
    let grid: Vec<f64> = (0..10_000).map(|i| -1.0 + 2.0 * i as f64 / 9_999.0).collect();
    for (field, m, params) in field_params() {
        for &t in &grid {
            let vals = jacobi_eval_all(params, 30, t);
            for (k, v) in vals.iter().enumerate() {
                let bound = value_at_one(params, k) * (1.0 + 1e-10);
                assert!(v.abs() <= bound, "{field} m={m} k={k} t={t}: {v}");
            }
        }
    }
}

#[test]
fn largest_roots_interlace() {
    for (field, m, params) in field_params() {
        for q in [params, params.shifted()] {
            let roots: Vec<f64> = (1..=31).map(|k| largest_root(q, k).unwrap()).collect();
            for (k, w) in roots.windows(2).enumerate() {
                assert!(w[0] < w[1], "{field} m={m} k={}: {} >= {}", k + 1, w[0], w[1]);
            }
        }
    }
}

#[test]
fn largest_root_of_derivative() {
    for (field, m, params) in field_params() {
        for l in 1..=20 {
            let xi = largest_root(params.shifted(), l).unwrap();
            // scan down from 1 for the last sign change of P'_{l+1}
            let d = |t: f64| jacobi_deriv(params, l + 1, t);
            let n = 4000;
            let mut hi = 1.0;
            let mut found = None;
            for i in 1..=n {
                let lo = 1.0 - 2.0 * i as f64 / n as f64;
                if d(lo).signum() != d(hi).signum() {
                    found = Some(bisect(d, lo, hi));
                    break;
                }
                hi = lo;
            }
            let oracle = found.expect("sign change");
            assert!((xi - oracle).abs() < 1e-12, "{field} m={m} l={l}: {xi} vs {oracle}");
        }
    }
}

#[test]
fn incomplete_integral_matches_double_exponential_rule() {
    for (field, m, params) in field_params() {
        for &xi in &[-0.9, -0.3, 0.0, 0.4, 0.85, 0.99] {
            let v = incomplete_weight_integral(params, xi).unwrap();
            let oracle = tanh_sinh_ends(
                |t, _, d1| d1.powf(params.alpha()) * (1.0 + t).powf(params.beta()),
                xi,
                1.0,
            );
            assert!(rel_err(v, oracle) < 1e-12, "{field} m={m} xi={xi}: {v} vs {oracle}");
        }
    }
}

#[test]
fn gauss_jacobi_rules_are_exact() {
    for (field, m, params) in field_params() {
        let rule = gauss_jacobi(params, 12).unwrap();
        for j in 0..=11 {
            for k in j..=(23 - j).min(23) {
                let q = rule.integrate(|t| jacobi_eval(params, j, t) * jacobi_eval(params, k, t));
                let expected = if j == k { 1.0 / jacobi_norm_nu(params, k) } else { 0.0 };
                let scale = (1.0 / jacobi_norm_nu(params, j) / jacobi_norm_nu(params, k)).sqrt();
                assert!((q - expected).abs() < 1e-12 * scale, "{field} m={m} j={j} k={k}");
            }
        }
    }
}

proptest! {
    #[test]
    fn recurrence_matches_explicit_sum(
        a in -0.95f64..6.0,
        b in -0.95f64..6.0,
        k in 0usize..12,
        t in -1.0f64..=1.0,
    ) {
        let params = JacobiParams::new(a, b).unwrap();
        let scale = jacobi_explicit(a, b, k, 1.0).abs().max(jacobi_explicit(b, a, k, 1.0).abs()).max(1.0);
        let diff = (jacobi_eval(params, k, t) - jacobi_explicit(a, b, k, t)).abs();
        prop_assert!(diff < 1e-11 * scale);
    }

    #[test]
    fn derivative_matches_finite_difference(
        a in -0.5f64..4.0,
        b in -0.5f64..4.0,
        k in 1usize..15,
        t in -0.95f64..0.95,
    ) {
        let params = JacobiParams::new(a, b).unwrap();
        let h = 1e-5;
        let fd = (jacobi_eval(params, k, t + h) - jacobi_eval(params, k, t - h)) / (2.0 * h);
        let scale = value_at_one(params, k).max(value_at_one(JacobiParams::new(b, a).unwrap(), k)) * (k * k) as f64;
        prop_assert!((jacobi_deriv(params, k, t) - fd).abs() < 1e-6 * scale);
    }

    #[test]
    fn largest_root_is_a_root(
        a in -0.9f64..8.0,
        b in -0.9f64..8.0,
        k in 1usize..40,
    ) {
        let params = JacobiParams::new(a, b).unwrap();
        let x = largest_root(params, k).unwrap();
        prop_assert!(x > -1.0 && x < 1.0);
        let slope = jacobi_deriv(params, k, x).abs();
        prop_assert!(jacobi_eval(params, k, x).abs() <= 1e-12 * slope.max(1.0));
        // no sign change to the right of the root
        let right = jacobi_eval(params, k, 0.5 * (x + 1.0));
        prop_assert!(right > 0.0);
    }
}
