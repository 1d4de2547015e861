mod common;

use std::f64::consts::PI;

use common::{coefficient_oracle, convolve, tanh_sinh};
use projbound::jacobi::{jacobi_eval, jacobi_norm_nu, tau, value_at_one};
use projbound::testfn::{build_test_function, DEFAULT_K_MAX};
use projbound::Field;
use proptest::prelude::*;

fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
}

#[test]
fn coefficients_match_quadrature_oracle() {
    for field in Field::ALL {
        for m in [2, 3, 4] {
            for l in [1, 4, 9, 12] {
                let tf = build_test_function(field, m, l, DEFAULT_K_MAX).unwrap();
                let (ch, cg) = coefficient_oracle(tf.params, tf.xi, tf.r, tf.k_max);
                let sh = ch.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                let sg = cg.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                let tau = tau(tf.params);
                for k in 0..=tf.k_max {
                    assert!((tf.coeff_h[k] - ch[k]).abs() <= 1e-10 * sh, "{field} m={m} l={l} c_{k}[h]");
                    assert!((tf.coeff_g[k] - cg[k]).abs() <= 1e-10 * sg, "{field} m={m} l={l} c_{k}[g]");
                    // the product formula for c_k[f] from independently integrated factors
                    let cf = cg[k] * ch[k] / (tau * value_at_one(tf.params, k));
                    assert!((tf.coeff_f[k] - cf).abs() <= 1e-10 * tf.max_abs_coeff_f(), "{field} m={m} l={l} c_{k}[f]");
                }
            }
        }
    }
}

#[test]
fn convolution_of_jacobi_polynomials_is_diagonal() {
    for field in Field::ALL {
        for m in [2, 3, 4] {
            let params = field.jacobi_params(m).unwrap();
            let tau = tau(params);
            for j in 0..=6 {
                for k in 0..=6 {
                    for &t in &[-0.8, -0.25, 0.1, 0.55, 0.9] {
                        let v = convolve(field, m, |x| jacobi_eval(params, j, x), |x| jacobi_eval(params, k, x), t, 40);
                        let b = tau * jacobi_norm_nu(params, k) * value_at_one(params, k);
                        let expected = if j == k { jacobi_eval(params, k, t) / b } else { 0.0 };
                        let scale = value_at_one(params, j.max(k));
                        assert!(
                            (v - expected).abs() < 1e-11 * scale,
                            "{field} m={m} P_{j} * P_{k} at {t}: {v} vs {expected}"
                        );
                    }
                }
            }
            let b0 = tau * jacobi_norm_nu(params, 0) * value_at_one(params, 0);
            assert!((b0 - 1.0).abs() < 1e-14);
        }
    }
}

/// `f_l(t)` for real `m = 3` from the geometry of the 2-sphere: `z_1` is uniform on
/// `[-1, 1]` and, given `z_1`, `z_2 = sqrt(1 - z_1^2) cos(phi)` with `phi` uniform.
fn real_m3_oracle(l: usize, t: f64) -> f64 {
    let params = Field::R.jacobi_params(3).unwrap();
    let tf = build_test_function(Field::R, 3, l, l + 2).unwrap();
    let (xi, r) = (tf.xi, tf.r);
    let pr_xi = jacobi_eval(params, r, xi);
    let eta = ((1.0 + xi) / 2.0).sqrt();
    let c = ((1.0 + t) / 2.0).sqrt();
    let s = ((1.0 - t) / 2.0).max(0.0).sqrt();
    let acos = |x: f64| x.clamp(-1.0, 1.0).acos();
    let prob = |z1: f64| {
        let sr = s * (1.0 - z1 * z1).max(0.0).sqrt();
        if sr == 0.0 {
            return if (c * z1).abs() >= eta { 1.0 } else { 0.0 };
        }
        acos((eta - c * z1) / sr) / PI + 1.0 - acos((-eta - c * z1) / sr) / PI
    };
    let g = |z1: f64| jacobi_eval(params, r, 2.0 * z1 * z1 - 1.0) - pr_xi;
    let mut cuts = vec![eta, 1.0];
    for root in [
        eta * c + s * (1.0 - eta * eta).sqrt(),
        eta * c - s * (1.0 - eta * eta).sqrt(),
        -eta * c + s * (1.0 - eta * eta).sqrt(),
    ] {
        if root > eta && root < 1.0 {
            cuts.push(root);
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2).map(|w| tanh_sinh(|z| g(z) * prob(z), w[0], w[1])).sum()
}

#[test]
fn real_m3_series_matches_geometric_convolution() {
    for l in [2, 5, 8] {
        let tf = build_test_function(Field::R, 3, l, 3000).unwrap();
        let f1 = tf.value_at_one();
        for &t in &[-0.9, -0.3, 0.2, 0.5, 0.7, 0.85, 0.95, 1.0] {
            let series = tf.eval(t).value;
            let oracle = real_m3_oracle(l, t);
            assert!((series - oracle).abs() < 1e-8 * f1, "l={l} t={t}: {series} vs {oracle}");
        }
        assert!((real_m3_oracle(l, 1.0) - f1).abs() < 1e-12 * f1);
    }
}

#[test]
fn series_obeys_schwartz_bound() {
    for field in Field::ALL {
        for m in [2, 3, 4] {
            for l in [1, 3, 7, 12] {
                let tf = build_test_function(field, m, l, DEFAULT_K_MAX).unwrap();
                let bound = tf.sup_bound() * (1.0 + 1e-8);
                let mut buf = Vec::new();
                for t in grid(2000) {
                    let v = tf.eval_with_buffer(t, &mut buf).value;
                    assert!(v.abs() <= bound, "{field} m={m} l={l} t={t}: {v} > {bound}");
                }
            }
        }
    }
}

#[test]
fn value_at_one_is_the_mean_of_g() {
    // f(1) = E[g] and sum_k nu_k c_k[f] P_k(1) converges to it
    for field in Field::ALL {
        let tf = build_test_function(field, 3, 4, 2000).unwrap();
        let series = tf.eval(1.0).value;
        assert!((series / tf.value_at_one() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn bound_equals_the_weight_ratio() {
    for field in Field::ALL {
        for m in 2..=5 {
            for l in 1..=10 {
                let tf = build_test_function(field, m, l, l + 2).unwrap();
                let r = projbound::yudin_bound(field, m, 2 * l).unwrap();
                assert!((tf.bound() / r.yudin_raw - 1.0).abs() < 1e-10, "{field} m={m} l={l}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn coefficients_beyond_r_are_nonpositive(
        f in 0usize..3,
        m in 2usize..7,
        l in 1usize..16,
    ) {
        let field = Field::ALL[f];
        let tf = build_test_function(field, m, l, 120).unwrap();
        let scale = tf.max_abs_coeff_f();
        for k in (l + 1)..=120 {
            prop_assert!(tf.coeff_f[k] <= 1e-12 * scale);
        }
        prop_assert!(tf.coeff_f[0] > 0.0);
    }
}
