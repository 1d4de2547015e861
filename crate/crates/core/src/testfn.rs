//! The test function `f_l = g * h` built from the indicator `h = 1[t >= xi]`
//! and the truncated polynomial `g = (P_r - P_r(xi)) 1[t >= xi]`, `r = l + 1`,
//! with `xi` the largest root of `P_r'`.
//!
//! Its Jacobi–Fourier coefficients are known in closed form for `k >= 1`:
//!
//! ```text
//! c_k[h] = (w_{a+1,b+1} P_k')(xi) / (k (k + lambda))
//! c_k[g] = r (r + lambda) P_r(xi) / ((k - r)(k + r + lambda)) * c_k[h]      (k != r)
//! c_k[f] = c_k[g] c_k[h] / (tau P_k(1))
//! ```
//!
//! `c_0[h]`, `c_0[g]` and `c_r[g]` come from quadrature on `[xi, 1]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::jacobi::{
    incomplete_weight_integral, jacobi_eval, jacobi_eval_all, jacobi_eval_all_into,
    jacobi_norms, largest_root, tau, upper_tail_integral, JacobiParams,
};
use crate::sum::CompensatedSum;

pub const DEFAULT_K_MAX: usize = 200;

/// Relative size of the last retained term above which construction warns.
pub const TAIL_WARN_THRESHOLD: f64 = 1e-12;

const COEFF_QUADRATURE_ORDER: usize = 96;

#[derive(Debug, Clone, Serialize)]
pub struct YudinTestFunction {
    pub field: Field,
    pub m: usize,
    pub l: usize,
    /// `l + 1`
    pub r: usize,
    pub params: JacobiParams,
    /// Largest root of `P_r'`, equivalently of `P_l^{(alpha+1, beta+1)}`.
    pub xi: f64,
    /// `alpha + beta + 1`
    pub lambda: f64,
    pub tau: f64,
    pub k_max: usize,
    pub coeff_h: Vec<f64>,
    pub coeff_g: Vec<f64>,
    pub coeff_f: Vec<f64>,
    /// `nu_k = 1/||P_k||^2` for `k = 0..=k_max`.
    pub nu: Vec<f64>,
    /// `P_k(1)` for `k = 0..=k_max`.
    pub value_at_one: Vec<f64>,
    /// `||g||^2 = int_xi^1 (P_r - P_r(xi))^2 w dt`
    pub g_norm_sq: f64,
    /// Envelope `|nu_K c_K[f]| P_K(1)` of the last retained term.
    pub tail_term: f64,
    pub truncation_warning: bool,
}

/// Value of the truncated series together with the envelope of its last term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_estimate: f64,
}

/// One row of the coefficient dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub k: usize,
    pub c_h: f64,
    pub c_g: f64,
    pub c_f: f64,
}

/// Build `f_l` for the projective space of dimension `m - 1` over `field`,
/// keeping Jacobi–Fourier coefficients up to degree `k_max >= l + 2`.
pub fn build_test_function(
    field: Field,
    m: usize,
    l: usize,
    k_max: usize,
) -> Result<YudinTestFunction> {
    if l == 0 {
        return Err(Error::Parameter("l must be positive".into()));
    }
    if k_max < l + 2 {
        return Err(Error::Parameter(format!(
            "k_max must be at least l + 2 = {}, got {k_max}",
            l + 2
        )));
    }
    let params = field.jacobi_params(m)?;
    let r = l + 1;
    let lambda = params.lambda();
    let xi = largest_root(params.shifted(), l)?;
    let tau = tau(params);

    let p_r_xi = jacobi_eval(params, r, xi);
    let w1 = (1.0 - xi).powf(params.alpha() + 1.0) * (1.0 + xi).powf(params.beta() + 1.0);
    // P_k'(xi) = (k + lambda)/2 P_{k-1}^{(a+1, b+1)}(xi)
    let shifted = jacobi_eval_all(params.shifted(), k_max - 1, xi);

    let mut coeff_h = vec![0.0; k_max + 1];
    let mut coeff_g = vec![0.0; k_max + 1];
    coeff_h[0] = incomplete_weight_integral(params, xi)?;
    coeff_g[0] = upper_tail_integral(params, xi, COEFF_QUADRATURE_ORDER, |t| {
        jacobi_eval(params, r, t) - p_r_xi
    })?;
    let rr = r as f64 * (r as f64 + lambda) * p_r_xi;
    for k in 1..=k_max {
        let kf = k as f64;
        let dp = 0.5 * (kf + lambda) * shifted[k - 1];
        coeff_h[k] = w1 * dp / (kf * (kf + lambda));
        if k != r {
            coeff_g[k] = rr / ((kf - r as f64) * (kf + r as f64 + lambda)) * coeff_h[k];
        }
    }
    coeff_g[r] = upper_tail_integral(params, xi, COEFF_QUADRATURE_ORDER, |t| {
        let pr = jacobi_eval(params, r, t);
        (pr - p_r_xi) * pr
    })?;
    let g_norm_sq = upper_tail_integral(params, xi, COEFF_QUADRATURE_ORDER, |t| {
        (jacobi_eval(params, r, t) - p_r_xi).powi(2)
    })?;

    let mut value_at_one = Vec::with_capacity(k_max + 1);
    let mut v = 1.0;
    value_at_one.push(v);
    for i in 1..=k_max {
        v *= (params.alpha() + i as f64) / i as f64;
        value_at_one.push(v);
    }
    let coeff_f: Vec<f64> = (0..=k_max)
        .map(|k| coeff_g[k] * coeff_h[k] / (tau * value_at_one[k]))
        .collect();
    let nu = jacobi_norms(params, k_max);

    let f_one = coeff_g[0] / tau;
    let tail_term = (nu[k_max] * coeff_f[k_max]).abs() * value_at_one[k_max];
    let truncation_warning = tail_term > TAIL_WARN_THRESHOLD * f_one;
    if truncation_warning {
        log::warn!(
            "test function ({field}, m={m}, l={l}): last retained term {tail_term:.3e} \
             exceeds {TAIL_WARN_THRESHOLD:e} * f(1) at k_max = {k_max}"
        );
    }

    Ok(YudinTestFunction {
        field,
        m,
        l,
        r,
        params,
        xi,
        lambda,
        tau,
        k_max,
        coeff_h,
        coeff_g,
        coeff_f,
        nu,
        value_at_one,
        g_norm_sq,
        tail_term,
        truncation_warning,
    })
}

impl YudinTestFunction {
    /// Truncated Jacobi–Fourier series `sum_{k <= k_max} nu_k c_k[f] P_k(t)`.
    pub fn eval(&self, t: f64) -> SeriesValue {
        let mut p = Vec::with_capacity(self.k_max + 1);
        self.eval_with_buffer(t, &mut p)
    }

    /// As [`eval`](Self::eval) with a caller-provided scratch buffer.
    pub fn eval_with_buffer(&self, t: f64, scratch: &mut Vec<f64>) -> SeriesValue {
        jacobi_eval_all_into(self.params, self.k_max, t, scratch);
        let value = scratch
            .iter()
            .enumerate()
            .map(|(k, pk)| self.nu[k] * self.coeff_f[k] * pk)
            .collect::<CompensatedSum>()
            .value();
        SeriesValue { value, tail_estimate: self.tail_term }
    }

    /// `f_l(1) = c_0[g] / tau`.
    pub fn value_at_one(&self) -> f64 {
        self.coeff_g[0] / self.tau
    }

    /// `tau / c_0[h]`, the lower bound on the number of nodes.
    pub fn bound(&self) -> f64 {
        self.tau / self.coeff_h[0]
    }

    /// Upper bound `||g|| ||h|| / tau` for `sup |f_l|`.
    pub fn sup_bound(&self) -> f64 {
        (self.g_norm_sq * self.coeff_h[0]).sqrt() / self.tau
    }

    pub fn coefficient_rows(&self) -> Vec<CoefficientRow> {
        (0..=self.k_max)
            .map(|k| CoefficientRow {
                k,
                c_h: self.coeff_h[k],
                c_g: self.coeff_g[k],
                c_f: self.coeff_f[k],
            })
            .collect()
    }

    /// Largest coefficient magnitude `max_k |c_k[f]|`.
    pub fn max_abs_coeff_f(&self) -> f64 {
        self.coeff_f.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()))
    }
}

/// Free-function form of [`YudinTestFunction::eval`].
pub fn eval_f(tf: &YudinTestFunction, t: f64) -> SeriesValue {
    tf.eval(t)
}

/// Free-function form of [`YudinTestFunction::bound`].
pub fn bound_from_test_function(tf: &YudinTestFunction) -> f64 {
    tf.bound()
}
