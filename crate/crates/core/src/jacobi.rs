//! Jacobi polynomials `P_k^{(alpha, beta)}` in the standardization
//! `P_k(1) = binom(alpha + k, k)`, orthogonal for the weight
//! `(1 - t)^alpha (1 + t)^beta` on `(-1, 1)`.
//!
//! Besides evaluation this module provides the norms `nu_k = 1 / ||P_k||^2`,
//! largest roots, and Gauss–Jacobi rules built from the symmetric tridiagonal
//! Jacobi matrix. The rules serve as the integration oracle everywhere else in
//! the crate.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::log_gamma_positive;
use crate::sum::CompensatedSum;

/// Parameters `(alpha, beta)` of the Jacobi weight, both strictly greater than -1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Parameter(format!(
                "Jacobi parameters must exceed -1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `alpha + beta + 1`
    pub fn lambda(&self) -> f64 {
        self.alpha + self.beta + 1.0
    }

    /// The family `(alpha + 1, beta + 1)` of the derivatives.
    pub fn shifted(&self) -> Self {
        Self { alpha: self.alpha + 1.0, beta: self.beta + 1.0 }
    }

    /// `(1 - t)^alpha (1 + t)^beta`
    pub fn weight(&self, t: f64) -> f64 {
        (1.0 - t).powf(self.alpha) * (1.0 + t).powf(self.beta)
    }
}

#[inline]
fn first_degree(a: f64, b: f64, t: f64) -> f64 {
    0.5 * ((a + b + 2.0) * t + (a - b))
}

/// Coefficients of `P_k = (A t + B) P_{k-1} - C P_{k-2}` for `k >= 2`.
#[inline]
fn recurrence(a: f64, b: f64, k: usize) -> (f64, f64, f64) {
    let k = k as f64;
    let c = 2.0 * k + a + b;
    let denom = 2.0 * k * (k + a + b) * (c - 2.0);
    (
        (c - 1.0) * c * (c - 2.0) / denom,
        (c - 1.0) * (a * a - b * b) / denom,
        2.0 * (k + a - 1.0) * (k + b - 1.0) * c / denom,
    )
}

/// `P_k^{(alpha, beta)}(t)` by the forward three-term recurrence.
pub fn jacobi_eval(params: JacobiParams, k: usize, t: f64) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = first_degree(a, b, t);
    for j in 2..=k {
        let (ca, cb, cc) = recurrence(a, b, j);
        let next = (ca * t + cb) * cur - cc * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_0(t), ..., P_{k_max}(t)` written into `out` (resized to `k_max + 1`).
pub fn jacobi_eval_all_into(params: JacobiParams, k_max: usize, t: f64, out: &mut Vec<f64>) {
    let (a, b) = (params.alpha, params.beta);
    out.clear();
    out.push(1.0);
    if k_max == 0 {
        return;
    }
    out.push(first_degree(a, b, t));
    for j in 2..=k_max {
        let (ca, cb, cc) = recurrence(a, b, j);
        let next = (ca * t + cb) * out[j - 1] - cc * out[j - 2];
        out.push(next);
    }
}

pub fn jacobi_eval_all(params: JacobiParams, k_max: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    jacobi_eval_all_into(params, k_max, t, &mut out);
    out
}

/// `d/dt P_k^{(alpha, beta)}(t) = (k + alpha + beta + 1)/2 * P_{k-1}^{(alpha+1, beta+1)}(t)`.
pub fn jacobi_deriv(params: JacobiParams, k: usize, t: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    0.5 * (k as f64 + params.lambda()) * jacobi_eval(params.shifted(), k - 1, t)
}

/// `P_k(1) = binom(alpha + k, k)`.
pub fn value_at_one(params: JacobiParams, k: usize) -> f64 {
    let mut v = 1.0;
    for i in 1..=k {
        v *= (params.alpha + i as f64) / i as f64;
    }
    v
}

fn ln_tau(params: JacobiParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    (a + b + 1.0) * LN_2 + log_gamma_positive(a + 1.0) + log_gamma_positive(b + 1.0)
        - log_gamma_positive(a + b + 2.0)
}

/// `tau = int_{-1}^1 (1-t)^alpha (1+t)^beta dt = 2^{alpha+beta+1} B(alpha+1, beta+1)`.
pub fn tau(params: JacobiParams) -> f64 {
    ln_tau(params).exp()
}

/// `nu_k = 1 / ||P_k||^2`.
pub fn jacobi_norm_nu(params: JacobiParams, k: usize) -> f64 {
    if k == 0 {
        return 1.0 / tau(params);
    }
    let (a, b) = (params.alpha, params.beta);
    let kf = k as f64;
    let lam = a + b + 1.0;
    let ln_norm = lam * LN_2 - (2.0 * kf + lam).ln() + log_gamma_positive(kf + a + 1.0)
        + log_gamma_positive(kf + b + 1.0)
        - log_gamma_positive(kf + 1.0)
        - log_gamma_positive(kf + lam);
    (-ln_norm).exp()
}

/// `nu_0, ..., nu_{k_max}`.
pub fn jacobi_norms(params: JacobiParams, k_max: usize) -> Vec<f64> {
    (0..=k_max).map(|k| jacobi_norm_nu(params, k)).collect()
}

/// Largest root of `P_k^{(alpha, beta)}`, `k >= 1`.
///
/// The root is bracketed by the first sign change found while scanning
/// `t_j = cos(pi j / 8k)` downward from `t = 1`, then refined by Newton steps
/// from the upper end of the bracket with a bisection fallback.
pub fn largest_root(params: JacobiParams, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Parameter("P_0 has no roots".into()));
    }
    if k == 1 {
        let (a, b) = (params.alpha, params.beta);
        return Ok((b - a) / (a + b + 2.0));
    }
    let grid = 8 * k;
    let mut hi = 1.0;
    let mut f_hi = value_at_one(params, k);
    let mut lo = None;
    for j in 1..=grid {
        let t = (std::f64::consts::PI * j as f64 / grid as f64).cos();
        let f = jacobi_eval(params, k, t);
        if f == 0.0 {
            return Ok(t);
        }
        if (f > 0.0) != (f_hi > 0.0) {
            lo = Some(t);
            break;
        }
        hi = t;
        f_hi = f;
    }
    let mut lo = lo.ok_or_else(|| {
        Error::Numerical(format!("no sign change of P_{k} found on the scan grid"))
    })?;

    let mut x = hi;
    for _ in 0..200 {
        let f = jacobi_eval(params, k, x);
        if f == 0.0 {
            return Ok(x);
        }
        if (f > 0.0) == (f_hi > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        let d = jacobi_deriv(params, k, x);
        let newton = x - f / d;
        let next = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON || hi - lo <= 2.0 * f64::EPSILON {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Numerical(format!(
        "largest root of P_{k}^({}, {}) did not converge; bracket [{lo}, {hi}]",
        params.alpha, params.beta
    )))
}

/// Gauss–Jacobi rule: `int_{-1}^1 f(t) w(t) dt ~ sum_i weights[i] f(nodes[i])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub params: JacobiParams,
    pub order: usize,
}

impl QuadratureRule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .collect::<CompensatedSum>()
            .value()
    }
}

/// Gauss–Jacobi rule of the given order, exact for polynomials of degree
/// `2 * order - 1` against `(1 - t)^alpha (1 + t)^beta`.
pub fn gauss_jacobi(params: JacobiParams, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Parameter("quadrature order must be positive".into()));
    }
    let (a, b) = (params.alpha, params.beta);
    let n = order;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    diag[0] = (b - a) / (a + b + 2.0);
    for i in 1..n {
        let k = i as f64;
        let c = 2.0 * k + a + b;
        diag[i] = (b * b - a * a) / (c * (c + 2.0));
    }
    for i in 1..n {
        let k = i as f64;
        let c = 2.0 * k + a + b;
        let beta_k = if i == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
        } else {
            4.0 * k * (k + a) * (k + b) * (k + a + b) / (c * c * (c + 1.0) * (c - 1.0))
        };
        off[i - 1] = beta_k.sqrt();
    }
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    tridiagonal_eigen(&mut diag, &mut off, &mut first)?;

    let total = tau(params);
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first)
        .map(|(x, v)| (x, total * v * v))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let (mut nodes, weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

    // one Newton correction against P_n itself
    for x in nodes.iter_mut() {
        let d = jacobi_deriv(params, n, *x);
        if d != 0.0 {
            let step = jacobi_eval(params, n, *x) / d;
            if step.abs() < 1e-8 {
                *x -= step;
            }
        }
    }
    Ok(QuadratureRule { nodes, weights, params, order })
}

/// Implicit QL iteration for a symmetric tridiagonal matrix. On return `diag`
/// holds the eigenvalues and `first` the first components of the corresponding
/// normalized eigenvectors (pass `first = e_0`). `off[i]` couples rows `i` and
/// `i + 1`; its last entry is ignored.
fn tridiagonal_eigen(diag: &mut [f64], off: &mut [f64], first: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 1 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Numerical(
                    "tridiagonal eigenvalue iteration did not converge".into(),
                ));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = first[i + 1];
                first[i + 1] = s * first[i] + c * z;
                first[i] = c * first[i] - s * z;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

const TAIL_ORDER: usize = 64;

/// `int_xi^1 f(t) (1-t)^alpha (1+t)^beta dt` for `-1 < xi < 1` and `f` smooth on
/// `[xi, 1]`.
///
/// The interval is mapped affinely onto `(-1, 1)` so that `(1-t)^alpha` becomes a
/// Gauss–Jacobi weight; `(1+t)^beta` is smooth there and joins the integrand.
pub fn upper_tail_integral<F: Fn(f64) -> f64>(
    params: JacobiParams,
    xi: f64,
    order: usize,
    f: F,
) -> Result<f64> {
    if !(xi > -1.0 && xi < 1.0) {
        return Err(Error::Domain(format!("xi must lie in (-1, 1), got {xi}")));
    }
    let rule = gauss_jacobi(JacobiParams::new(params.alpha, 0.0)?, order)?;
    let half = 0.5 * (1.0 - xi);
    let scale = half.powf(params.alpha + 1.0);
    let beta = params.beta;
    let sum = rule.integrate(|s| {
        let t = xi + half * (1.0 + s);
        (1.0 + t).powf(beta) * f(t)
    });
    Ok(scale * sum)
}

/// `int_xi^1 (1-t)^alpha (1+t)^beta dt`.
pub fn incomplete_weight_integral(params: JacobiParams, xi: f64) -> Result<f64> {
    upper_tail_integral(params, xi, TAIL_ORDER, |_| 1.0)
}
