//! Reference quadratures and root finders used as oracles. They share no code
//! with the library's Golub–Welsch and Gauss–Jacobi machinery.
#![allow(dead_code)]

use std::f64::consts::PI;

use projbound::jacobi::{jacobi_eval, jacobi_eval_all};
use projbound::{Field, JacobiParams};

/// Gauss–Legendre rule on `[a, b]` from Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(mid - half * x);
        weights.push(half * 2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

pub fn integrate_gl<F: Fn(f64) -> f64>(f: F, n: usize, a: f64, b: f64) -> f64 {
    let (x, w) = gauss_legendre(n, a, b);
    x.iter().zip(&w).map(|(x, w)| w * f(*x)).sum()
}

/// Double-exponential quadrature on `[a, b]`; tolerant of endpoint singularities.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    tanh_sinh_ends(|x, _, _| f(x), a, b)
}

/// As [`tanh_sinh`], passing `(x, x - a, b - x)` with both distances accurate
/// near the endpoints.
pub fn tanh_sinh_ends<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = 1.0 / 64.0;
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for k in -256i64..=256 {
        let t = k as f64 * h;
        let u = 0.5 * PI * t.sinh();
        let w = 0.5 * PI * t.cosh() / u.cosh().powi(2);
        // half (1 + tanh u) and half (1 - tanh u) without cancellation
        let da = half * 2.0 / (1.0 + (-2.0 * u).exp());
        let db = half * 2.0 / (1.0 + (2.0 * u).exp());
        let x = if u < 0.0 { a + da } else { b - db };
        if w < 1e-300 || da <= 0.0 || db <= 0.0 {
            continue;
        }
        sum += w * f(x, da, db);
    }
    sum * h * half
}

/// Bisection for a sign change of `f` in `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `int_xi^1 u(t) w(t) dt` through `t = 1 - (1 - xi) s^2`, where the weight
/// becomes `2 (1-xi)^{a+1} s^{2a+1} (2 - (1-xi) s^2)^b`, smooth for the field parameters.
pub fn tail_quadrature(params: JacobiParams, xi: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = (params.alpha(), params.beta());
    let d = 1.0 - xi;
    let (s, w) = gauss_legendre(n, 0.0, 1.0);
    let t: Vec<f64> = s.iter().map(|s| 1.0 - d * s * s).collect();
    let wt = s
        .iter()
        .zip(&w)
        .map(|(s, w)| w * 2.0 * d.powf(a + 1.0) * s.powf(2.0 * a + 1.0) * (2.0 - d * s * s).powf(b))
        .collect();
    (t, wt)
}

/// `c_k[h]` and `c_k[g]` for `k = 0..=k_max` by direct quadrature on `[xi, 1]`.
pub fn coefficient_oracle(params: JacobiParams, xi: f64, r: usize, k_max: usize) -> (Vec<f64>, Vec<f64>) {
    let (t, w) = tail_quadrature(params, xi, k_max + r + 120);
    let pr_xi = jacobi_eval(params, r, xi);
    let mut ch = vec![0.0; k_max + 1];
    let mut cg = vec![0.0; k_max + 1];
    for (t, w) in t.iter().zip(&w) {
        let p = jacobi_eval_all(params, k_max.max(r), *t);
        let g = p[r] - pr_xi;
        for k in 0..=k_max {
            ch[k] += w * p[k];
            cg[k] += w * g * p[k];
        }
    }
    (ch, cg)
}

/// `(u * v)(t) = E_z[u(x z) v(z y)]` for `z` uniform on the unit sphere of `K^m`
/// and `x y = t`, reduced to three angles:
/// `|z_1|^2 = r sin^2 phi`, `|z_2|^2 = r cos^2 phi`, `r = sin^2 chi` and the angle `omega`
/// between the directions of `z_1` and `z_2` in `R^delta`.
pub fn convolve<U: Fn(f64) -> f64, V: Fn(f64) -> f64>(field: Field, m: usize, u: U, v: V, t: f64, n: usize) -> f64 {
    let d = field.delta() as i32;
    let c = ((1.0 + t) / 2.0).sqrt();
    let s = ((1.0 - t) / 2.0).max(0.0).sqrt();
    let half_pi = 0.5 * PI;
    let (phi, wphi) = gauss_legendre(n, 0.0, half_pi);
    let (chi, wchi) = if m == 2 { (vec![half_pi], vec![1.0]) } else { gauss_legendre(n, 0.0, half_pi) };
    let (om, wom): (Vec<f64>, Vec<f64>) = if d == 1 { (vec![0.0, PI], vec![1.0, 1.0]) } else { gauss_legendre(n, 0.0, PI) };
    let (mut num, mut den) = (0.0, 0.0);
    for (x, wx) in chi.iter().zip(&wchi) {
        let r = x.sin().powi(2);
        let dr = if m == 2 { 1.0 } else { x.sin().powi(2 * d - 1) * x.cos().powi(d * (m as i32 - 2) - 1) };
        for (p, wp) in phi.iter().zip(&wphi) {
            let (sp, cp) = p.sin_cos();
            let dp = (sp * cp).powi(d - 1);
            let a = r * sp * sp;
            let b = r * cp * cp;
            let ua = u(2.0 * a - 1.0);
            for (o, wo) in om.iter().zip(&wom) {
                let dw = if d == 1 { 1.0 } else { o.sin().powi(d - 2) };
                let w = o.cos();
                let q = c * c * a + s * s * b + 2.0 * c * s * r * sp * cp * w;
                let mass = wx * dr * wp * dp * wo * dw;
                num += mass * ua * v(2.0 * q - 1.0);
                den += mass;
            }
        }
    }
    num / den
}
