//! Lower bounds for the number of nodes `N_K(m, p)` of a projective cubature
//! formula of index `p`:
//!
//! * the linear programming bound `Lambda_K(m, p/2)` (exact integers);
//! * the Yudin-type bound
//!   `Gamma(a+2) Gamma(b+1) / (Gamma(a+b+2) F(-b, a+1; a+2; eps)) * eps^{-delta(m-1)/2}`
//!   with `eps = (1 - xi)/2` and `xi` the largest root of `P_{p/2}^{(a+1, b+1)}`;
//! * the `m = 2` comparison tables and the asymptotic constants as `p -> infinity`.

use std::f64::consts::{E, LN_2, PI};

use num_bigint::{BigInt, BigUint};
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::jacobi::{gauss_jacobi, largest_root, JacobiParams};
use crate::special::{bessel_first_zero, hypergeom_f, log_gamma_positive};

/// Relative distance to an integer below which the ceiling snaps to that integer.
pub const INTEGER_SNAP: f64 = 1e-9;

/// Relative disagreement tolerated between the general closed form and its
/// field-specific reduction before the computation is rejected.
const SPECIALIZATION_TOL: f64 = 1e-9;

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Linear programming bound `Lambda_K(m, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpBound {
    #[serde(with = "decimal")]
    pub value: BigUint,
    /// False when the quaternionic division by `2m - 1` left a remainder and
    /// `value` is the ceiling of the rational.
    pub exact: bool,
}

/// `Lambda_K(m, q)`:
///
/// * R: `binom(m+q-1, m-1)`
/// * C: `binom(m+[q/2]-1, m-1) binom(m+[(q+1)/2]-1, m-1)`
/// * H: `binom(2m+[q/2]-2, 2m-2) binom(2m+[(q+1)/2]-1, 2m-2) / (2m-1)`
pub fn lp_bound(field: Field, m: usize, q: usize) -> Result<LpBound> {
    if m < 2 {
        return Err(Error::Parameter(format!("m must be at least 2, got {m}")));
    }
    if q == 0 {
        return Err(Error::Parameter("q must be positive".into()));
    }
    let (m, q) = (m as u64, q as u64);
    let (lo, hi) = (q / 2, q.div_ceil(2));
    Ok(match field {
        Field::R => LpBound { value: binomial(m + q - 1, m - 1), exact: true },
        Field::C => LpBound {
            value: binomial(m + lo - 1, m - 1) * binomial(m + hi - 1, m - 1),
            exact: true,
        },
        Field::H => {
            let num = binomial(2 * m + lo - 2, 2 * m - 2) * binomial(2 * m + hi - 1, 2 * m - 2);
            let den = BigUint::from(2 * m - 1);
            let quotient = &num / &den;
            if (&quotient * &den) == num {
                LpBound { value: quotient, exact: true }
            } else {
                log::info!(
                    "Lambda_H({m}, {q}): division by {den} is inexact, returning the ceiling"
                );
                LpBound { value: quotient + 1u32, exact: false }
            }
        }
    })
}

/// Smallest integer `>= z`, snapping to the nearest integer when `z` lies within
/// [`INTEGER_SNAP`] relative distance of it.
pub fn ceil_snap(z: f64) -> Result<BigUint> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::Numerical(format!("cannot round bound value {z}")));
    }
    let nearest = z.round();
    let c = if (z - nearest).abs() <= INTEGER_SNAP * z.abs() {
        nearest
    } else {
        z.ceil()
    };
    BigUint::from_f64(c).ok_or_else(|| Error::Numerical(format!("cannot convert {c}")))
}

/// `exp(ln)` for values beyond the `f64` range, carrying 53 significant bits.
pub fn integer_from_ln(ln: f64) -> Result<BigUint> {
    if !ln.is_finite() {
        return Err(Error::Numerical(format!("cannot round bound with logarithm {ln}")));
    }
    let log2 = ln / LN_2;
    if log2 < 1000.0 {
        return ceil_snap(ln.exp());
    }
    let shift = log2.floor() - 52.0;
    let mantissa = (log2 - shift).exp2().ceil();
    let m = BigUint::from_f64(mantissa)
        .ok_or_else(|| Error::Numerical(format!("cannot convert {mantissa}")))?;
    Ok(m << (shift as usize))
}

/// All lower bounds for one `(field, m, p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub field: Field,
    pub m: usize,
    pub p: usize,
    /// `Lambda_K(m, p/2)`
    pub lp_bound: LpBound,
    /// Right-hand side of the Yudin-type bound before rounding.
    /// `null` in JSON when the value overflows `f64`.
    #[serde(with = "overflowing")]
    pub yudin_raw: f64,
    /// Natural logarithm of `yudin_raw`, finite even when `yudin_raw` overflows.
    pub yudin_ln: f64,
    /// Smallest integer `>= yudin_raw`.
    #[serde(with = "decimal")]
    pub yudin_bound: BigUint,
    /// Independent evaluation of `yudin_raw`: the field-specific reduction for C
    /// and H, the arcsine-type integral ratio for R.
    #[serde(with = "overflowing")]
    pub cross_check: f64,
    pub epsilon: f64,
    pub xi: f64,
}

impl BoundReport {
    /// `yudin_bound - lp_bound`.
    pub fn delta(&self) -> BigInt {
        BigInt::from(self.yudin_bound.clone()) - BigInt::from(self.lp_bound.value.clone())
    }
}

fn validate_p(p: usize) -> Result<()> {
    if p == 0 || !p.is_multiple_of(2) {
        return Err(Error::Parameter(format!("p must be a positive even integer, got {p}")));
    }
    Ok(())
}

/// `ln` of the Yudin-type bound in the general hypergeometric form.
pub fn yudin_ln_closed_form(field: Field, m: usize, eps: f64) -> Result<f64> {
    let params = field.jacobi_params(m)?;
    let (a, b) = (params.alpha(), params.beta());
    let f = hypergeom_f(b, a, eps)?;
    Ok(log_gamma_positive(a + 2.0) + log_gamma_positive(b + 1.0)
        - log_gamma_positive(a + b + 2.0)
        - f.ln()
        - field.half_exponent(m) * eps.ln())
}

/// Field-specific reductions: `eps^{1-m}` for C and
/// `eps^{2-2m} / ((2m-1) - (2m-2) eps)` for H.
pub fn yudin_specialized(field: Field, m: usize, eps: f64) -> Option<f64> {
    let mf = m as f64;
    match field {
        Field::R => None,
        Field::C => Some(eps.powf(1.0 - mf)),
        Field::H => Some(eps.powf(2.0 - 2.0 * mf) / ((2.0 * mf - 1.0) - (2.0 * mf - 2.0) * eps)),
    }
}

/// Real-case integral ratio
/// `int_0^1 (1-s^2)^{(m-3)/2} ds / int_eta^1 (1-s^2)^{(m-3)/2} ds`, `eta = sqrt((1+xi)/2)`.
pub fn real_integral_ratio(m: usize, xi: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Parameter(format!("m must be at least 2, got {m}")));
    }
    let a = (m as f64 - 3.0) / 2.0;
    let eta = ((1.0 + xi) / 2.0).sqrt();
    // (1-s)^a is the Gauss–Jacobi weight after mapping [lo, 1] onto (-1, 1)
    let rule = gauss_jacobi(JacobiParams::new(a, 0.0)?, 64)?;
    let integral = |lo: f64| {
        let half = 0.5 * (1.0 - lo);
        half.powf(a + 1.0) * rule.integrate(|u| (1.0 + lo + half * (1.0 + u)).powf(a))
    };
    Ok(integral(0.0) / integral(eta))
}

/// Yudin-type bound together with the linear programming bound.
pub fn yudin_bound(field: Field, m: usize, p: usize) -> Result<BoundReport> {
    validate_p(p)?;
    let params = field.jacobi_params(m)?;
    let xi = largest_root(params.shifted(), p / 2)?;
    let epsilon = 0.5 * (1.0 - xi);
    let yudin_ln = yudin_ln_closed_form(field, m, epsilon)?;
    let yudin_raw = yudin_ln.exp();
    let cross_check = match yudin_specialized(field, m, epsilon) {
        Some(v) => v,
        None => real_integral_ratio(m, xi)?,
    };
    if yudin_raw.is_finite() && ((cross_check - yudin_raw) / yudin_raw).abs() > SPECIALIZATION_TOL {
        return Err(Error::Numerical(format!(
            "Yudin bound forms disagree for ({field}, m={m}, p={p}): {yudin_raw} vs {cross_check}"
        )));
    }
    Ok(BoundReport {
        field,
        m,
        p,
        lp_bound: lp_bound(field, m, p / 2)?,
        yudin_raw,
        yudin_ln,
        yudin_bound: if yudin_raw.is_finite() {
            ceil_snap(yudin_raw)?
        } else {
            integer_from_ln(yudin_ln)?
        },
        cross_check,
        epsilon,
        xi,
    })
}

fn to_i64(v: BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::Numerical("difference exceeds i64".into()))
}

/// `[(p/4 + 1)^2]`, the complex `m = 2` linear programming bound written out.
pub fn complex_m2_lp_closed_form(p: usize) -> u64 {
    // (p/4 + 1)^2 = (p + 4)^2 / 16
    let s = (p as u64 + 4).pow(2);
    s / 16
}

/// `Delta_C(p)`: rounded Yudin bound minus `[(p/4+1)^2]` for `(C, m = 2)`.
pub fn delta_c(p: usize) -> Result<i64> {
    let report = yudin_bound(Field::C, 2, p)?;
    let closed = complex_m2_lp_closed_form(p);
    if report.lp_bound.value != BigUint::from(closed) {
        return Err(Error::Numerical(format!(
            "[(p/4+1)^2] = {closed} disagrees with Lambda_C(2, {}) = {}",
            p / 2,
            report.lp_bound.value
        )));
    }
    to_i64(report.delta())
}

/// `Delta_H(p)`: rounded Yudin bound minus `Lambda_H(2, p/2)`.
pub fn delta_h(p: usize) -> Result<i64> {
    to_i64(yudin_bound(Field::H, 2, p)?.delta())
}

/// `(1/3) binom([p/2]+2, 2) binom([(p+2)/2]+3, 2)` exactly as printed for the
/// quaternionic `m = 2` linear programming bound. It disagrees with
/// `Lambda_H(2, p/2)` and is only reported for comparison.
pub fn quaternion_m2_printed_form(p: usize) -> f64 {
    let p = p as u64;
    let a = binomial(p / 2 + 2, 2);
    let b = binomial((p + 2) / 2 + 3, 2);
    (a * b).to_f64().unwrap_or(f64::INFINITY) / 3.0
}

/// A value that may overflow `f64`, kept with its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub value: f64,
    pub ln: f64,
}

impl LogValue {
    pub fn from_ln(ln: f64) -> Self {
        Self { value: ln.exp(), ln }
    }
}

/// `lambda_K(m) = Gamma(delta m/2) Gamma(delta(m-1)/2 + 1) / Gamma(delta/2) * 2^{2 delta (m-1)}`.
pub fn lambda_asym(field: Field, m: usize) -> Result<LogValue> {
    if m < 2 {
        return Err(Error::Parameter(format!("m must be at least 2, got {m}")));
    }
    let d = field.delta() as f64;
    let mf = m as f64;
    let ln = log_gamma_positive(d * mf / 2.0) + log_gamma_positive(d * (mf - 1.0) / 2.0 + 1.0)
        - log_gamma_positive(d / 2.0)
        + 2.0 * d * (mf - 1.0) * LN_2;
    Ok(LogValue::from_ln(ln))
}

/// The case table `2^{m-1}(m-1)!`, `2^{4(m-1)} (m-1)!^2`, `2^{8(m-1)} (2m-1)! (2m-2)!`
/// evaluated with exact integers.
pub fn lambda_asym_table(field: Field, m: usize) -> BigUint {
    let fact = |n: u64| (1..=n).fold(BigUint::one(), |acc, i| acc * i);
    let m = m as u64;
    match field {
        Field::R => (BigUint::one() << (m - 1)) * fact(m - 1),
        Field::C => (BigUint::one() << (4 * (m - 1))) * fact(m - 1) * fact(m - 1),
        Field::H => (BigUint::one() << (8 * (m - 1))) * fact(2 * m - 1) * fact(2 * m - 2),
    }
}

/// `kappa_K(m) = j_{nu,1}^{2 nu} / (Gamma(nu+1)^2 16^nu)` with `nu = delta(m-1)/2`.
pub fn kappa(field: Field, m: usize) -> Result<LogValue> {
    if m < 2 {
        return Err(Error::Parameter(format!("m must be at least 2, got {m}")));
    }
    let nu = field.half_exponent(m);
    let j = bessel_first_zero(nu)?.value;
    Ok(LogValue::from_ln(kappa_ln(nu, j)))
}

fn kappa_ln(nu: f64, j: f64) -> f64 {
    2.0 * nu * j.ln() - 2.0 * log_gamma_positive(nu + 1.0) - 4.0 * nu * LN_2
}

/// One row of the asymptotic comparison as `p -> infinity` for fixed `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub field: Field,
    pub m: usize,
    /// `j_{alpha+1,1}`
    pub bessel_zero: f64,
    pub kappa: LogValue,
    /// `(1/(pi delta m)) (e/4)^{delta(m-1)}`
    pub kappa_asymptotic: LogValue,
    /// `ln kappa - ln kappa_asymptotic`
    pub log_ratio: f64,
    /// `1 / lambda_K(m)`, the liminf constant from the linear programming bound.
    pub lp_constant: LogValue,
    /// `Gamma(a+2)Gamma(b+1)/Gamma(a+b+2) j^{-delta(m-1)}`, the liminf constant
    /// from the Yudin-type bound.
    pub yudin_constant: LogValue,
    /// `2^{delta(m-1)} kappa`, the gap against the upper bound `Lambda_K(m, p)`.
    pub gap_factor: LogValue,
}

pub fn asymptotic_row(field: Field, m: usize) -> Result<AsymptoticRow> {
    let params = field.jacobi_params(m)?;
    let (a, b) = (params.alpha(), params.beta());
    let d = field.delta() as f64;
    let mf = m as f64;
    let nu = field.half_exponent(m);
    let j = bessel_first_zero(nu)?.value;
    let kappa = LogValue::from_ln(kappa_ln(nu, j));
    let kappa_asymptotic =
        LogValue::from_ln(-(PI * d * mf).ln() + d * (mf - 1.0) * (E / 4.0).ln());
    let lp_constant = LogValue::from_ln(-lambda_asym(field, m)?.ln);
    let yudin_constant = LogValue::from_ln(
        log_gamma_positive(a + 2.0) + log_gamma_positive(b + 1.0)
            - log_gamma_positive(a + b + 2.0)
            - 2.0 * nu * j.ln(),
    );
    let gap_factor = LogValue::from_ln(d * (mf - 1.0) * LN_2 + kappa.ln);
    Ok(AsymptoticRow {
        field,
        m,
        bessel_zero: j,
        kappa,
        kappa_asymptotic,
        log_ratio: kappa.ln - kappa_asymptotic.ln,
        lp_constant,
        yudin_constant,
        gap_factor,
    })
}

pub fn asymptotic_report(field: Field, m_list: &[usize]) -> Result<Vec<AsymptoticRow>> {
    m_list.par_iter().map(|&m| asymptotic_row(field, m)).collect()
}

/// One row of a bound comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: usize,
    #[serde(with = "decimal")]
    pub lp_bound: BigUint,
    /// `null` in JSON when the value overflows `f64`.
    #[serde(with = "overflowing")]
    pub yudin_raw: f64,
    #[serde(with = "decimal")]
    pub yudin_bound: BigUint,
    #[serde(with = "decimal_signed")]
    pub delta: BigInt,
}

impl From<&BoundReport> for TableRow {
    fn from(r: &BoundReport) -> Self {
        TableRow {
            p: r.p,
            lp_bound: r.lp_bound.value.clone(),
            yudin_raw: r.yudin_raw,
            yudin_bound: r.yudin_bound.clone(),
            delta: r.delta(),
        }
    }
}

/// Bound comparison for every even `p` in `[p_min, p_max]`.
pub fn table_rows(field: Field, m: usize, p_min: usize, p_max: usize) -> Result<Vec<TableRow>> {
    let start = p_min.max(2).div_ceil(2) * 2;
    if start > p_max {
        return Err(Error::Parameter(format!("empty range of even p in [{p_min}, {p_max}]")));
    }
    let ps: Vec<usize> = (start..=p_max).step_by(2).collect();
    ps.par_iter()
        .map(|&p| yudin_bound(field, m, p).map(|r| TableRow::from(&r)))
        .collect()
}

/// Differences of `Delta_H` and `Delta_C` for one `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationRow {
    pub p: usize,
    pub delta_h: i64,
    /// `Delta_H(p) - Delta_H(p-2)`
    pub delta_h_prime: Option<i64>,
    /// `Delta_H'(p) - Delta_H'(p-2)`
    pub delta_h_second: Option<i64>,
    /// Whether `sign Delta_H''(p) = (-1)^{p/2+1}`.
    pub sign_law_holds: Option<bool>,
    pub delta_c: i64,
    pub delta_c_prime: Option<i64>,
    /// Whether `Delta_C'(p) >= Delta_C'(p-2)`.
    pub delta_c_prime_nondecreasing: Option<bool>,
}

/// Table of `Delta_H`, `Delta_C` and their differences for `p = 2, 4, ..., p_max`.
/// The sign law is only observed, never enforced.
pub fn oscillation_report(p_max: usize) -> Result<Vec<OscillationRow>> {
    if p_max < 8 {
        return Err(Error::Parameter(format!("p_max must be at least 8, got {p_max}")));
    }
    let ps: Vec<usize> = (2..=p_max).step_by(2).collect();
    let deltas: Vec<(i64, i64)> = ps
        .par_iter()
        .map(|&p| Ok((delta_h(p)?, delta_c(p)?)))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(ps.len());
    for (i, &p) in ps.iter().enumerate() {
        let (dh, dc) = deltas[i];
        let dh1 = (i >= 1).then(|| dh - deltas[i - 1].0);
        let dh2 = (i >= 2).then(|| dh - 2 * deltas[i - 1].0 + deltas[i - 2].0);
        let dc1 = (i >= 1).then(|| dc - deltas[i - 1].1);
        let dc1_prev = (i >= 2).then(|| deltas[i - 1].1 - deltas[i - 2].1);
        let expected_sign = if (p / 2 + 1) % 2 == 0 { 1 } else { -1 };
        rows.push(OscillationRow {
            p,
            delta_h: dh,
            delta_h_prime: dh1,
            delta_h_second: dh2,
            sign_law_holds: dh2.map(|v| v.signum() == expected_sign),
            delta_c: dc,
            delta_c_prime: dc1,
            delta_c_prime_nondecreasing: match (dc1, dc1_prev) {
                (Some(cur), Some(prev)) => Some(cur >= prev),
                _ => None,
            },
        });
    }
    Ok(rows)
}

/// Gegenbauer polynomial `C_n^{lambda}(s)` by its own three-term recurrence.
pub fn gegenbauer_eval(lambda: f64, n: usize, s: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * s;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * s * (kf + lambda - 1.0) * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Largest root of `C_n^{lambda}`, by bisection from a sign change on a fine
/// Chebyshev-angle scan.
pub fn gegenbauer_largest_root(lambda: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("C_0 has no roots".into()));
    }
    let grid = 16 * n;
    let mut hi = 1.0;
    let f_hi = gegenbauer_eval(lambda, n, 1.0);
    for j in 1..=grid {
        let s = (PI * j as f64 / grid as f64).cos();
        let f = gegenbauer_eval(lambda, n, s);
        if f == 0.0 {
            return Ok(s);
        }
        if (f > 0.0) != (f_hi > 0.0) {
            let mut lo = s;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if (gegenbauer_eval(lambda, n, mid) > 0.0) == (f_hi > 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        hi = s;
    }
    Err(Error::Numerical(format!("no sign change of C_{n}^{lambda} on the scan grid")))
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

mod decimal_signed {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

pub(crate) mod overflowing {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}
